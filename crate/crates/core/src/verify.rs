//! Batch verification suites: every structural claim the library rests on,
//! checked against one order with randomized (and optionally exhaustive)
//! unit sampling. This is what `metacommute verify` runs.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::metacommute::{
    check_diagrams, fixed_count_formula, kernel_member, pgl_order, sigma_perm, tau_perm,
};
use crate::order::{EichlerOrder, IdealLabel};
use crate::padic::Mat2;
use crate::rmodule::CensusModules;
use crate::tree;
use crate::tree::TreeVertex;

/// Sampling plan for one verification run.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    /// Random units drawn per suite.
    pub trials: u64,
    pub seed: u64,
    /// Additionally sweep every unit residue mod p^j for this j.
    pub exhaustive_mod: Option<u32>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            trials: 200,
            seed: 0,
            exhaustive_mod: None,
        }
    }
}

/// Outcome of one suite: how many individual checks ran, and the first
/// counterexample if any check failed.
#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: u64,
    pub counterexample: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

struct Recorder {
    name: &'static str,
    checks: u64,
    counterexample: Option<String>,
}

impl Recorder {
    fn new(name: &'static str) -> Self {
        Recorder {
            name,
            checks: 0,
            counterexample: None,
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(detail());
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            checks: self.checks,
            counterexample: self.counterexample,
        }
    }
}

fn sample_units(order: &EichlerOrder, cfg: &VerifyConfig) -> Result<Vec<Mat2>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut units: Vec<Mat2> = (0..cfg.trials)
        .map(|_| order.random_unit(&mut rng))
        .collect();
    if let Some(j) = cfg.exhaustive_mod {
        units.extend(order.exhaustive_units(j)?);
    }
    Ok(units)
}

/// Census size and pairwise distinctness, through both the adjugate test and
/// the module bases.
pub fn suite_census(order: &EichlerOrder, _cfg: &VerifyConfig) -> Result<SuiteResult, Error> {
    let mut rec = Recorder::new("census");
    let expected = order.census_size();
    let ideals = order.ideals();
    rec.check(ideals.len() == expected, || {
        format!("census has {} entries, expected {expected}", ideals.len())
    });
    for i in 0..ideals.len() {
        for j in 0..i {
            let same = order.ideal_equal(&ideals[i].generator, &ideals[j].generator)?;
            rec.check(!same, || {
                format!(
                    "{} and {} generate the same ideal",
                    ideals[i].label, ideals[j].label
                )
            });
        }
    }
    let census = CensusModules::new(order)?;
    rec.check(census.assert_distinct().is_ok(), || {
        "module bases of census entries collide".to_string()
    });
    for (label, basis) in census.entries() {
        rec.check(basis.index_valuation() == 2, || {
            format!(
                "{} has index valuation {}, expected 2",
                label,
                basis.index_valuation()
            )
        });
    }
    Ok(rec.finish())
}

/// The three commuting squares for every sampled unit.
pub fn suite_diagrams(order: &EichlerOrder, cfg: &VerifyConfig) -> Result<SuiteResult, Error> {
    let mut rec = Recorder::new("diagrams");
    for w in sample_units(order, cfg)? {
        let (a, b, c) = check_diagrams(order, &w)?;
        rec.check(a && b && c, || {
            format!("squares (a={a}, b={b}, c={c}) fail to commute for w = {w}")
        });
    }
    Ok(rec.finish())
}

/// Uniform nontrivial cycle lengths on each side, equal to the order of the
/// corresponding reduction in PGL2, and cycle types mirroring projective
/// ones.
pub fn suite_cycles(order: &EichlerOrder, cfg: &VerifyConfig) -> Result<SuiteResult, Error> {
    let mut rec = Recorder::new("cycles");
    for w in sample_units(order, cfg)? {
        let report = sigma_perm(order, &w)?;
        rec.check(report.sides_preserved(), || {
            format!("a cycle mixes sides for w = {w}")
        });

        let conj = order.conj_by_gamma(&w)?;
        for (side, pred, reduction) in [
            ("S1", IdealLabel::is_s1 as fn(&IdealLabel) -> bool, w),
            ("S2", IdealLabel::is_s2 as fn(&IdealLabel) -> bool, conj),
        ] {
            let nontrivial = report.nontrivial_lengths_on(pred);
            rec.check(nontrivial.len() <= 1, || {
                format!("{side} cycle lengths {nontrivial:?} are not uniform for w = {w}")
            });
            let l = pgl_order(&reduction)?;
            if l == 1 {
                rec.check(nontrivial.is_empty(), || {
                    format!("{side} moves although its reduction is scalar, w = {w}")
                });
            } else {
                rec.check(nontrivial.iter().copied().collect::<Vec<_>>() == vec![l as usize], || {
                    format!(
                        "{side} nontrivial lengths {nontrivial:?} differ from the projective order {l}, w = {w}"
                    )
                });
            }
            // full cycle types match the projective model on the affine chart
            let lengths = tau_perm(&reduction)?
                .affine_cycle_lengths()
                .expect("reductions of order units fix the point at infinity");
            rec.check(report.cycle_lengths_on(pred) == lengths, || {
                format!("{side} cycle type differs from the projective one for w = {w}")
            });
        }

        let (e1, e2, flag) = report.ell_pair();
        rec.check(flag, || {
            format!("side lengths disagree: {e1:?} versus {e2:?} for w = {w}")
        });
    }
    Ok(rec.finish())
}

/// Fixed-point counts per side against the discriminant formula (odd p) or
/// direct eigenvector counting (p = 2), plus equality across sides.
pub fn suite_fixed_points(order: &EichlerOrder, cfg: &VerifyConfig) -> Result<SuiteResult, Error> {
    let mut rec = Recorder::new("fixed_points");
    for w in sample_units(order, cfg)? {
        let report = sigma_perm(order, &w)?;
        let conj = order.conj_by_gamma(&w)?;
        let p = order.p() as usize;

        for (side, fixed, reduction) in [
            ("S1", report.fixed_s1(), w),
            ("S2", report.fixed_s2(), conj),
        ] {
            let predicted = if reduction.mod_p().is_scalar() {
                p
            } else if order.p() == 2 {
                tau_perm(&reduction)?.fixed_affine_count()
            } else {
                fixed_count_formula(order, &reduction)? as usize
            };
            rec.check(fixed == predicted, || {
                format!("{side} has {fixed} fixed ideals, predicted {predicted}, w = {w}")
            });
        }

        if !w.mod_p().is_scalar() && !conj.mod_p().is_scalar() {
            rec.check(report.fixed_s1() == report.fixed_s2(), || {
                format!(
                    "fixed counts differ across sides: {} versus {}, w = {w}",
                    report.fixed_s1(),
                    report.fixed_s2()
                )
            });
        }
    }
    Ok(rec.finish())
}

/// The kernel criterion: sigma_w is the identity exactly for the units the
/// congruence conditions pick out.
pub fn suite_kernel(order: &EichlerOrder, cfg: &VerifyConfig) -> Result<SuiteResult, Error> {
    let mut rec = Recorder::new("kernel");
    for w in sample_units(order, cfg)? {
        let in_kernel = kernel_member(order, &w)?;
        let trivial = sigma_perm(order, &w)?.is_identity();
        rec.check(in_kernel == trivial, || {
            format!("kernel test says {in_kernel} but sigma is trivial = {trivial} for w = {w}")
        });
    }
    Ok(rec.finish())
}

/// The tree correspondence: census segments have length n, sit next to the
/// root, never collide, and transform under act() the way the module
/// arithmetic says they must.
pub fn suite_tree(order: &EichlerOrder, cfg: &VerifyConfig) -> Result<SuiteResult, Error> {
    let mut rec = Recorder::new("tree");
    let m = order.modulus();
    let n = order.level() as usize;
    let root = TreeVertex::root();
    let ideals = order.ideals();

    let mut segments = Vec::with_capacity(ideals.len());
    for ideal in &ideals {
        let seg = tree::segment_of_ideal(order, ideal)?;
        rec.check(seg.len() == n, || {
            format!(
                "segment of {} has length {}, expected {n}",
                ideal.label,
                seg.len()
            )
        });
        let d = tree::distance(m, &root, &seg.start())?;
        rec.check(d == 1, || {
            format!(
                "segment of {} starts at distance {d} from the root",
                ideal.label
            )
        });
        segments.push((ideal.label, seg));
    }
    for i in 0..segments.len() {
        for j in 0..i {
            rec.check(!segments[i].1.same_geodesic(&segments[j].1), || {
                format!(
                    "segments of {} and {} coincide",
                    segments[i].0, segments[j].0
                )
            });
        }
    }
    if order.level() == 1 {
        let oseg = tree::order_segment(order)?;
        let rad = segments
            .iter()
            .find(|(l, _)| l.is_rad())
            .expect("level one census has a radical entry");
        rec.check(rad.1.same_geodesic(&oseg), || {
            "radical segment differs from the order segment".to_string()
        });
    }

    // the action on endpoint pairs matches the module-arithmetic permutation
    let census = CensusModules::new(order)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x7ee7);
    let action_trials = cfg.trials.clamp(1, 50);
    for _ in 0..action_trials {
        let w = order.random_unit(&mut rng);
        for (label, seg) in &segments {
            let image = census.brute_sigma(order, &w, *label)?;
            let image_seg = segments
                .iter()
                .find(|(l, _)| l == &image)
                .expect("census image")
                .1
                .clone();
            let moved_start = tree::act(&seg.start(), &w)?;
            let moved_end = tree::act(&seg.end(), &w)?;
            rec.check(
                moved_start == image_seg.start() && moved_end == image_seg.end(),
                || {
                    format!(
                        "segment of {label} does not move onto the segment of {image} under w = {w}"
                    )
                },
            );
        }
    }
    Ok(rec.finish())
}

/// Both sigma computations agree on the full census for every sampled unit.
pub fn suite_oracle(order: &EichlerOrder, cfg: &VerifyConfig) -> Result<SuiteResult, Error> {
    let mut rec = Recorder::new("oracle");
    let census = CensusModules::new(order)?;
    for w in sample_units(order, cfg)? {
        for ideal in order.ideals() {
            let fast = crate::metacommute::sigma_apply(order, &w, ideal.label)?;
            let brute = census.brute_sigma(order, &w, ideal.label)?;
            rec.check(fast == brute, || {
                format!(
                    "adjugate path gives {fast}, module path gives {brute}, label {}, w = {w}",
                    ideal.label
                )
            });
        }
    }
    Ok(rec.finish())
}

/// Runs every suite against one order.
pub fn run_all(order: &EichlerOrder, cfg: &VerifyConfig) -> Result<Vec<SuiteResult>, Error> {
    Ok(vec![
        suite_census(order, cfg)?,
        suite_diagrams(order, cfg)?,
        suite_cycles(order, cfg)?,
        suite_fixed_points(order, cfg)?,
        suite_kernel(order, cfg)?,
        suite_tree(order, cfg)?,
        suite_oracle(order, cfg)?,
    ])
}
