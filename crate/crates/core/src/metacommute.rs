//! The metacommutation permutation and its mod-p shadow.
//!
//! Right multiplication by a unit w of the order permutes the norm-p left
//! ideals: sigma_w sends the ideal generated by g to the one generated by
//! g * w. This module computes that permutation, its projective-line model
//! tau_w (row vectors acting on the right, [x : y] |-> [x : y] * w mod p),
//! and the structural facts tying them together:
//!
//! * phi_gamma : S2(s) -> S1(s) intertwines sigma_w with sigma of the
//!   gamma-conjugate, and varphi : S1(s) -> [1 : s] intertwines sigma_w
//!   with tau_w (three commuting squares, checked by [`check_diagrams`]);
//! * the nontrivial cycles on one side all share one length, namely the
//!   order of the respective mod-p reduction in PGL2(F_p);
//! * for odd p the number of fixed ideals on a side is the quadratic
//!   character of trace^2 - 4 det, provided the reduction is not scalar;
//! * sigma_w is the identity exactly when w is congruent to a scalar mod p
//!   with upper-right entry divisible by p and lower-left divisible by
//!   p^(n+1) ([`kernel_member`]).

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::order::{EichlerOrder, IdealLabel};
use crate::padic::{quad_char, Mat2};

/// A point of the projective line over F_p: [1 : s] or [0 : 1].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProjPoint {
    Affine(u64),
    Infinity,
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Affine(s) => write!(f, "[1:{s}]"),
            ProjPoint::Infinity => write!(f, "[0:1]"),
        }
    }
}

/// phi_gamma: relabels S2(s) as S1(s); this is conjugation by gamma at the
/// level of ideals. Only defined on the S2 side.
pub fn phi_gamma(label: IdealLabel) -> Result<IdealLabel, Error> {
    match label {
        IdealLabel::S2(s) => Ok(IdealLabel::S1(s)),
        _ => Err(Error::WrongSide),
    }
}

/// varphi: identifies S1(s) with the projective point [1 : s]. Only defined
/// on the S1 side.
pub fn varphi(label: IdealLabel) -> Result<ProjPoint, Error> {
    match label {
        IdealLabel::S1(s) => Ok(ProjPoint::Affine(s)),
        _ => Err(Error::WrongSide),
    }
}

/// Applies the metacommutation permutation of a unit w to one census ideal:
/// the ideal generated by g goes to the one generated by g * w.
pub fn sigma_apply(order: &EichlerOrder, w: &Mat2, label: IdealLabel) -> Result<IdealLabel, Error> {
    if !order.is_unit(w) {
        return Err(Error::NotAUnit);
    }
    let g = order.generator(label)?;
    order.identify(&(g * *w))
}

/// The permutation of P^1(F_p) induced by right multiplication of row
/// vectors by the mod-p reduction of w. Fails with `SingularModP` when that
/// reduction is not invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauPerm {
    p: u64,
    /// Images indexed by point: 0..p are the affine points, p is [0:1].
    images: Vec<ProjPoint>,
}

pub fn tau_perm(w: &Mat2) -> Result<TauPerm, Error> {
    let wbar = w.mod_p();
    let p = wbar.modulus().p();
    if !wbar.det().is_unit() {
        return Err(Error::SingularModP);
    }
    let project = |x: crate::padic::PAdicScalar, y: crate::padic::PAdicScalar| {
        if x.is_unit() {
            ProjPoint::Affine((y * x.unit_inv().expect("unit")).value())
        } else {
            ProjPoint::Infinity
        }
    };
    let mut images = Vec::with_capacity(p as usize + 1);
    for s in 0..p {
        // (1, s) * wbar
        let x = wbar.entry(0, 0) + wbar.modulus().scalar(s as i64) * wbar.entry(1, 0);
        let y = wbar.entry(0, 1) + wbar.modulus().scalar(s as i64) * wbar.entry(1, 1);
        images.push(project(x, y));
    }
    // (0, 1) * wbar
    images.push(project(wbar.entry(1, 0), wbar.entry(1, 1)));
    Ok(TauPerm { p, images })
}

impl TauPerm {
    pub fn p(&self) -> u64 {
        self.p
    }

    fn index(&self, pt: ProjPoint) -> usize {
        match pt {
            ProjPoint::Affine(s) => {
                assert!(s < self.p, "affine coordinate out of range");
                s as usize
            }
            ProjPoint::Infinity => self.p as usize,
        }
    }

    fn point(&self, i: usize) -> ProjPoint {
        if i == self.p as usize {
            ProjPoint::Infinity
        } else {
            ProjPoint::Affine(i as u64)
        }
    }

    pub fn apply(&self, pt: ProjPoint) -> ProjPoint {
        self.images[self.index(pt)]
    }

    pub fn is_identity(&self) -> bool {
        (0..self.images.len()).all(|i| self.images[i] == self.point(i))
    }

    /// Number of fixed points among the affine points [1 : s].
    pub fn fixed_affine_count(&self) -> usize {
        (0..self.p as usize)
            .filter(|&i| self.images[i] == self.point(i))
            .count()
    }

    pub fn fixes_infinity(&self) -> bool {
        self.images[self.p as usize] == ProjPoint::Infinity
    }

    /// Cycle decomposition over all of P^1, each cycle led by its smallest
    /// point.
    pub fn cycles(&self) -> Vec<Vec<ProjPoint>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(self.point(i));
                i = self.index(self.images[i]);
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted lengths of the cycles avoiding [0:1], or None when [0:1]
    /// moves. These are the lengths mirrored by the census side attached to
    /// this reduction.
    pub fn affine_cycle_lengths(&self) -> Option<Vec<usize>> {
        if !self.fixes_infinity() {
            return None;
        }
        let mut lengths: Vec<usize> = self
            .cycles()
            .into_iter()
            .filter(|c| !c.contains(&ProjPoint::Infinity))
            .map(|c| c.len())
            .collect();
        lengths.sort_unstable();
        Some(lengths)
    }
}

/// Order of the mod-p reduction of w as an element of PGL2(F_p): the least
/// l >= 1 with wbar^l scalar.
pub fn pgl_order(w: &Mat2) -> Result<u64, Error> {
    let wbar = w.mod_p();
    let p = wbar.modulus().p();
    if !wbar.det().is_unit() {
        return Err(Error::SingularModP);
    }
    let bound = p * (p * p - 1) + 1;
    let mut acc = wbar;
    for l in 1..=bound {
        if acc.is_scalar() {
            return Ok(l);
        }
        acc = acc * wbar;
    }
    unreachable!("group element order exceeds the group order");
}

/// The full metacommutation permutation of a unit, with its cycle structure
/// and the side-by-side statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationReport {
    labels: Vec<IdealLabel>,
    images: Vec<usize>,
    cycles: Vec<Vec<IdealLabel>>,
    fixed_s1: usize,
    fixed_s2: usize,
    ell1: Option<u64>,
    ell2: Option<u64>,
}

/// Computes the metacommutation permutation of w on the whole census.
pub fn sigma_perm(order: &EichlerOrder, w: &Mat2) -> Result<PermutationReport, Error> {
    let labels = order.labels();
    let mut images = Vec::with_capacity(labels.len());
    for &label in &labels {
        let image = sigma_apply(order, w, label)?;
        let idx = labels
            .iter()
            .position(|&l| l == image)
            .ok_or(Error::InternalCensus)?;
        images.push(idx);
    }

    let mut seen = vec![false; labels.len()];
    let mut cycles = Vec::new();
    for start in 0..labels.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(labels[i]);
            i = images[i];
        }
        cycles.push(cycle);
    }

    let fixed = |pred: fn(&IdealLabel) -> bool| {
        (0..labels.len())
            .filter(|&i| pred(&labels[i]) && images[i] == i)
            .count()
    };
    let fixed_s1 = fixed(IdealLabel::is_s1);
    let fixed_s2 = fixed(IdealLabel::is_s2);

    let ell = |pred: fn(&IdealLabel) -> bool| -> Option<u64> {
        let lengths: BTreeSet<usize> = cycles
            .iter()
            .filter(|c| pred(&c[0]) && c.len() > 1)
            .map(|c| c.len())
            .collect();
        match (lengths.len(), lengths.first()) {
            (1, Some(&l)) => Some(l as u64),
            _ => None,
        }
    };
    let ell1 = ell(IdealLabel::is_s1);
    let ell2 = ell(IdealLabel::is_s2);

    Ok(PermutationReport {
        labels,
        images,
        cycles,
        fixed_s1,
        fixed_s2,
        ell1,
        ell2,
    })
}

impl PermutationReport {
    /// Census labels in their fixed order.
    pub fn labels(&self) -> &[IdealLabel] {
        &self.labels
    }

    pub fn image_of(&self, label: IdealLabel) -> Result<IdealLabel, Error> {
        let i = self
            .labels
            .iter()
            .position(|&l| l == label)
            .ok_or(Error::UnknownLabel)?;
        Ok(self.labels[self.images[i]])
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Cycles in census order of their leading label; singletons included.
    pub fn cycles(&self) -> &[Vec<IdealLabel>] {
        &self.cycles
    }

    /// True when no cycle mixes S1 labels with S2 or Rad labels.
    pub fn sides_preserved(&self) -> bool {
        self.cycles.iter().all(|c| {
            c.iter().all(|l| l.is_s1())
                || c.iter().all(|l| l.is_s2())
                || c.iter().all(|l| l.is_rad())
        })
    }

    /// Sorted cycle lengths over the labels of one side (including
    /// singletons), for comparing against the projective model.
    pub fn cycle_lengths_on(&self, pred: fn(&IdealLabel) -> bool) -> Vec<usize> {
        let mut lengths: Vec<usize> = self
            .cycles
            .iter()
            .filter(|c| pred(&c[0]))
            .map(|c| c.len())
            .collect();
        lengths.sort_unstable();
        lengths
    }

    /// The lengths of nontrivial cycles on one side; the structure theorems
    /// say this set has at most one element.
    pub fn nontrivial_lengths_on(&self, pred: fn(&IdealLabel) -> bool) -> BTreeSet<usize> {
        self.cycles
            .iter()
            .filter(|c| pred(&c[0]) && c.len() > 1)
            .map(|c| c.len())
            .collect()
    }

    pub fn fixed_s1(&self) -> usize {
        self.fixed_s1
    }

    pub fn fixed_s2(&self) -> usize {
        self.fixed_s2
    }

    /// Common nontrivial cycle length on the S1 side, when the side moves
    /// and the length is uniform.
    pub fn ell1(&self) -> Option<u64> {
        self.ell1
    }

    pub fn ell2(&self) -> Option<u64> {
        self.ell2
    }

    /// The two side lengths plus the headline comparison: the flag is true
    /// unless both sides move with different lengths.
    pub fn ell_pair(&self) -> (Option<u64>, Option<u64>, bool) {
        let equal = match (self.ell1, self.ell2) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        };
        (self.ell1, self.ell2, equal)
    }

    /// JSON rendering: mapping and cycles by label name, side statistics,
    /// and the two optional cycle lengths.
    pub fn to_json(&self) -> Value {
        let mut mapping = Map::new();
        for (i, label) in self.labels.iter().enumerate() {
            mapping.insert(
                label.to_string(),
                Value::String(self.labels[self.images[i]].to_string()),
            );
        }
        let cycles: Vec<Value> = self
            .cycles
            .iter()
            .map(|c| Value::Array(c.iter().map(|l| Value::String(l.to_string())).collect()))
            .collect();
        json!({
            "mapping": Value::Object(mapping),
            "cycles": cycles,
            "ell1": self.ell1,
            "ell2": self.ell2,
            "fixed_s1": self.fixed_s1,
            "fixed_s2": self.fixed_s2,
        })
    }
}

/// Checks the three commuting squares tying sigma_w to its shadows: (a)
/// relabeling S2 -> S1 by phi_gamma turns sigma_w into sigma of the
/// conjugate; (b) varphi turns sigma_w on S1 into tau_w on affine points;
/// (c) the composite does both at once on S2.
pub fn check_diagrams(order: &EichlerOrder, w: &Mat2) -> Result<(bool, bool, bool), Error> {
    if !order.is_unit(w) {
        return Err(Error::NotAUnit);
    }
    let conj = order.conj_by_gamma(w)?;
    let tau_w = tau_perm(w)?;
    let tau_c = tau_perm(&conj)?;

    let mut a = true;
    let mut b = true;
    let mut c = true;
    for s in 0..order.p() {
        let s1 = IdealLabel::S1(s);
        let s2 = IdealLabel::S2(s);

        let lhs_a = phi_gamma(sigma_apply(order, w, s2)?)?;
        let rhs_a = sigma_apply(order, &conj, phi_gamma(s2)?)?;
        a &= lhs_a == rhs_a;

        let lhs_b = varphi(sigma_apply(order, w, s1)?)?;
        let rhs_b = tau_w.apply(varphi(s1)?);
        b &= lhs_b == rhs_b;

        let lhs_c = varphi(phi_gamma(sigma_apply(order, w, s2)?)?)?;
        let rhs_c = tau_c.apply(ProjPoint::Affine(s));
        c &= lhs_c == rhs_c;
    }
    Ok((a, b, c))
}

/// Predicted number of sigma_w-fixed ideals on the S1 side, for odd p and a
/// reduction that is not scalar mod p: the quadratic character of
/// trace^2 - 4 det, which is 0 or 1 because the discriminant is a square.
pub fn fixed_count_formula(order: &EichlerOrder, w: &Mat2) -> Result<u32, Error> {
    if order.p() == 2 {
        return Err(Error::CharacterUndefined);
    }
    if !order.contains(w)? {
        return Err(Error::NotInOrder);
    }
    let wbar = w.mod_p();
    if wbar.is_scalar() {
        return Err(Error::ScalarModP);
    }
    let t = wbar.trace();
    let d = wbar.det();
    let disc = t * t - d.modulus().scalar(4) * d;
    let chi = quad_char(disc.value(), order.p())?;
    debug_assert!(
        chi >= 0,
        "discriminant of an order element is a square mod p"
    );
    Ok(chi as u32)
}

/// Whether w acts trivially on the whole census: true exactly for units
/// congruent to a scalar mod p whose upper-right entry is divisible by p and
/// whose lower-left entry is divisible by p^(n+1).
pub fn kernel_member(order: &EichlerOrder, w: &Mat2) -> Result<bool, Error> {
    if !order.is_unit(w) {
        return Err(Error::NotAUnit);
    }
    let [a, b, c, d] = w.entries();
    Ok((a - d).val_at_least(1)? && b.val_at_least(1)? && c.val_at_least(order.level() + 1)?)
}
