//! Local Eichler orders of level p^n in M2(Q_p) and their norm-p left ideals.
//!
//! The order is O = {[[a, b], [c, d]] : val(c) >= n} over Z_p, realized here
//! over the truncation Z/p^K. Its principal left ideals of reduced norm p
//! form a finite census:
//!
//! * `S1(s)` generated by `alpha(s) = [[1, s], [0, p]]` for 0 <= s < p,
//! * `S2(s)` generated by `beta(s) = [[p, 0], [s*p^n, 1]]` for 0 <= s < p,
//! * `Rad`, generated by `gamma = [[0, 1], [p^n, 0]]`, exactly when n = 1.
//!
//! So there are 2p + 1 ideals at level p and 2p at deeper levels. Two
//! generators g1, g2 span the same left ideal iff g1 * adjugate(g2) lands in
//! p * O, which needs no Hermite reduction and is the equality test used
//! throughout.

use std::fmt;

use rand::Rng;

use crate::error::Error;
use crate::padic::{Mat2, Modulus, Valuation};

/// A local Eichler order of level p^n, working at precision p^K.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EichlerOrder {
    modulus: Modulus,
    n: u32,
}

impl EichlerOrder {
    /// Order of level p^n at the default precision K = n + 12.
    pub fn new(p: u64, n: u32) -> Result<Self, Error> {
        EichlerOrder::with_precision(p, n, n + 12)
    }

    /// Order of level p^n at precision K. Requires n >= 1 and K >= n + 2 so
    /// that every valuation test the algorithms perform stays decidable.
    pub fn with_precision(p: u64, n: u32, k: u32) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidContext(
                "level exponent n must be at least 1".into(),
            ));
        }
        if k < n + 2 {
            return Err(Error::InvalidContext(format!(
                "precision K = {k} is too small for level exponent n = {n}; need K >= n + 2"
            )));
        }
        Ok(EichlerOrder {
            modulus: Modulus::new(p, k)?,
            n,
        })
    }

    pub fn p(&self) -> u64 {
        self.modulus.p()
    }

    /// The level exponent n.
    pub fn level(&self) -> u32 {
        self.n
    }

    pub fn precision(&self) -> u32 {
        self.modulus.precision()
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// The element gamma = [[0, 1], [p^n, 0]]; gamma^2 = p^n and conjugation
    /// by gamma swaps the two sides of the census.
    pub fn gamma(&self) -> Mat2 {
        self.gamma_i(self.n)
    }

    /// The intermediate element [[0, 1], [p^i, 0]] for 0 <= i <= n.
    pub fn gamma_i(&self, i: u32) -> Mat2 {
        assert!(i <= self.n, "gamma_i index exceeds the level exponent");
        Mat2::from_u64(self.modulus, [[0, 1], [self.modulus.p_pow(i), 0]])
    }

    /// Generator [[1, s], [0, p]] of the ideal S1(s); s is reduced mod p.
    pub fn alpha(&self, s: u64) -> Mat2 {
        Mat2::from_u64(self.modulus, [[1, s % self.p()], [0, self.p()]])
    }

    /// Generator [[p, 0], [s*p^n, 1]] of the ideal S2(s); s is reduced mod p.
    /// This is the conjugate gamma^-1 * alpha(s) * gamma.
    pub fn beta(&self, s: u64) -> Mat2 {
        let spn = (s % self.p()) * self.modulus.p_pow(self.n);
        Mat2::from_u64(self.modulus, [[self.p(), 0], [spn, 1]])
    }

    /// Membership test: the lower-left entry must have valuation >= n.
    pub fn contains(&self, m: &Mat2) -> Result<bool, Error> {
        assert_eq!(
            m.modulus(),
            self.modulus,
            "matrix modulus differs from the order's"
        );
        m.entry(1, 0).val_at_least(self.n)
    }

    /// True iff m lies in O and is invertible there (unit determinant).
    pub fn is_unit(&self, m: &Mat2) -> bool {
        self.contains(m)
            .expect("level is below the working precision")
            && m.det().is_unit()
    }

    /// Conjugation by gamma, which maps O into itself:
    /// [[a, b], [c, d]] |-> [[d, c / p^n], [b * p^n, a]].
    ///
    /// The division by p^n means the upper-right entry of the result is
    /// exact only to precision K - n; everything downstream of a conjugate
    /// looks at far fewer digits than that.
    pub fn conj_by_gamma(&self, m: &Mat2) -> Result<Mat2, Error> {
        if !self.contains(m)? {
            return Err(Error::NotInOrder);
        }
        let [a, b, c, d] = m.entries();
        Ok(Mat2::from_scalars(
            d,
            c.div_p_pow(self.n),
            b.mul_p_pow(self.n),
            a,
        ))
    }

    /// The census labels in their fixed order: S1(0..p), then S2(0..p), then
    /// Rad when n = 1.
    pub fn labels(&self) -> Vec<IdealLabel> {
        let mut v = Vec::with_capacity(self.census_size());
        v.extend((0..self.p()).map(IdealLabel::S1));
        v.extend((0..self.p()).map(IdealLabel::S2));
        if self.n == 1 {
            v.push(IdealLabel::Rad);
        }
        v
    }

    /// Number of principal left ideals of reduced norm p: 2p + 1 when n = 1,
    /// otherwise 2p.
    pub fn census_size(&self) -> usize {
        2 * self.p() as usize + usize::from(self.n == 1)
    }

    /// The distinguished generator of a census ideal.
    pub fn generator(&self, label: IdealLabel) -> Result<Mat2, Error> {
        match label {
            IdealLabel::S1(s) if s < self.p() => Ok(self.alpha(s)),
            IdealLabel::S2(s) if s < self.p() => Ok(self.beta(s)),
            IdealLabel::Rad if self.n == 1 => Ok(self.gamma()),
            _ => Err(Error::UnknownLabel),
        }
    }

    /// The full census, label plus generator, in census order.
    pub fn ideals(&self) -> Vec<NormPIdeal> {
        self.labels()
            .into_iter()
            .map(|label| NormPIdeal {
                label,
                generator: self.generator(label).expect("census label is valid"),
            })
            .collect()
    }

    fn check_generator(&self, g: &Mat2) -> Result<(), Error> {
        if !self.contains(g)? || g.det().val() != Valuation::Finite(1) {
            return Err(Error::BadGenerator);
        }
        Ok(())
    }

    /// Whether two norm-p generators span the same left O-ideal.
    ///
    /// O*g1 = O*g2 iff g1 * adjugate(g2) lies in p*O, i.e. the product has
    /// valuations >= 1 everywhere and >= n + 1 in the lower-left entry.
    pub fn ideal_equal(&self, g1: &Mat2, g2: &Mat2) -> Result<bool, Error> {
        self.check_generator(g1)?;
        self.check_generator(g2)?;
        let m = *g1 * g2.adjugate();
        Ok(m.entry(0, 0).val_at_least(1)?
            && m.entry(0, 1).val_at_least(1)?
            && m.entry(1, 0).val_at_least(self.n + 1)?
            && m.entry(1, 1).val_at_least(1)?)
    }

    /// Finds the census label of the ideal spanned by g. Exactly one census
    /// entry must match; zero or several indicate a broken census and report
    /// `InternalCensus`.
    pub fn identify(&self, g: &Mat2) -> Result<IdealLabel, Error> {
        self.check_generator(g)?;
        let mut found = None;
        for ideal in self.ideals() {
            if self.ideal_equal(g, &ideal.generator)? {
                if found.is_some() {
                    return Err(Error::InternalCensus);
                }
                found = Some(ideal.label);
            }
        }
        found.ok_or(Error::InternalCensus)
    }

    /// The R-module basis of O: E11, E12, p^n E21, E22.
    pub fn module_basis(&self) -> [Mat2; 4] {
        [
            Mat2::from_u64(self.modulus, [[1, 0], [0, 0]]),
            Mat2::from_u64(self.modulus, [[0, 1], [0, 0]]),
            Mat2::from_u64(self.modulus, [[0, 0], [self.modulus.p_pow(self.n), 0]]),
            Mat2::from_u64(self.modulus, [[0, 0], [0, 1]]),
        ]
    }

    /// Uniform random element of the unit group O^*: diagonal entries are
    /// units, the lower-left entry is divisible by p^n.
    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> Mat2 {
        let pk = self.modulus.value();
        let p = self.p();
        let unit = |rng: &mut R| loop {
            let x = rng.random_range(0..pk);
            if x % p != 0 {
                return x;
            }
        };
        let a = unit(rng);
        let d = unit(rng);
        let b = rng.random_range(0..pk);
        let c = rng.random_range(0..pk / self.modulus.p_pow(self.n)) * self.modulus.p_pow(self.n);
        Mat2::from_u64(self.modulus, [[a, b], [c, d]])
    }

    /// Every element of O^* mod p^j, lifted to working precision: diagonal
    /// entries run over units mod p^j, the upper-right over all residues, and
    /// the lower-left over multiples of p^n. Requires n <= j, and refuses
    /// sweeps larger than 2^22 elements.
    pub fn exhaustive_units(&self, j: u32) -> Result<Vec<Mat2>, Error> {
        if j < self.n || j > self.precision() {
            return Err(Error::InvalidContext(format!(
                "sweep modulus exponent {j} must lie between the level exponent {} and the precision {}",
                self.n,
                self.precision()
            )));
        }
        let p = self.p();
        let pj = p.checked_pow(j).ok_or(Error::PrecisionExhausted)?;
        let units = pj / p * (p - 1);
        let count =
            (units as u128) * (units as u128) * (pj as u128) * ((pj / p.pow(self.n)) as u128);
        if count > 1 << 22 {
            return Err(Error::InvalidContext(format!(
                "exhaustive sweep mod p^{j} would enumerate {count} elements"
            )));
        }
        let mut out = Vec::with_capacity(count as usize);
        for a in (0..pj).filter(|a| a % p != 0) {
            for d in (0..pj).filter(|d| d % p != 0) {
                for b in 0..pj {
                    for c in (0..pj / p.pow(self.n)).map(|c| c * p.pow(self.n)) {
                        out.push(Mat2::from_u64(self.modulus, [[a, b], [c, d]]));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Name of a census ideal. The derived ordering (S1 by s, then S2 by s, then
/// Rad) matches the census order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdealLabel {
    S1(u64),
    S2(u64),
    Rad,
}

impl IdealLabel {
    pub fn is_s1(&self) -> bool {
        matches!(self, IdealLabel::S1(_))
    }

    pub fn is_s2(&self) -> bool {
        matches!(self, IdealLabel::S2(_))
    }

    pub fn is_rad(&self) -> bool {
        matches!(self, IdealLabel::Rad)
    }
}

impl fmt::Display for IdealLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealLabel::S1(s) => write!(f, "S1({s})"),
            IdealLabel::S2(s) => write!(f, "S2({s})"),
            IdealLabel::Rad => write!(f, "Rad"),
        }
    }
}

/// A census entry: a label together with its distinguished generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormPIdeal {
    pub label: IdealLabel,
    pub generator: Mat2,
}
