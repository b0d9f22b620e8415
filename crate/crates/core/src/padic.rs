//! Truncated p-adic arithmetic: scalars in Z/p^K and 2x2 matrices over them.
//!
//! A scalar is a residue mod p^K together with its modulus. Valuations are
//! read off the residue, which is exact for any element whose true valuation
//! is below K; the residue 0 stands for "valuation at least K" and reports
//! [`Valuation::Infinity`]. Comparisons that would need to see past the K-th
//! digit fail with [`Error::PrecisionExhausted`] rather than guess.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use crate::error::Error;

/// The modulus p^K: a prime together with a precision exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus {
    p: u64,
    k: u32,
    pk: u64,
}

impl Modulus {
    /// Builds the modulus p^K, checking that p is prime, K >= 1, and p^K
    /// fits in a u64.
    pub fn new(p: u64, k: u32) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidContext(
                "precision exponent must be at least 1".into(),
            ));
        }
        let pk = p.checked_pow(k).ok_or_else(|| {
            Error::InvalidContext(format!("p^K = {p}^{k} does not fit in 64 bits"))
        })?;
        Ok(Modulus { p, k, pk })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The precision exponent K.
    pub fn precision(&self) -> u32 {
        self.k
    }

    /// The modulus value p^K itself.
    pub fn value(&self) -> u64 {
        self.pk
    }

    /// p^e for e <= K, as a plain integer.
    pub fn p_pow(&self, e: u32) -> u64 {
        debug_assert!(e <= self.k);
        self.p.pow(e)
    }

    /// Embeds an integer as a scalar mod p^K.
    pub fn scalar(&self, value: i64) -> PAdicScalar {
        PAdicScalar::from_i64(*self, value)
    }

    /// The same prime at a lower precision.
    pub fn truncated(&self, k: u32) -> Result<Modulus, Error> {
        if k == 0 || k > self.k {
            return Err(Error::InvalidContext(format!(
                "cannot truncate precision {} to {}",
                self.k, k
            )));
        }
        Ok(Modulus {
            p: self.p,
            k,
            pk: self.p.pow(k),
        })
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Valuation of a truncated p-adic number. `Infinity` means the residue is 0,
/// i.e. the true valuation is at least the working precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinity,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(e) => write!(f, "{e}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

/// A residue mod p^K carrying its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PAdicScalar {
    value: u64,
    modulus: Modulus,
}

impl PAdicScalar {
    pub fn from_u64(modulus: Modulus, value: u64) -> Self {
        PAdicScalar {
            value: value % modulus.pk,
            modulus,
        }
    }

    pub fn from_i64(modulus: Modulus, value: i64) -> Self {
        let m = modulus.pk as i128;
        let r = ((value as i128 % m) + m) % m;
        PAdicScalar {
            value: r as u64,
            modulus,
        }
    }

    pub fn zero(modulus: Modulus) -> Self {
        PAdicScalar { value: 0, modulus }
    }

    pub fn one(modulus: Modulus) -> Self {
        PAdicScalar::from_u64(modulus, 1)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_unit(&self) -> bool {
        !self.value.is_multiple_of(self.modulus.p)
    }

    /// p-adic valuation of the residue; `Infinity` when the residue is 0.
    pub fn val(&self) -> Valuation {
        if self.value == 0 {
            return Valuation::Infinity;
        }
        let mut v = self.value;
        let mut e = 0;
        while v.is_multiple_of(self.modulus.p) {
            v /= self.modulus.p;
            e += 1;
        }
        Valuation::Finite(e)
    }

    /// Decides `val(self) >= t`. The test is only meaningful below the
    /// working precision, so `t >= K` is refused.
    pub fn val_at_least(&self, t: u32) -> Result<bool, Error> {
        if t >= self.modulus.k {
            return Err(Error::PrecisionExhausted);
        }
        Ok(self.val() >= Valuation::Finite(t))
    }

    /// Inverse of a unit, by extended Euclid against p^K.
    pub fn unit_inv(&self) -> Result<Self, Error> {
        if !self.is_unit() {
            return Err(Error::NotAUnit);
        }
        let inv = mod_inverse(self.value, self.modulus.pk);
        Ok(PAdicScalar {
            value: inv,
            modulus: self.modulus,
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = PAdicScalar::one(self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Exact division by p^e. The caller must know `val(self) >= e`; the
    /// result is the honest quotient of the integer lift.
    pub(crate) fn div_p_pow(&self, e: u32) -> Self {
        let pe = self.modulus.p_pow(e);
        debug_assert!(
            self.value.is_multiple_of(pe),
            "division by p^{e} of a residue with smaller valuation"
        );
        PAdicScalar {
            value: self.value / pe,
            modulus: self.modulus,
        }
    }

    /// Multiplication by p^e (may truncate high digits, as any product does).
    pub fn mul_p_pow(&self, e: u32) -> Self {
        PAdicScalar::from_u64(
            self.modulus,
            mulmod(self.value, self.modulus.p_pow(e), self.modulus.pk),
        )
    }

    /// The unit u in the factorization `self = u * p^val`; the scalar must be
    /// nonzero.
    pub(crate) fn unit_part(&self) -> Self {
        match self.val() {
            Valuation::Finite(e) => self.div_p_pow(e),
            Valuation::Infinity => panic!("unit part of a zero residue"),
        }
    }

    /// The same residue read at a lower precision.
    pub fn truncated(&self, k: u32) -> Result<Self, Error> {
        let m = self.modulus.truncated(k)?;
        Ok(PAdicScalar::from_u64(m, self.value))
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Inverse of `a` mod `m` for gcd(a, m) = 1, via extended Euclid.
fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "inverse of a non-unit");
    (((old_s % m as i128) + m as i128) % m as i128) as u64
}

fn check_same_modulus(a: Modulus, b: Modulus) {
    assert_eq!(a, b, "mixed moduli in scalar arithmetic");
}

impl Add for PAdicScalar {
    type Output = PAdicScalar;
    fn add(self, rhs: Self) -> Self {
        check_same_modulus(self.modulus, rhs.modulus);
        PAdicScalar {
            value: (self.value + rhs.value) % self.modulus.pk,
            modulus: self.modulus,
        }
    }
}

impl Sub for PAdicScalar {
    type Output = PAdicScalar;
    fn sub(self, rhs: Self) -> Self {
        check_same_modulus(self.modulus, rhs.modulus);
        PAdicScalar {
            value: (self.value + self.modulus.pk - rhs.value) % self.modulus.pk,
            modulus: self.modulus,
        }
    }
}

impl Mul for PAdicScalar {
    type Output = PAdicScalar;
    fn mul(self, rhs: Self) -> Self {
        check_same_modulus(self.modulus, rhs.modulus);
        PAdicScalar {
            value: mulmod(self.value, rhs.value, self.modulus.pk),
            modulus: self.modulus,
        }
    }
}

impl Neg for PAdicScalar {
    type Output = PAdicScalar;
    fn neg(self) -> Self {
        PAdicScalar {
            value: if self.value == 0 {
                0
            } else {
                self.modulus.pk - self.value
            },
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for PAdicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Legendre symbol of x mod an odd prime p, as -1, 0 or 1. Undefined at p = 2.
pub fn quad_char(x: u64, p: u64) -> Result<i8, Error> {
    if p == 2 {
        return Err(Error::CharacterUndefined);
    }
    debug_assert!(is_prime(p));
    let r = x % p;
    if r == 0 {
        return Ok(0);
    }
    // Euler's criterion: x^((p-1)/2) is 1 or p-1 mod p.
    let mut acc = 1u64;
    let mut base = r;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    Ok(if acc == 1 { 1 } else { -1 })
}

/// A 2x2 matrix over Z/p^K, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2 {
    modulus: Modulus,
    e: [u64; 4],
}

impl Mat2 {
    pub fn from_i64(modulus: Modulus, rows: [[i64; 2]; 2]) -> Self {
        let f = |x: i64| PAdicScalar::from_i64(modulus, x).value;
        Mat2 {
            modulus,
            e: [f(rows[0][0]), f(rows[0][1]), f(rows[1][0]), f(rows[1][1])],
        }
    }

    pub fn from_u64(modulus: Modulus, rows: [[u64; 2]; 2]) -> Self {
        let f = |x: u64| x % modulus.pk;
        Mat2 {
            modulus,
            e: [f(rows[0][0]), f(rows[0][1]), f(rows[1][0]), f(rows[1][1])],
        }
    }

    pub fn from_scalars(a: PAdicScalar, b: PAdicScalar, c: PAdicScalar, d: PAdicScalar) -> Self {
        check_same_modulus(a.modulus, b.modulus);
        check_same_modulus(a.modulus, c.modulus);
        check_same_modulus(a.modulus, d.modulus);
        Mat2 {
            modulus: a.modulus,
            e: [a.value, b.value, c.value, d.value],
        }
    }

    pub fn identity(modulus: Modulus) -> Self {
        Mat2::from_u64(modulus, [[1, 0], [0, 1]])
    }

    pub fn zero(modulus: Modulus) -> Self {
        Mat2::from_u64(modulus, [[0, 0], [0, 0]])
    }

    pub fn scalar(modulus: Modulus, c: i64) -> Self {
        Mat2::from_i64(modulus, [[c, 0], [0, c]])
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn entry(&self, row: usize, col: usize) -> PAdicScalar {
        assert!(row < 2 && col < 2);
        PAdicScalar {
            value: self.e[2 * row + col],
            modulus: self.modulus,
        }
    }

    pub fn entries(&self) -> [PAdicScalar; 4] {
        [
            self.entry(0, 0),
            self.entry(0, 1),
            self.entry(1, 0),
            self.entry(1, 1),
        ]
    }

    pub fn trace(&self) -> PAdicScalar {
        self.entry(0, 0) + self.entry(1, 1)
    }

    pub fn det(&self) -> PAdicScalar {
        self.entry(0, 0) * self.entry(1, 1) - self.entry(0, 1) * self.entry(1, 0)
    }

    /// The adjugate [[d, -b], [-c, a]], so that `m * m.adjugate() = det(m) * I`.
    pub fn adjugate(&self) -> Mat2 {
        Mat2::from_scalars(
            self.entry(1, 1),
            -self.entry(0, 1),
            -self.entry(1, 0),
            self.entry(0, 0),
        )
    }

    pub fn scale(&self, s: PAdicScalar) -> Mat2 {
        check_same_modulus(self.modulus, s.modulus);
        Mat2 {
            modulus: self.modulus,
            e: [
                mulmod(self.e[0], s.value, self.modulus.pk),
                mulmod(self.e[1], s.value, self.modulus.pk),
                mulmod(self.e[2], s.value, self.modulus.pk),
                mulmod(self.e[3], s.value, self.modulus.pk),
            ],
        }
    }

    /// True when the matrix is invertible over Z/p^K, i.e. det is a unit.
    pub fn is_invertible(&self) -> bool {
        self.det().is_unit()
    }

    /// Inverse of a matrix with unit determinant.
    pub fn inverse(&self) -> Result<Mat2, Error> {
        let d = self.det();
        if !d.is_unit() {
            return Err(Error::NotAUnit);
        }
        Ok(self.adjugate().scale(d.unit_inv()?))
    }

    /// The same matrix read at a lower precision.
    pub fn truncated(&self, k: u32) -> Result<Mat2, Error> {
        let m = self.modulus.truncated(k)?;
        Ok(Mat2 {
            modulus: m,
            e: [
                self.e[0] % m.pk,
                self.e[1] % m.pk,
                self.e[2] % m.pk,
                self.e[3] % m.pk,
            ],
        })
    }

    /// Reduction mod p (precision 1).
    pub fn mod_p(&self) -> Mat2 {
        self.truncated(1).expect("precision is at least 1")
    }

    /// True when the matrix is a scalar multiple of the identity.
    pub fn is_scalar(&self) -> bool {
        self.e[1] == 0 && self.e[2] == 0 && self.e[0] == self.e[3]
    }

    /// Uniform random element of GL2(Z/p^K), by rejection on the determinant.
    pub fn random_invertible<R: Rng + ?Sized>(modulus: Modulus, rng: &mut R) -> Mat2 {
        loop {
            let m = Mat2 {
                modulus,
                e: [
                    rng.random_range(0..modulus.pk),
                    rng.random_range(0..modulus.pk),
                    rng.random_range(0..modulus.pk),
                    rng.random_range(0..modulus.pk),
                ],
            };
            if m.is_invertible() {
                return m;
            }
        }
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        check_same_modulus(self.modulus, rhs.modulus);
        let a = |i: usize, j: usize| {
            (self.entry(i, 0) * rhs.entry(0, j) + self.entry(i, 1) * rhs.entry(1, j)).value
        };
        Mat2 {
            modulus: self.modulus,
            e: [a(0, 0), a(0, 1), a(1, 0), a(1, 1)],
        }
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        check_same_modulus(self.modulus, rhs.modulus);
        let a = |i: usize| (self.e[i] + rhs.e[i]) % self.modulus.pk;
        Mat2 {
            modulus: self.modulus,
            e: [a(0), a(1), a(2), a(3)],
        }
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2::from_scalars(
            -self.entry(0, 0),
            -self.entry(0, 1),
            -self.entry(1, 0),
            -self.entry(1, 1),
        )
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.e[0], self.e[1], self.e[2], self.e[3]
        )
    }
}
