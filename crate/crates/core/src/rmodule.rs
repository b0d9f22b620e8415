//! Rank-4 module arithmetic over Z/p^K: the independent cross-check for the
//! generator-based ideal computations.
//!
//! An element of the order has coordinates (a, b, c / p^n, d) with respect
//! to the basis E11, E12, p^n E21, E22. A left ideal is then a module of
//! coordinate rows, and [`module_hnf`] reduces any generating set to the
//! canonical upper-triangular basis: pivots are powers of p sitting on the
//! diagonal, entries above a pivot are reduced mod that pivot, entries below
//! are zero. Equal modules get byte-equal bases, so ideal identity becomes
//! literal comparison.
//!
//! [`brute_sigma`] recomputes the metacommutation image of an ideal this
//! way — form O * g * w + O * p from scratch, reduce, and look the result up
//! in the census — without ever touching the adjugate-based equality test
//! it is checking.

use crate::error::Error;
use crate::order::{EichlerOrder, IdealLabel};
use crate::padic::{Mat2, Modulus, PAdicScalar, Valuation};

/// Canonical upper-triangular basis of a full-rank module of coordinate
/// rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModuleBasis {
    modulus: Modulus,
    rows: [[u64; 4]; 4],
}

impl ModuleBasis {
    pub fn rows(&self) -> &[[u64; 4]; 4] {
        &self.rows
    }

    /// The diagonal is (p^e0, ..., p^e3); returns the exponents.
    pub fn diag_exponents(&self) -> [u32; 4] {
        let mut out = [0u32; 4];
        for (i, e) in out.iter_mut().enumerate() {
            let d = PAdicScalar::from_u64(self.modulus, self.rows[i][i]);
            match d.val() {
                Valuation::Finite(v) => *e = v,
                Valuation::Infinity => unreachable!("full-rank basis has nonzero diagonal"),
            }
        }
        out
    }

    /// Sum of the diagonal exponents: the valuation of the module's index in
    /// the full order. Norm-p ideals always have sum 2.
    pub fn index_valuation(&self) -> u32 {
        self.diag_exponents().iter().sum()
    }

    /// Membership test by back-substitution against the triangular basis.
    pub fn contains_coords(&self, coords: [u64; 4]) -> bool {
        let m = self.modulus;
        let mut v = coords.map(|x| PAdicScalar::from_u64(m, x));
        for i in 0..4 {
            let pivot = PAdicScalar::from_u64(m, self.rows[i][i]);
            let e = match pivot.val() {
                Valuation::Finite(e) => e,
                Valuation::Infinity => unreachable!("full-rank basis has nonzero diagonal"),
            };
            if v[i].value() % m.p_pow(e) != 0 {
                return false;
            }
            let q = v[i].div_p_pow(e);
            for (vj, bij) in v.iter_mut().zip(self.rows[i]) {
                *vj = *vj - q * PAdicScalar::from_u64(m, bij);
            }
        }
        v.iter().all(|s| s.is_zero())
    }
}

/// Coordinates of an order element with respect to E11, E12, p^n E21, E22.
pub fn coords(order: &EichlerOrder, m: &Mat2) -> Result<[u64; 4], Error> {
    if !order.contains(m)? {
        return Err(Error::NotInOrder);
    }
    let [a, b, c, d] = m.entries();
    Ok([
        a.value(),
        b.value(),
        c.div_p_pow(order.level()).value(),
        d.value(),
    ])
}

/// Reduces a spanning set of order elements to the canonical basis of the
/// module they generate over Z_p (as coordinate rows).
///
/// Pivoting always picks the row of least valuation in the current column,
/// normalizes its unit part away, and clears the column above and below;
/// above-pivot entries are left reduced mod the pivot. A column with no
/// usable pivot means the residues cannot exhibit the module's rank, which
/// surfaces as `PrecisionExhausted`.
pub fn module_hnf(order: &EichlerOrder, elements: &[Mat2]) -> Result<ModuleBasis, Error> {
    let m = order.modulus();
    let mut rows: Vec<[PAdicScalar; 4]> = elements
        .iter()
        .map(|e| coords(order, e).map(|c| c.map(|x| PAdicScalar::from_u64(m, x))))
        .collect::<Result<_, _>>()?;

    let mut pivot_row = 0usize;
    for col in 0..4 {
        // minimal-valuation pivot among the not-yet-pivoted rows
        let mut best: Option<(usize, u32)> = None;
        for (i, row) in rows.iter().enumerate().skip(pivot_row) {
            if let Valuation::Finite(e) = row[col].val() {
                if best.is_none_or(|(_, be)| e < be) {
                    best = Some((i, e));
                }
            }
        }
        let Some((i, e)) = best else {
            return Err(Error::PrecisionExhausted);
        };
        rows.swap(pivot_row, i);

        let inv = rows[pivot_row][col]
            .unit_part()
            .unit_inv()
            .expect("unit part");
        for x in rows[pivot_row].iter_mut() {
            *x = *x * inv;
        }
        // the pivot is now exactly p^e; clear the rest of the column. Below
        // the pivot the quotient is exact and the entry vanishes; above, the
        // entry is left reduced mod p^e.
        let pivot = rows[pivot_row];
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row {
                continue;
            }
            let q = PAdicScalar::from_u64(m, row[col].value() / m.p_pow(e));
            for (x, pj) in row.iter_mut().zip(pivot) {
                *x = *x - q * pj;
            }
        }
        pivot_row += 1;
    }

    for row in rows.iter().skip(4) {
        debug_assert!(
            row.iter().all(|s| s.is_zero()),
            "surplus generator did not reduce away"
        );
    }

    let mut out = [[0u64; 4]; 4];
    for (i, row) in rows.iter().take(4).enumerate() {
        for j in 0..4 {
            out[i][j] = row[j].value();
        }
    }
    Ok(ModuleBasis {
        modulus: m,
        rows: out,
    })
}

/// The canonical basis of the left ideal named by a census label.
pub fn ideal_module(order: &EichlerOrder, label: IdealLabel) -> Result<ModuleBasis, Error> {
    let g = order.generator(label)?;
    let rows: Vec<Mat2> = order.module_basis().iter().map(|b| *b * g).collect();
    module_hnf(order, &rows)
}

/// Precomputed canonical bases for the whole census, for repeated lookups.
#[derive(Debug, Clone)]
pub struct CensusModules {
    entries: Vec<(IdealLabel, ModuleBasis)>,
}

impl CensusModules {
    pub fn new(order: &EichlerOrder) -> Result<Self, Error> {
        let entries = order
            .labels()
            .into_iter()
            .map(|label| ideal_module(order, label).map(|b| (label, b)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CensusModules { entries })
    }

    pub fn lookup(&self, basis: &ModuleBasis) -> Result<IdealLabel, Error> {
        self.entries
            .iter()
            .find(|(_, b)| b == basis)
            .map(|(l, _)| *l)
            .ok_or(Error::NoCensusMatch)
    }

    /// Checks that the census bases are pairwise distinct and returns how
    /// many there are.
    pub fn assert_distinct(&self) -> Result<usize, Error> {
        for i in 0..self.entries.len() {
            for j in 0..i {
                if self.entries[i].1 == self.entries[j].1 {
                    return Err(Error::CensusCollision);
                }
            }
        }
        Ok(self.entries.len())
    }

    pub fn entries(&self) -> &[(IdealLabel, ModuleBasis)] {
        &self.entries
    }

    /// Metacommutation image computed purely by module arithmetic: reduce
    /// O * g * w + O * p to canonical form and find it in the census.
    pub fn brute_sigma(
        &self,
        order: &EichlerOrder,
        w: &Mat2,
        label: IdealLabel,
    ) -> Result<IdealLabel, Error> {
        if !order.is_unit(w) {
            return Err(Error::NotAUnit);
        }
        let g = order.generator(label)?;
        let gw = g * *w;
        let p = order.modulus().scalar(order.p() as i64);
        let mut elements: Vec<Mat2> = Vec::with_capacity(8);
        for b in order.module_basis() {
            elements.push(b * gw);
        }
        for b in order.module_basis() {
            elements.push(b.scale(p));
        }
        let target = module_hnf(order, &elements)?;
        self.lookup(&target)
    }
}

/// One-shot [`CensusModules::brute_sigma`]; builds the census bases afresh.
pub fn brute_sigma(order: &EichlerOrder, w: &Mat2, label: IdealLabel) -> Result<IdealLabel, Error> {
    CensusModules::new(order)?.brute_sigma(order, w, label)
}

/// Recomputes the census by module arithmetic and checks it is collision
/// free; returns its size.
pub fn verify_census(order: &EichlerOrder) -> Result<usize, Error> {
    CensusModules::new(order)?.assert_distinct()
}
