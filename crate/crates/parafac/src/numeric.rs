//! Compensated dense products for construction-time algebra.
//!
//! Tap products cancel almost exactly when a factored system collapses (the
//! initialization reduction), so plain f64 accumulation leaves residue an
//! order above roundoff. The Ogita–Rump error-free transformations bring the
//! per-entry error back to one ulp of the result. Only construction paths
//! use these; signal application stays in plain arithmetic on purpose — it
//! is the quantity under test.

use nalgebra::DMatrix;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bv = s - a;
    let e = (a - (s - bv)) + (b - bv);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// Running compensated sum.
#[derive(Clone, Copy, Default)]
pub(crate) struct Accumulator {
    sum: f64,
    comp: f64,
}

impl Accumulator {
    #[inline]
    pub fn add_prod(&mut self, a: f64, b: f64) {
        let (p, ep) = two_prod(a, b);
        let (s, es) = two_sum(self.sum, p);
        self.sum = s;
        self.comp += ep + es;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `A·B` with compensated accumulation.
pub(crate) fn comp_mul(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    assert_eq!(a.ncols(), b.nrows(), "inner dimensions must agree");
    let (rows, inner, cols) = (a.nrows(), a.ncols(), b.ncols());
    let mut out = DMatrix::zeros(rows, cols);
    for j in 0..cols {
        for i in 0..rows {
            let mut acc = Accumulator::default();
            for k in 0..inner {
                acc.add_prod(a[(i, k)], b[(k, j)]);
            }
            out[(i, j)] = acc.value();
        }
    }
    out
}

/// `A·Aᵀ`, compensated and symmetrized exactly.
pub(crate) fn comp_gram_t(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let mut out = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut acc = Accumulator::default();
            for k in 0..a.ncols() {
                acc.add_prod(a[(i, k)], a[(j, k)]);
            }
            let v = acc.value();
            out[(i, j)] = v;
            out[(j, i)] = v;
        }
    }
    out
}
