//! Circular convolution kernels, generic over the scalar.
//!
//! Application arithmetic runs entirely in the requested precision — the
//! 32-bit path exists to measure a layer's orthogonality error at f32
//! machine epsilon, so nothing here may secretly widen.

use nalgebra::{DMatrix, RealField};

/// Scalars convolutions run in. `f64` is the default; `f32` reproduces
/// epsilon-scale behaviour of single-precision layers.
pub trait ConvScalar: RealField + Copy {
    fn from_f64(v: f64) -> Self;
    fn into_f64(self) -> f64;
}

impl ConvScalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn into_f64(self) -> f64 {
        self
    }
}

impl ConvScalar for f32 {
    fn from_f64(v: f64) -> Self {
        v as f32
    }
    fn into_f64(self) -> f64 {
        self as f64
    }
}

/// Taps as `(index, matrix)` pairs in the working precision.
pub(crate) type Taps<T> = Vec<(i64, DMatrix<T>)>;

pub(crate) fn cast_taps<T: ConvScalar>(seq: &crate::polymat::MatrixSeq) -> Taps<T> {
    seq.iter()
        .map(|(n, m)| (n, m.map(T::from_f64)))
        .collect()
}

/// `y[i] = Σₙ h[n]·x[(i-n) mod N]`.
pub(crate) fn standard<T: ConvScalar>(taps: &Taps<T>, x: &DMatrix<T>, out_rows: usize) -> DMatrix<T> {
    let n_len = x.ncols() as i64;
    let mut y = DMatrix::zeros(out_rows, x.ncols());
    for i in 0..n_len {
        let mut col = y.column_mut(i as usize);
        for (n, h) in taps {
            let src = (i - n).rem_euclid(n_len) as usize;
            col.gemv(T::one(), h, &x.column(src), T::one());
        }
    }
    y
}

/// `y[i] = Σₙ h[n]·x[(i-Rn) mod N]` — the filter up-sampled by `R`.
pub(crate) fn dilated<T: ConvScalar>(
    taps: &Taps<T>,
    rate: usize,
    x: &DMatrix<T>,
    out_rows: usize,
) -> DMatrix<T> {
    let n_len = x.ncols() as i64;
    let r = rate as i64;
    let mut y = DMatrix::zeros(out_rows, x.ncols());
    for i in 0..n_len {
        let mut col = y.column_mut(i as usize);
        for (n, h) in taps {
            let src = (i - r * n).rem_euclid(n_len) as usize;
            col.gemv(T::one(), h, &x.column(src), T::one());
        }
    }
    y
}

/// `y[i] = Σₙ h[n]·x[(Ri-n) mod N]`, output length `N/R`.
pub(crate) fn strided_down<T: ConvScalar>(
    taps: &Taps<T>,
    rate: usize,
    x: &DMatrix<T>,
    out_rows: usize,
) -> DMatrix<T> {
    let n_len = x.ncols() as i64;
    let r = rate as i64;
    let out_len = x.ncols() / rate;
    let mut y = DMatrix::zeros(out_rows, out_len);
    for i in 0..out_len as i64 {
        let mut col = y.column_mut(i as usize);
        for (n, h) in taps {
            let src = (r * i - n).rem_euclid(n_len) as usize;
            col.gemv(T::one(), h, &x.column(src), T::one());
        }
    }
    y
}

/// `y[i] = Σₙ h[n]·x^{↑R}[(i-n) mod NR]`, output length `N·R`.
pub(crate) fn strided_up<T: ConvScalar>(
    taps: &Taps<T>,
    rate: usize,
    x: &DMatrix<T>,
    out_rows: usize,
) -> DMatrix<T> {
    let r = rate as i64;
    let out_len = x.ncols() * rate;
    let m_len = out_len as i64;
    let mut y = DMatrix::zeros(out_rows, out_len);
    for i in 0..m_len {
        let mut col = y.column_mut(i as usize);
        for (n, h) in taps {
            let j = (i - n).rem_euclid(m_len);
            if j % r == 0 {
                col.gemv(T::one(), h, &x.column((j / r) as usize), T::one());
            }
        }
    }
    y
}
