//! Finite-support matrix sequences and their spectral algebra.
//!
//! A [`MatrixSeq`] is the spatial form of a polynomial transfer matrix
//! `H(z) = Σₙ h[n] z⁻ⁿ` with real `T×S` taps supported on a finite window
//! `[-L⁻, L⁺]`. Multiplying transfer matrices is convolving tap sequences
//! ([`seq_mul`]); the paraconjugate `H̃(z) = H(z⁻¹)ᵀ` is transposition plus
//! index reflection ([`paraconjugate`]); and paraunitarity —
//! `H(e^{iω})†H(e^{iω}) = I` at every frequency — is decidable on a finite
//! uniform grid because the residual is a trigonometric polynomial of
//! bounded degree ([`is_paraunitary`]).
//!
//! The module also carries both sides of the ridge-regularization identity:
//! the spatial form [`reg_residual_spatial`] and the spectral quadrature
//! [`reg_residual_spectral`] over the stacked polyphase matrix agree for
//! every filter and rate.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{invalid, Error, Result};
use crate::multirate::{polyphase_matrix, PolyphaseFlavor};

/// Taps this small (in `‖·‖_max`) are trimmed from the window ends.
pub const TRIM_EPS: f64 = 1e-15;

type CMatrix = DMatrix<Complex<f64>>;

/// Finite-support sequence of real `T×S` matrices `h[n]`, `n ∈ [-L⁻, L⁺]`.
///
/// The window always contains `n = 0` (both `L⁻` and `L⁺` are nonnegative)
/// and is minimal: all-zero taps are trimmed from the ends on construction
/// until the window would no longer cover the support or the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixSeq {
    rows: usize,
    cols: usize,
    lo: usize,
    hi: usize,
    taps: Vec<DMatrix<f64>>,
}

impl MatrixSeq {
    /// Builds a sequence whose first tap sits at index `start` (may be
    /// negative). The window is padded to cover the origin and trimmed to
    /// canonical form.
    pub fn from_taps(start: i64, taps: Vec<DMatrix<f64>>) -> Result<Self> {
        let first = taps.first().ok_or_else(|| invalid("empty tap list"))?;
        let (rows, cols) = first.shape();
        if rows == 0 || cols == 0 {
            return Err(invalid("taps must be non-empty matrices"));
        }
        if taps.iter().any(|t| t.shape() != (rows, cols)) {
            return Err(invalid("all taps must share one shape"));
        }
        if taps.iter().any(|t| t.iter().any(|v| !v.is_finite())) {
            return Err(invalid("taps must be finite"));
        }

        let is_zero = |m: &DMatrix<f64>| m.iter().all(|v| v.abs() <= TRIM_EPS);
        let mut first_n = start;
        let mut taps = taps;
        // Trim leading zeros, then trailing ones.
        while taps.len() > 1 && is_zero(&taps[0]) {
            taps.remove(0);
            first_n += 1;
        }
        while taps.len() > 1 && is_zero(taps.last().unwrap()) {
            taps.pop();
        }
        if taps.len() == 1 && is_zero(&taps[0]) {
            // Canonical zero sequence.
            return Ok(Self {
                rows,
                cols,
                lo: 0,
                hi: 0,
                taps: vec![DMatrix::zeros(rows, cols)],
            });
        }
        let mut last_n = first_n + taps.len() as i64 - 1;
        // Pad so the window covers the origin.
        while first_n > 0 {
            taps.insert(0, DMatrix::zeros(rows, cols));
            first_n -= 1;
        }
        while last_n < 0 {
            taps.push(DMatrix::zeros(rows, cols));
            last_n += 1;
        }
        Ok(Self {
            rows,
            cols,
            lo: (-first_n) as usize,
            hi: last_n as usize,
            taps,
        })
    }

    /// The identity filter `δ[n]·I`.
    pub fn identity(channels: usize) -> Self {
        Self {
            rows: channels,
            cols: channels,
            lo: 0,
            hi: 0,
            taps: vec![DMatrix::identity(channels, channels)],
        }
    }

    /// A single tap `m` at index `n`.
    pub fn single(n: i64, m: DMatrix<f64>) -> Result<Self> {
        Self::from_taps(n, vec![m])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// `L⁻`: how far the window extends below zero.
    pub fn lo(&self) -> usize {
        self.lo
    }

    /// `L⁺`: how far the window extends above zero.
    pub fn hi(&self) -> usize {
        self.hi
    }

    /// Number of taps in the window, `L⁻ + L⁺ + 1`.
    pub fn len(&self) -> usize {
        self.taps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Tap at index `n`; zero outside the window.
    pub fn tap(&self, n: i64) -> DMatrix<f64> {
        let k = n + self.lo as i64;
        if k < 0 || k >= self.taps.len() as i64 {
            DMatrix::zeros(self.rows, self.cols)
        } else {
            self.taps[k as usize].clone()
        }
    }

    /// Iterates `(n, h[n])` over the stored window.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &DMatrix<f64>)> {
        let lo = self.lo as i64;
        self.taps.iter().enumerate().map(move |(k, t)| (k as i64 - lo, t))
    }

    /// Raw tap storage; `taps()[k]` is `h[k - L⁻]`.
    pub fn taps(&self) -> &[DMatrix<f64>] {
        &self.taps
    }

    /// `Σₙ ‖h[n]‖²_F`.
    pub fn energy(&self) -> f64 {
        self.taps.iter().map(|t| t.norm_squared()).sum()
    }

    /// Entry-wise scaling.
    pub fn scale(&self, s: f64) -> Self {
        let taps = self.taps.iter().map(|t| t * s).collect();
        Self::from_taps(-(self.lo as i64), taps).expect("scaled taps stay valid")
    }
}

/// Uniform evaluation grid `H(e^{iω_k})`, `ω_k = 2πk/K`.
///
/// For real taps the grid is conjugate-symmetric:
/// `H(e^{-iω}) = conj(H(e^{iω}))`.
#[derive(Debug, Clone)]
pub struct FreqGrid {
    values: Vec<CMatrix>,
}

impl FreqGrid {
    pub fn points(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[CMatrix] {
        &self.values
    }
}

/// Result of a paraunitarity test on a frequency grid.
#[derive(Debug, Clone, Copy)]
pub struct ParaunitaryCheck {
    pub passed: bool,
    /// `max_k ‖H(e^{iω_k})†H(e^{iω_k}) - I‖_max`.
    pub max_residual: f64,
}

pub(crate) fn to_complex(m: &DMatrix<f64>) -> CMatrix {
    m.map(|v| Complex::new(v, 0.0))
}

pub(crate) fn cmax_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, v| acc.max(v.norm()))
}

/// Evaluates `H(z) = Σₙ h[n] z⁻ⁿ` at one complex point.
///
/// `z = 0` is a pole whenever the window extends to positive indices.
pub fn eval_z(seq: &MatrixSeq, z: Complex<f64>) -> Result<CMatrix> {
    if z == Complex::new(0.0, 0.0) {
        if seq.hi() > 0 {
            return Err(Error::Pole(format!(
                "sequence has causal taps up to n = {}",
                seq.hi()
            )));
        }
        // Only powers z^{|n|}, n ≤ 0, survive; at z = 0 that leaves h[0].
        return Ok(to_complex(&seq.tap(0)));
    }
    // Horner in w = z⁻¹: H(z) = z^{L⁻} · Σ_k h_k w^k with h_k = taps[k].
    let w = z.inv();
    let mut acc = to_complex(&seq.taps[seq.taps.len() - 1]);
    for k in (0..seq.taps.len() - 1).rev() {
        acc = acc.map(|v| v * w) + to_complex(&seq.taps[k]);
    }
    let shift = z.powi(seq.lo() as i32);
    Ok(acc.map(|v| v * shift))
}

/// Samples `H` on the uniform `K`-point unit-circle grid.
pub fn freq_grid(seq: &MatrixSeq, points: usize) -> Result<FreqGrid> {
    if points == 0 {
        return Err(invalid("grid needs at least one point"));
    }
    let values = (0..points)
        .map(|k| {
            let omega = 2.0 * std::f64::consts::PI * k as f64 / points as f64;
            eval_z(seq, Complex::from_polar(1.0, omega))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FreqGrid { values })
}

/// Tap convolution of two sequences; the spectral product
/// `eval_z(seq_mul(a, b), z) = eval_z(a, z)·eval_z(b, z)`.
pub fn seq_mul(a: &MatrixSeq, b: &MatrixSeq) -> Result<MatrixSeq> {
    if a.cols() != b.rows() {
        return Err(invalid(format!(
            "inner dimensions differ: {}x{} · {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let lo = a.lo() + b.lo();
    let hi = a.hi() + b.hi();
    let (rows, inner, cols) = (a.rows(), a.cols(), b.cols());
    // Compensated accumulation: tap products of factored systems cancel
    // almost exactly, and plain summation would leave residue well above
    // one ulp.
    let mut taps = Vec::with_capacity(lo + hi + 1);
    for idx in 0..(lo + hi + 1) as i64 {
        let n = idx - lo as i64;
        let mut tap = DMatrix::zeros(rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                let mut acc = crate::numeric::Accumulator::default();
                for (m, am) in a.iter() {
                    let bm = n - m;
                    if bm < -(b.lo() as i64) || bm > b.hi() as i64 {
                        continue;
                    }
                    let bn = &b.taps()[(bm + b.lo() as i64) as usize];
                    for k in 0..inner {
                        acc.add_prod(am[(i, k)], bn[(k, j)]);
                    }
                }
                tap[(i, j)] = acc.value();
            }
        }
        taps.push(tap);
    }
    MatrixSeq::from_taps(-(lo as i64), taps)
}

/// Paraconjugate `H̃(z) = H(z⁻¹)ᵀ`: taps transposed and index-reflected,
/// `g[n] = h[-n]ᵀ`.
pub fn paraconjugate(seq: &MatrixSeq) -> MatrixSeq {
    let taps = seq.taps.iter().rev().map(|t| t.transpose()).collect();
    MatrixSeq::from_taps(-(seq.hi() as i64), taps).expect("reflection preserves validity")
}

/// Tests `H(e^{iω})†H(e^{iω}) = I` on a uniform grid.
///
/// The residual is a trigonometric polynomial of degree at most
/// `2(L⁻ + L⁺)`, so a grid of `2(L⁻+L⁺) + 1` points decides it exactly;
/// smaller requested grids are raised to that minimum.
pub fn is_paraunitary(seq: &MatrixSeq, grid_size: usize, tol: f64) -> ParaunitaryCheck {
    let min_grid = 2 * (seq.lo() + seq.hi()) + 1;
    let grid = freq_grid(seq, grid_size.max(min_grid)).expect("grid size >= 1");
    let id = CMatrix::identity(seq.cols(), seq.cols());
    let max_residual = grid
        .values()
        .iter()
        .map(|h| cmax_abs(&(h.adjoint() * h - &id)))
        .fold(0.0, f64::max);
    ParaunitaryCheck {
        passed: max_residual <= tol,
        max_residual,
    }
}

/// Spatial ridge-regularization residual
/// `Σᵢ ‖Σₙ h[n]ᵀ h[n-Ri] - δ[i]·I‖²_F`.
pub fn reg_residual_spatial(seq: &MatrixSeq, rate: usize) -> Result<f64> {
    if rate == 0 {
        return Err(invalid("rate must be >= 1"));
    }
    let span = (seq.lo() + seq.hi()) as i64;
    let r = rate as i64;
    let id = DMatrix::identity(seq.cols(), seq.cols());
    let mut total = 0.0;
    let max_i = span / r;
    for i in -max_i..=max_i {
        let mut d = DMatrix::zeros(seq.cols(), seq.cols());
        for (n, h) in seq.iter() {
            let other = seq.tap(n - r * i);
            d += h.transpose() * other;
        }
        if i == 0 {
            d -= &id;
        }
        total += d.norm_squared();
    }
    Ok(total)
}

/// Spectral form of the same residual: uniform-grid quadrature of
/// `(1/2π)∫ ‖H^{[R]}(e^{iω})† H^{[R]}(e^{iω}) - I‖²_F dω` over the stacked
/// polyphase matrix. The integrand has bounded trigonometric degree, so the
/// quadrature is exact once the grid reaches `4(L⁻+L⁺) + 1` points; smaller
/// requests are raised to that minimum.
pub fn reg_residual_spectral(seq: &MatrixSeq, rate: usize, grid_size: usize) -> Result<f64> {
    if rate == 0 {
        return Err(invalid("rate must be >= 1"));
    }
    let stacked = polyphase_matrix(seq, rate, PolyphaseFlavor::Stacked)?;
    let min_grid = 4 * (seq.lo() + seq.hi()) + 1;
    let grid = freq_grid(&stacked, grid_size.max(min_grid))?;
    let id = CMatrix::identity(seq.cols(), seq.cols());
    let sum: f64 = grid
        .values()
        .iter()
        .map(|h| (h.adjoint() * h - &id).norm_squared())
        .sum();
    Ok(sum / grid.points() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_seq(rng: &mut impl Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> MatrixSeq {
        let taps = (lo..=hi)
            .map(|_| DMatrix::from_fn(rows, cols, |_, _| rng.random_range(-1.0..1.0)))
            .collect();
        MatrixSeq::from_taps(lo, taps).unwrap()
    }

    fn unit_circle(k: usize, points: usize) -> Complex<f64> {
        Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / points as f64)
    }

    /// Naive term-by-term summation, the oracle for Horner evaluation.
    fn eval_naive(seq: &MatrixSeq, z: Complex<f64>) -> CMatrix {
        let mut acc = CMatrix::zeros(seq.rows(), seq.cols());
        for (n, h) in seq.iter() {
            let w = z.powi(-(n as i32));
            acc += to_complex(h).map(|v| v * w);
        }
        acc
    }

    #[test]
    fn canonical_window_covers_origin() {
        let m = DMatrix::identity(2, 2);
        let s = MatrixSeq::single(1, m.clone()).unwrap();
        assert_eq!((s.lo(), s.hi()), (0, 1));
        assert_eq!(s.tap(0), DMatrix::zeros(2, 2));
        assert_eq!(s.tap(1), m);

        let s = MatrixSeq::single(-2, DMatrix::identity(1, 1)).unwrap();
        assert_eq!((s.lo(), s.hi()), (2, 0));
    }

    #[test]
    fn trimming_removes_outer_zeros() {
        let z = DMatrix::zeros(2, 2);
        let m = DMatrix::identity(2, 2);
        let s = MatrixSeq::from_taps(-2, vec![z.clone(), m.clone(), z.clone()]).unwrap();
        assert_eq!((s.lo(), s.hi()), (1, 0));
        assert_eq!(s.tap(-1), m);
    }

    #[test]
    fn eval_identity_filter() {
        let s = MatrixSeq::identity(3);
        let z = Complex::new(0.3, -1.2);
        let h = eval_z(&s, z).unwrap();
        assert!(cmax_abs(&(h - CMatrix::identity(3, 3))) <= 1e-15);
    }

    #[test]
    fn eval_delay_at_i() {
        // h[1] = I, z = i: z⁻¹ = -i.
        let s = MatrixSeq::single(1, DMatrix::identity(2, 2)).unwrap();
        let h = eval_z(&s, Complex::new(0.0, 1.0)).unwrap();
        let expected = CMatrix::identity(2, 2).map(|v| v * Complex::new(0.0, -1.0));
        assert!(cmax_abs(&(h - expected)) <= 1e-15);
    }

    #[test]
    fn eval_matches_naive_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let s = random_seq(&mut rng, 3, 2, -3, 4);
        for k in 0..16 {
            let z = unit_circle(k, 16);
            let fast = eval_z(&s, z).unwrap();
            let slow = eval_naive(&s, z);
            assert!(cmax_abs(&(fast - slow)) <= 1e-13);
        }
    }

    #[test]
    fn eval_pole_at_zero() {
        let s = MatrixSeq::single(1, DMatrix::identity(1, 1)).unwrap();
        assert!(matches!(
            eval_z(&s, Complex::new(0.0, 0.0)),
            Err(Error::Pole(_))
        ));
        // Anticausal-only sequences are fine at z = 0.
        let s = MatrixSeq::single(-1, DMatrix::identity(1, 1)).unwrap();
        let h = eval_z(&s, Complex::new(0.0, 0.0)).unwrap();
        assert!(cmax_abs(&h) <= 1e-15);
    }

    #[test]
    fn seq_mul_identity_is_neutral() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let b = random_seq(&mut rng, 2, 2, -1, 2);
        let prod = seq_mul(&MatrixSeq::identity(2), &b).unwrap();
        assert_eq!(prod, b);
    }

    #[test]
    fn seq_mul_of_monomials() {
        let a = MatrixSeq::single(1, DMatrix::from_row_slice(1, 1, &[2.0])).unwrap();
        let b = MatrixSeq::single(1, DMatrix::from_row_slice(1, 1, &[3.0])).unwrap();
        let prod = seq_mul(&a, &b).unwrap();
        assert_eq!((prod.lo(), prod.hi()), (0, 2));
        assert_eq!(prod.tap(2)[(0, 0)], 6.0);
        assert_eq!(prod.tap(1)[(0, 0)], 0.0);
    }

    #[test]
    fn seq_mul_is_spectral_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let a = random_seq(&mut rng, 3, 2, -2, 1);
        let b = random_seq(&mut rng, 2, 4, -1, 3);
        let prod = seq_mul(&a, &b).unwrap();
        for k in 0..64 {
            let z = unit_circle(k, 64);
            let lhs = eval_z(&prod, z).unwrap();
            let rhs = eval_z(&a, z).unwrap() * eval_z(&b, z).unwrap();
            assert!(cmax_abs(&(lhs - rhs)) <= 1e-12);
        }
    }

    #[test]
    fn seq_mul_dimension_mismatch() {
        let a = MatrixSeq::identity(2);
        let b = MatrixSeq::identity(3);
        assert!(matches!(seq_mul(&a, &b), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn paraconjugate_fixes_symmetric_scalar() {
        let taps = vec![
            DMatrix::from_row_slice(1, 1, &[0.5]),
            DMatrix::from_row_slice(1, 1, &[1.0]),
            DMatrix::from_row_slice(1, 1, &[0.5]),
        ];
        let s = MatrixSeq::from_taps(-1, taps).unwrap();
        assert_eq!(paraconjugate(&s), s);
    }

    #[test]
    fn paraconjugate_moves_single_tap() {
        let m = DMatrix::from_row_slice(2, 3, &[1., 2., 3., 4., 5., 6.]);
        let s = MatrixSeq::single(1, m.clone()).unwrap();
        let g = paraconjugate(&s);
        assert_eq!((g.lo(), g.hi()), (1, 0));
        assert_eq!(g.tap(-1), m.transpose());
    }

    #[test]
    fn paraconjugate_is_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = random_seq(&mut rng, 3, 3, -2, 2);
        assert_eq!(paraconjugate(&paraconjugate(&s)), s);
    }

    #[test]
    fn gram_sequence_is_hermitian_in_n() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let s = random_seq(&mut rng, 3, 2, -1, 2);
        let d = seq_mul(&paraconjugate(&s), &s).unwrap();
        let span = (d.lo().max(d.hi())) as i64;
        for n in -span..=span {
            let diff = d.tap(-n) - d.tap(n).transpose();
            assert!(crate::ortho::max_abs(&diff) <= 1e-13);
        }
    }

    #[test]
    fn paraunitary_check_on_identity_and_scaled() {
        let check = is_paraunitary(&MatrixSeq::identity(4), 16, 1e-12);
        assert!(check.passed);
        assert_eq!(check.max_residual, 0.0);

        let scaled = MatrixSeq::identity(4).scale(2.0);
        let check = is_paraunitary(&scaled, 16, 1e-12);
        assert!(!check.passed);
        assert!((check.max_residual - 3.0).abs() <= 1e-12);
    }

    #[test]
    fn reg_residual_scalar_example() {
        let s = MatrixSeq::single(0, DMatrix::from_row_slice(1, 1, &[2.0])).unwrap();
        assert!((reg_residual_spatial(&s, 1).unwrap() - 9.0).abs() <= 1e-12);
        assert!((reg_residual_spectral(&s, 1, 8).unwrap() - 9.0).abs() <= 1e-12);
    }

    #[test]
    fn reg_residual_spatial_matches_spectral() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for rate in [1usize, 2, 4] {
            for _ in 0..20 {
                let s = random_seq(&mut rng, 3, 2, -2, 3);
                let spatial = reg_residual_spatial(&s, rate).unwrap();
                let spectral = reg_residual_spectral(&s, rate, 64).unwrap();
                let denom = spatial.abs().max(1e-30);
                assert!(
                    ((spatial - spectral) / denom).abs() <= 1e-10,
                    "rate {rate}: spatial {spatial} vs spectral {spectral}"
                );
            }
        }
    }

    #[test]
    fn freq_grid_conjugate_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = random_seq(&mut rng, 2, 2, -1, 2);
        let k = 12;
        let grid = freq_grid(&s, k).unwrap();
        for j in 1..k {
            let a = &grid.values()[k - j];
            let b = grid.values()[j].map(|v| v.conj());
            assert!(cmax_abs(&(a - b)) <= 1e-13);
        }
    }
}
