//! Up-sampling, polyphase components, and polyphase matrices.
//!
//! For a rate `R`, the polyphase components of a sequence are its phase-wise
//! down-samplings `x^{[r|R]}[n] = x[nR + r]`; stacking `R` consecutive
//! components gives the polyphase matrix. Three identities tie the pieces
//! together and are exercised by the tests here:
//!
//! - up-sampling: `X^{↑R}(z) = X(z^R)`;
//! - decomposition: `X(z) = Σ_r X^{[r|R]}(z^R)·z^{-r}`;
//! - Parseval: `‖x‖² = (1/2π)∫‖X^{[R]}(e^{iω})‖² dω`.
//!
//! Phase indices are arbitrary integers via the shift relation
//! `x^{[(r+kR)|R]}[n] = x^{[r|R]}[n+k]`; [`polyphase_split`] normalizes them
//! into `[0, R)`.

use nalgebra::DMatrix;

use crate::error::{invalid, Result};
use crate::polymat::{freq_grid, MatrixSeq};

/// The `R` polyphase components of one sequence, phases `0..R`.
#[derive(Debug, Clone)]
pub struct PolyphaseSet {
    rate: usize,
    components: Vec<MatrixSeq>,
}

impl PolyphaseSet {
    pub fn rate(&self) -> usize {
        self.rate
    }

    pub fn components(&self) -> &[MatrixSeq] {
        &self.components
    }

    pub fn component(&self, r: usize) -> &MatrixSeq {
        &self.components[r]
    }

    /// Re-interleaves the components: `x[nR + r] = x^{[r|R]}[n]`. Exact — an
    /// integer index permutation.
    pub fn interleave(&self) -> MatrixSeq {
        let rate = self.rate as i64;
        let mut lo = 0i64;
        let mut hi = 0i64;
        for (r, c) in self.components.iter().enumerate() {
            lo = lo.min(-(c.lo() as i64) * rate + r as i64);
            hi = hi.max(c.hi() as i64 * rate + r as i64);
        }
        let rows = self.components[0].rows();
        let cols = self.components[0].cols();
        let mut taps = vec![DMatrix::zeros(rows, cols); (hi - lo + 1) as usize];
        for (r, c) in self.components.iter().enumerate() {
            for (n, t) in c.iter() {
                taps[(n * rate + r as i64 - lo) as usize] = t.clone();
            }
        }
        MatrixSeq::from_taps(lo, taps).expect("interleaved taps valid")
    }
}

/// Which polyphase matrix to build from a filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyphaseFlavor {
    /// `H^{[R]}(z)`: components `H^{[r|R]}` stacked as block rows, `RT×S`.
    Stacked,
    /// `H̃^{[R]}(z)`: components `H^{[-r|R]}` side by side as block columns,
    /// `T×RS`.
    Reflected,
}

/// Zero insertion: `x^{↑R}[n] = x[n/R]` when `R | n`, else `0`.
pub fn upsample(seq: &MatrixSeq, rate: usize) -> Result<MatrixSeq> {
    if rate == 0 {
        return Err(invalid("rate must be >= 1"));
    }
    if rate == 1 {
        return Ok(seq.clone());
    }
    let r = rate as i64;
    let lo = -(seq.lo() as i64) * r;
    let len = (seq.lo() + seq.hi()) as i64 * r + 1;
    let mut taps = vec![DMatrix::zeros(seq.rows(), seq.cols()); len as usize];
    for (n, t) in seq.iter() {
        taps[(n * r - lo) as usize] = t.clone();
    }
    MatrixSeq::from_taps(lo, taps)
}

/// A single polyphase component `x^{[r|R]}[n] = x[nR + r]` for any integer
/// phase `r`.
pub fn polyphase_component(seq: &MatrixSeq, r: i64, rate: usize) -> Result<MatrixSeq> {
    if rate == 0 {
        return Err(invalid("rate must be >= 1"));
    }
    let rr = rate as i64;
    // nR + r ∈ [-lo, hi]  ⇔  n ∈ [ceil((-lo - r)/R), floor((hi - r)/R)]
    let n_min = div_ceil(-(seq.lo() as i64) - r, rr);
    let n_max = div_floor(seq.hi() as i64 - r, rr);
    if n_min > n_max {
        return Ok(zero_like(seq));
    }
    let taps = (n_min..=n_max).map(|n| seq.tap(n * rr + r)).collect();
    MatrixSeq::from_taps(n_min, taps)
}

/// Splits into the `R` components with phases normalized into `[0, R)`.
pub fn polyphase_split(seq: &MatrixSeq, rate: usize) -> Result<PolyphaseSet> {
    if rate == 0 {
        return Err(invalid("rate must be >= 1"));
    }
    let components = (0..rate)
        .map(|r| polyphase_component(seq, r as i64, rate))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyphaseSet { rate, components })
}

/// Builds the stacked (`RT×S`) or reflected (`T×RS`) polyphase matrix, with
/// the reflected index convention `H^{[-r|R]}[m] = h[mR - r]`.
pub fn polyphase_matrix(
    filter: &MatrixSeq,
    rate: usize,
    flavor: PolyphaseFlavor,
) -> Result<MatrixSeq> {
    if rate == 0 {
        return Err(invalid("rate must be >= 1"));
    }
    let (t, s) = (filter.rows(), filter.cols());
    let lo = filter.lo() as i64;
    let hi = filter.hi() as i64;
    let rr = rate as i64;
    match flavor {
        PolyphaseFlavor::Stacked => {
            // Tap m holds h[mR + r] in block row r.
            let m_min = div_floor(-lo, rr);
            let m_max = div_floor(hi, rr);
            let taps = (m_min..=m_max)
                .map(|m| {
                    let mut block = DMatrix::zeros(rate * t, s);
                    for r in 0..rate {
                        let h = filter.tap(m * rr + r as i64);
                        block.view_mut((r * t, 0), (t, s)).copy_from(&h);
                    }
                    block
                })
                .collect();
            MatrixSeq::from_taps(m_min, taps)
        }
        PolyphaseFlavor::Reflected => {
            // Tap m holds h[mR - r] in block column r.
            let m_min = div_ceil(-lo, rr);
            let m_max = div_ceil(hi, rr);
            let taps = (m_min..=m_max)
                .map(|m| {
                    let mut block = DMatrix::zeros(t, rate * s);
                    for r in 0..rate {
                        let h = filter.tap(m * rr - r as i64);
                        block.view_mut((0, r * s), (t, s)).copy_from(&h);
                    }
                    block
                })
                .collect();
            MatrixSeq::from_taps(m_min, taps)
        }
    }
}

/// Parseval pair: `(Σₙ‖x[n]‖², quadrature of (1/2π)∫‖X^{[R]}(e^{iω})‖²dω)`.
///
/// The integrand is a trigonometric polynomial, so the uniform grid is an
/// exact quadrature once it has `2(L⁻+L⁺) + 1` points; smaller requests are
/// raised to that minimum.
pub fn parseval_check(seq: &MatrixSeq, rate: usize, grid_size: usize) -> Result<(f64, f64)> {
    let spatial = seq.energy();
    let stacked = polyphase_matrix(seq, rate, PolyphaseFlavor::Stacked)?;
    let min_grid = 2 * (seq.lo() + seq.hi()) + 1;
    let grid = freq_grid(&stacked, grid_size.max(min_grid))?;
    let spectral: f64 =
        grid.values().iter().map(|m| m.norm_squared()).sum::<f64>() / grid.points() as f64;
    Ok((spatial, spectral))
}

fn zero_like(seq: &MatrixSeq) -> MatrixSeq {
    MatrixSeq::from_taps(0, vec![DMatrix::zeros(seq.rows(), seq.cols())])
        .expect("zero tap valid")
}

fn div_floor(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -(-a).div_euclid(b)
}
