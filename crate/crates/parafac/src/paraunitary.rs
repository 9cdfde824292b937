//! Construction of paraunitary systems from orthogonal-matrix parameters.
//!
//! The atomic factor is the degree-one projector block
//! `V(z; U) = (I - UUᵀ) + UUᵀ·z` for a column-orthogonal `U`; it is
//! paraunitary for every `U`, and every finite-length paraunitary system is
//! a product
//!
//! ```text
//! H(z) = V(z; U⁽⁻L⁻⁾) ··· V(z; U⁽⁻¹⁾) · Q · V(z⁻¹; U⁽¹⁾) ··· V(z⁻¹; U⁽L⁺⁾)
//! ```
//!
//! around a central orthogonal `Q`. [`build_1d`] realizes the product in the
//! tap domain. Choosing `U⁽⁻ℓ⁾ = Q·U⁽ℓ⁾` collapses every block pair, leaving
//! the single tap `Q` ([`init_reduced`]) — that is how named orthogonal
//! initializations seed a convolution. Two 1D systems compose into a
//! separable 2D system `H(z₁, z₂) = H₁(z₁)·H₂(z₂)` ([`build_2d`]).

use nalgebra::DMatrix;
use num_complex::Complex;
use rand::Rng;

use crate::error::{invalid, Result};
use crate::ortho::{column_ortho, exp_skew, ColumnOrtho, OrthoMatrix, SkewParams};
use crate::polymat::{cmax_abs, seq_mul, to_complex, MatrixSeq};

/// Which power of `z` carries the projector tap of a V-block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VDirection {
    /// `V(z; U)`: projector at `n = -1` (anticausal).
    Z,
    /// `V(z⁻¹; U)`: projector at `n = +1` (causal).
    ZInv,
}

/// Parameter set of one 1D paraunitary system: a central orthogonal `Q` and
/// column-orthogonal factors on the anticausal (`U⁽⁻ℓ⁾`) and causal (`U⁽ℓ⁾`)
/// sides. `neg_factors[ℓ-1]` is `U⁽⁻ℓ⁾`, `pos_factors[ℓ-1]` is `U⁽ℓ⁾`.
#[derive(Debug, Clone)]
pub struct ParaunitaryFactors {
    channels: usize,
    q: OrthoMatrix,
    neg_factors: Vec<ColumnOrtho>,
    pos_factors: Vec<ColumnOrtho>,
}

impl ParaunitaryFactors {
    pub fn new(
        q: OrthoMatrix,
        neg_factors: Vec<ColumnOrtho>,
        pos_factors: Vec<ColumnOrtho>,
    ) -> Result<Self> {
        let channels = q.dim();
        for u in neg_factors.iter().chain(pos_factors.iter()) {
            if u.rows() != channels {
                return Err(invalid(format!(
                    "factor has {} rows, expected {} (channel count)",
                    u.rows(),
                    channels
                )));
            }
        }
        Ok(Self {
            channels,
            q,
            neg_factors,
            pos_factors,
        })
    }

    /// Degree-zero system: the single tap `Q`.
    pub fn from_q(q: OrthoMatrix) -> Self {
        Self {
            channels: q.dim(),
            q,
            neg_factors: Vec::new(),
            pos_factors: Vec::new(),
        }
    }

    /// Uniformly random parameters: `Q = exp(A)` and each factor the leading
    /// `cols` columns of an independent exponential. `cols` defaults to
    /// `⌊channels/2⌋`.
    pub fn random(
        channels: usize,
        l_neg: usize,
        l_pos: usize,
        cols: Option<usize>,
        rng: &mut impl Rng,
    ) -> Result<Self> {
        let cols = cols.unwrap_or(channels / 2);
        if cols > channels {
            return Err(invalid(format!(
                "factor cols ({cols}) must not exceed channels ({channels})"
            )));
        }
        let q = exp_skew(&SkewParams::random_uniform(channels, rng))?;
        let neg_factors = (0..l_neg)
            .map(|_| column_ortho(&SkewParams::random_uniform(channels, rng), cols))
            .collect::<Result<_>>()?;
        let pos_factors = (0..l_pos)
            .map(|_| column_ortho(&SkewParams::random_uniform(channels, rng), cols))
            .collect::<Result<_>>()?;
        Self::new(q, neg_factors, pos_factors)
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn q(&self) -> &OrthoMatrix {
        &self.q
    }

    pub fn neg_factors(&self) -> &[ColumnOrtho] {
        &self.neg_factors
    }

    pub fn pos_factors(&self) -> &[ColumnOrtho] {
        &self.pos_factors
    }
}

/// The two-tap sequence of `V(z; U)` or `V(z⁻¹; U)`; always paraunitary.
///
/// A rank-zero `U` collapses the block to the identity filter; a full-rank
/// `U` makes it a pure shift of the projector structure. Both degenerate
/// cases shorten the realized support and are allowed.
pub fn v_block(u: &ColumnOrtho, direction: VDirection) -> MatrixSeq {
    let n = u.rows();
    let proj = crate::numeric::comp_gram_t(u.entries());
    let complement = DMatrix::identity(n, n) - &proj;
    let (start, taps) = match direction {
        VDirection::Z => (-1, vec![proj, complement]),
        VDirection::ZInv => (0, vec![complement, proj]),
    };
    MatrixSeq::from_taps(start, taps).expect("projector taps valid")
}

/// Realizes the factored product in the tap domain via [`seq_mul`],
/// left-to-right. The result has support inside `[-L⁻, L⁺]` and is
/// paraunitary by construction.
pub fn build_1d(factors: &ParaunitaryFactors) -> Result<MatrixSeq> {
    let mut acc = MatrixSeq::single(0, factors.q.entries().clone())?;
    // Left side multiplies down from V(z; U⁽⁻L⁻⁾) to V(z; U⁽⁻¹⁾).
    for u in factors.neg_factors.iter() {
        acc = seq_mul(&v_block(u, VDirection::Z), &acc)?;
    }
    for u in factors.pos_factors.iter() {
        acc = seq_mul(&acc, &v_block(u, VDirection::ZInv))?;
    }
    Ok(acc)
}

/// Builds the factor set with `U⁽⁻ℓ⁾ = Q·U⁽ℓ⁾`, so the realized system
/// collapses to the single tap `Q` and a convolution can be seeded with any
/// orthogonal initialization.
pub fn init_reduced(q: &OrthoMatrix, pos_factors: &[ColumnOrtho]) -> Result<ParaunitaryFactors> {
    let neg_factors = pos_factors
        .iter()
        .map(|u| {
            if u.rows() != q.dim() {
                return Err(invalid(format!(
                    "factor has {} rows, expected {}",
                    u.rows(),
                    q.dim()
                )));
            }
            ColumnOrtho::try_new(crate::numeric::comp_mul(q.entries(), u.entries()))
        })
        .collect::<Result<Vec<_>>>()?;
    ParaunitaryFactors::new(q.clone(), neg_factors, pos_factors.to_vec())
}

/// Two 1D systems with equal channel counts, composed separably per axis.
#[derive(Debug, Clone)]
pub struct Separable2D {
    horizontal: ParaunitaryFactors,
    vertical: ParaunitaryFactors,
}

impl Separable2D {
    pub fn new(horizontal: ParaunitaryFactors, vertical: ParaunitaryFactors) -> Result<Self> {
        if horizontal.channels() != vertical.channels() {
            return Err(invalid(format!(
                "channel counts differ: {} vs {}",
                horizontal.channels(),
                vertical.channels()
            )));
        }
        Ok(Self {
            horizontal,
            vertical,
        })
    }

    pub fn horizontal(&self) -> &ParaunitaryFactors {
        &self.horizontal
    }

    pub fn vertical(&self) -> &ParaunitaryFactors {
        &self.vertical
    }
}

/// 2D tap array `g[m, n] = h₁[m]·h₂[n]` of a separable system.
#[derive(Debug, Clone)]
pub struct Taps2d {
    channels: usize,
    lo: (i64, i64),
    taps: Vec<Vec<DMatrix<f64>>>,
}

impl Taps2d {
    pub fn channels(&self) -> usize {
        self.channels
    }

    /// Window starts `(-L₁⁻, -L₂⁻)`.
    pub fn lo(&self) -> (i64, i64) {
        self.lo
    }

    /// Window extents `(len₁, len₂)`.
    pub fn extent(&self) -> (usize, usize) {
        (self.taps.len(), self.taps[0].len())
    }

    pub fn tap(&self, m: i64, n: i64) -> DMatrix<f64> {
        let i = m - self.lo.0;
        let j = n - self.lo.1;
        if i < 0 || j < 0 || i >= self.taps.len() as i64 || j >= self.taps[0].len() as i64 {
            DMatrix::zeros(self.channels, self.channels)
        } else {
            self.taps[i as usize][j as usize].clone()
        }
    }

    /// `H(z₁, z₂) = Σ g[m,n] z₁⁻ᵐ z₂⁻ⁿ`.
    pub fn eval(&self, z1: Complex<f64>, z2: Complex<f64>) -> DMatrix<Complex<f64>> {
        let mut acc = DMatrix::zeros(self.channels, self.channels);
        for (i, row) in self.taps.iter().enumerate() {
            let m = self.lo.0 + i as i64;
            let w1 = z1.powi(-(m as i32));
            for (j, tap) in row.iter().enumerate() {
                let n = self.lo.1 + j as i64;
                let w = w1 * z2.powi(-(n as i32));
                acc += to_complex(tap).map(|v| v * w);
            }
        }
        acc
    }

    /// `max ‖H†H - I‖_max` over a `grid × grid` frequency lattice.
    pub fn unitarity_residual(&self, grid: usize) -> f64 {
        let id = DMatrix::<Complex<f64>>::identity(self.channels, self.channels);
        let mut worst: f64 = 0.0;
        for k1 in 0..grid {
            let z1 = unit_point(k1, grid);
            for k2 in 0..grid {
                let h = self.eval(z1, unit_point(k2, grid));
                worst = worst.max(cmax_abs(&(h.adjoint() * &h - &id)));
            }
        }
        worst
    }
}

fn unit_point(k: usize, grid: usize) -> Complex<f64> {
    Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / grid as f64)
}

/// Outer tap product of the two axis systems.
pub fn build_2d(sep: &Separable2D) -> Result<Taps2d> {
    let h1 = build_1d(sep.horizontal())?;
    let h2 = build_1d(sep.vertical())?;
    let taps = h1
        .taps()
        .iter()
        .map(|a| h2.taps().iter().map(|b| a * b).collect())
        .collect();
    Ok(Taps2d {
        channels: sep.horizontal().channels(),
        lo: (-(h1.lo() as i64), -(h2.lo() as i64)),
        taps,
    })
}
