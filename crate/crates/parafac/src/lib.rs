//! Provably orthogonal convolution operators via paraunitary spectral
//! factorization.
//!
//! A convolutional layer is orthogonal (norm-preserving on every input) if
//! and only if its transfer matrix `H(z)` is *paraunitary*: unitary at every
//! frequency on the unit circle. Any finite-length paraunitary system admits
//! a complete factorization into degree-one projector blocks
//! `V(z; U) = (I - UUᵀ) + UUᵀ·z` around a central orthogonal matrix `Q`, so
//! exactly orthogonal convolutions can be *constructed* (not regularized or
//! projected) from unconstrained parameters.
//!
//! The crate is organized along that pipeline:
//!
//! - [`ortho`] — unconstrained parameters → (column-)orthogonal matrices
//!   (matrix exponential, Cayley transform, Björck iteration) plus named
//!   initialization schemes.
//! - [`polymat`] — polynomial-matrix algebra: finite tap sequences,
//!   Z-transform evaluation, paraconjugation, paraunitarity checks, and the
//!   spatial/spectral ridge-regularization identity.
//! - [`multirate`] — up-sampling, polyphase components and matrices, and
//!   their Parseval identities.
//! - [`paraunitary`] — V-blocks, the complete 1D factorization, separable
//!   2D systems, and the reduction used to initialize a system to a plain
//!   orthogonal matrix.
//! - [`conv`] — standard / dilated / strided / group convolutions on
//!   circular signals, orthogonal constructions for every variant, a dense
//!   block-circulant oracle, frame-wise singular-value clipping, and
//!   norm-ratio verification.
//! - [`lipnet`] — 1-Lipschitz building blocks: GroupSort, additive and
//!   concatenative residual blocks, output margins with certified radii,
//!   and an empirical Lipschitz probe.
//! - [`io`] — bit-exact JSON (+ base64 or sidecar binary) serialization for
//!   tap sequences, signals, factor sets, convolution specs, and reports.
//!
//! Monte-Carlo verification (random trials, oracle columns, sweep cells)
//! runs data-parallel under the default `parallel` feature; disable default
//! features for a fully sequential build.

pub mod conv;
pub mod error;
pub mod io;
pub mod lipnet;
pub mod multirate;
pub mod ortho;
pub mod paraunitary;
pub mod polymat;

mod numeric;
mod par;

pub use error::{Error, Result};
