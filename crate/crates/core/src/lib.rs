//! Exact computation of the p-adic integral of |x² + u·y² − θ·z²|^s over
//! primitive vectors of ℤ_p³, for odd primes p.
//!
//! Everything is exact: volumes are rational numbers, the integral is a
//! rational function of t = q^{−s}, and evaluation at half-integer s lands in
//! the real quadratic field ℚ(√q). No floating point anywhere.
//!
//! The pipeline:
//! - [`padic`]: valuations, Legendre symbols, Hilbert symbols over ℚ_p.
//! - [`quadform`]: the form x² + u·y² − θ·z², its isotropy classification
//!   into canonical avatars, and the sign κ.
//! - [`volumes`]: shell volumes Vol(V_n⁰) by closed form per avatar and by an
//!   independent exhaustive counting oracle over (ℤ/pᵏ)³.
//! - [`sqrt_ext`]: exact arithmetic in ℚ(√q).
//! - [`zeta`]: the series Σ q^{−ns}·Vol(V_n⁰) as a rational function of t,
//!   its analytic continuation, and the closed-form value check at s = −3/2.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod padic;
pub mod poly;
pub mod quadform;
pub mod sqrt_ext;
pub mod volumes;
pub mod zeta;

pub use padic::{Coefficient, PadicError, Prime};
pub use quadform::{Avatar, AvatarTag, FormError, TernaryForm};
pub use sqrt_ext::SqrtExt;
pub use volumes::{TailModel, VolumeError, VolumeTable};
pub use zeta::{HalfInteger, LocalZeta, TheoremReport, ZetaError};
