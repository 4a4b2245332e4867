//! The integral I_s(u, θ) = Σ_n q^{−ns}·Vol(V_n⁰) as an exact rational
//! function of t = q^{−s}.
//!
//! Volume sequences are eventually geometric, so the series sums in closed
//! form to num(t)/den(t). Inside the half-plane of convergence this equals
//! the defining series; outside, evaluating the reduced rational function is
//! the analytic continuation. At half-integer s the point t = q^{−s} lies in
//! ℚ(√q) and everything stays exact.

use alloc::vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::RatPoly;
use crate::quadform::{classify, Avatar, TernaryForm};
use crate::sqrt_ext::SqrtExt;
use crate::volumes::{q_pow, TailModel, VolumeTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZetaError {
    /// No suffix of the supplied entries fits an exact geometric model.
    NoGeometricTail,
    /// The denominator vanishes at the evaluation point.
    PoleAtPoint,
    /// s must be rational with denominator 1 or 2 so that q^{−s} ∈ ℚ(√q).
    UnsupportedExponent { num: i64, den: i64 },
    /// The table does not determine Vol(V_n⁰) for some requested n.
    InsufficientEntries { needed: u32, have: u32 },
    /// Closed-form summation requires a tail model on the table.
    MissingTail,
}

impl fmt::Display for ZetaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZetaError::NoGeometricTail => {
                write!(f, "no geometric tail among the provided entries")
            }
            ZetaError::PoleAtPoint => write!(f, "the zeta function has a pole at this point"),
            ZetaError::UnsupportedExponent { num, den } => write!(
                f,
                "s = {}/{} needs q^{{1/{}}}; only half-integers are supported",
                num, den, den
            ),
            ZetaError::InsufficientEntries { needed, have } => write!(
                f,
                "table determines {} entries but n = {} was requested",
                have, needed
            ),
            ZetaError::MissingTail => {
                write!(f, "volume table has no tail model; fit one with detect_tail")
            }
        }
    }
}

/// An exponent s = num/den with den ∈ {1, 2}, the exact points where q^{−s}
/// lies in ℚ(√q).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfInteger {
    num: i64,
    den: i64,
}

impl HalfInteger {
    pub fn new(num: i64, den: i64) -> Result<Self, ZetaError> {
        if den == 0 {
            return Err(ZetaError::UnsupportedExponent { num, den });
        }
        let g = gcd_i64(num.unsigned_abs(), den.unsigned_abs()) as i64;
        let sign = if den < 0 { -1 } else { 1 };
        let (num, den) = (sign * num / g, sign * den / g);
        if den > 2 {
            return Err(ZetaError::UnsupportedExponent { num, den });
        }
        Ok(HalfInteger { num, den })
    }

    pub fn minus_three_halves() -> Self {
        HalfInteger { num: -3, den: 2 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    /// t = q^{−s} as an element of ℚ(√q).
    pub fn t_value(&self, q: u64) -> SqrtExt {
        // q^{−s} = q^{m/2} with m = −2s·... : m = −num·(2/den)
        let m = -self.num * (2 / self.den);
        SqrtExt::q_pow_half(q, m)
    }

    /// t² = q^{−2s}, always rational.
    fn t_squared(&self, q: u64) -> BigRational {
        q_pow(q, -self.num * (2 / self.den))
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd_i64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// Fit the least n₀ with exact (A, ρ) such that entry(n) = A·ρⁿ for every
/// provided n ≥ n₀, requiring at least three consecutive entries in the tail.
/// An all-zero suffix yields (A, ρ) = (0, 0).
pub fn detect_tail(entries: &[BigRational]) -> Result<TailModel, ZetaError> {
    let len = entries.len();
    for start in 0..len.saturating_sub(2) {
        let tail = &entries[start..];
        if tail.iter().all(|v| v.is_zero()) {
            return Ok(TailModel {
                coeff: BigRational::zero(),
                ratio: BigRational::zero(),
                start: start as u32,
            });
        }
        if tail.iter().any(|v| v.is_zero()) {
            continue;
        }
        let ratio = &tail[1] / &tail[0];
        if tail.windows(2).all(|w| &w[1] / &w[0] == ratio) {
            let coeff = &tail[0] / ratio.pow(start as i32);
            return Ok(TailModel {
                coeff,
                ratio,
                start: start as u32,
            });
        }
    }
    Err(ZetaError::NoGeometricTail)
}

/// I_s as a reduced rational function of t = q^{−s}, with the convergence
/// region recorded as a bound on |t|.
///
/// Internally num/den are reduced with a monic denominator, which makes the
/// representation unique and equality literal.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalZeta {
    q: u64,
    num: RatPoly,
    den: RatPoly,
    t_radius: Option<BigRational>,
}

impl LocalZeta {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn num(&self) -> &RatPoly {
        &self.num
    }

    pub fn den(&self) -> &RatPoly {
        &self.den
    }

    /// The series Σ vol(n)·tⁿ converges for |t| < this bound; `None` means
    /// everywhere (finite support).
    pub fn t_radius(&self) -> Option<&BigRational> {
        self.t_radius.as_ref()
    }

    /// num(t)/den(t) at t = q^{−s}, computed exactly in ℚ(√q). Outside the
    /// convergence region this is the analytic continuation of the series.
    pub fn evaluate(&self, s: HalfInteger) -> Result<SqrtExt, ZetaError> {
        let t = s.t_value(self.q);
        let den = self.den.eval_ext(&t);
        if den.is_zero() {
            return Err(ZetaError::PoleAtPoint);
        }
        Ok(&self.num.eval_ext(&t) / &den)
    }

    /// Whether t = q^{−s} lies strictly inside the convergence region.
    pub fn converges_at(&self, s: HalfInteger) -> bool {
        match &self.t_radius {
            None => true,
            // t > 0, radius > 0: compare t² against radius² exactly.
            Some(r) => s.t_squared(self.q) < r * r,
        }
    }

    /// Render as `num/den` with denominators cleared to coprime integer
    /// coefficients and den(0) > 0, e.g. `(27 - t)/(27 - 9*t)`; a polynomial
    /// (den = 1) is rendered with its exact rational coefficients.
    pub fn display_cleared(&self) -> alloc::string::String {
        use alloc::format;
        if self.den.is_one() {
            return self.num.display("t");
        }
        let mut lambda = self.num.joint_integer_scaling(&self.den);
        if self.den.eval_rational(&BigRational::zero()).is_negative()
            != lambda.is_negative()
        {
            lambda = -lambda;
        }
        format!(
            "({})/({})",
            self.num.scale(&lambda).display("t"),
            self.den.scale(&lambda).display("t")
        )
    }
}

impl fmt::Display for LocalZeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_cleared())
    }
}

/// Sum the table in closed form:
///
/// ```text
/// num/den = Σ_{n < n₀} vol(n)·tⁿ + A·(ρt)^{n₀}/(1 − ρt),
/// ```
///
/// reduced to lowest terms. Requires the table's tail model.
pub fn closed_form_zeta(table: &VolumeTable) -> Result<LocalZeta, ZetaError> {
    let tail = table.tail().ok_or(ZetaError::MissingTail)?;
    let head = RatPoly::from_coeffs(table.entries()[..tail.start as usize].to_vec());
    let den = RatPoly::from_coeffs(vec![BigRational::one(), -tail.ratio.clone()]);
    // A·ρ^{n₀}·t^{n₀}
    let mut lead_coeffs = vec![BigRational::zero(); tail.start as usize + 1];
    lead_coeffs[tail.start as usize] = &tail.coeff * tail.ratio.pow(tail.start as i32);
    let num = &(&head * &den) + &RatPoly::from_coeffs(lead_coeffs);
    let t_radius = if tail.ratio.is_zero() {
        None
    } else {
        Some(tail.ratio.recip())
    };
    Ok(reduce(table.q(), num, den, t_radius))
}

fn reduce(q: u64, num: RatPoly, den: RatPoly, t_radius: Option<BigRational>) -> LocalZeta {
    let g = RatPoly::gcd(&num, &den);
    let (num, num_rem) = num.div_rem(&g);
    let (den, den_rem) = den.div_rem(&g);
    debug_assert!(num_rem.is_zero() && den_rem.is_zero());
    let lead_inv = den
        .leading()
        .expect("denominator of a zeta function is nonzero")
        .recip();
    let num = num.scale(&lead_inv);
    let den = den.scale(&lead_inv);
    debug_assert!(!den.eval_rational(&BigRational::zero()).is_zero());
    LocalZeta {
        q,
        num,
        den,
        t_radius,
    }
}

/// Exact partial sum of the defining series together with the convergence
/// report for the chosen s.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesPartial {
    pub value: SqrtExt,
    /// Whether s lies inside the convergence region; `None` when the table
    /// has no tail model to decide with.
    pub in_region: Option<bool>,
}

/// Σ_{n ≤ n_max} vol(n)·tⁿ at t = q^{−s}, exactly in ℚ(√q).
///
/// Entries beyond the listed ones are taken from the tail model when
/// present; the partial sum itself is always finite and exact, even where
/// the full series diverges.
pub fn series_partial(
    table: &VolumeTable,
    s: HalfInteger,
    n_max: u32,
) -> Result<SeriesPartial, ZetaError> {
    let q = table.q();
    let t = s.t_value(q);
    let mut acc = SqrtExt::zero(q);
    let mut t_pow = SqrtExt::one(q);
    for n in 0..=n_max {
        let vol = table.vol(n).ok_or(ZetaError::InsufficientEntries {
            needed: n,
            have: table.entries().len() as u32,
        })?;
        acc = &acc + &(&SqrtExt::from_rational(q, vol) * &t_pow);
        t_pow = &t_pow * &t;
    }
    let in_region = table.tail().map(|tail| {
        // ρ·t < 1 with both sides nonnegative: compare ρ²·t² < 1.
        &tail.ratio * &tail.ratio * s.t_squared(q) < BigRational::one()
    });
    Ok(SeriesPartial {
        value: acc,
        in_region,
    })
}

/// −κ·q^{−1/2}·(1 + q^{−1/2} + q^{−1}) as an exact element of ℚ(√q).
pub fn theorem_rhs(q: u64, kappa: i8) -> SqrtExt {
    // q^{−1/2} + q^{−1} + q^{−3/2} = 1/q + (1/q + 1/q²)·√q
    let magnitude = SqrtExt::new(q, q_pow(q, -1), q_pow(q, -1) + q_pow(q, -2));
    if kappa >= 0 {
        -magnitude
    } else {
        magnitude
    }
}

/// Outcome of the closed-form value check at s = −3/2.
#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub avatar: Avatar,
    pub canonical: TernaryForm,
    pub kappa: i8,
    pub lhs: SqrtExt,
    pub rhs: SqrtExt,
    pub pass: bool,
}

/// Verify that |uθ|^{1/2}·I_s at s = −3/2 equals −κ·q^{−1/2}(1 + q^{−1/2} + q^{−1}).
///
/// The left side is assembled from the closed-form volume table of the
/// form's avatar, continued to s = −3/2, and scaled by |uθ|^{1/2} of the
/// canonical form (the table and the scale must refer to the same
/// representative). Equality is exact in ℚ(√q); no tolerance.
pub fn theorem_check(form: &TernaryForm) -> TheoremReport {
    let (avatar, canonical) = classify(form);
    let q = form.prime().get();
    let table = VolumeTable::closed_form(avatar.tag(), q, 4);
    let zeta = closed_form_zeta(&table).expect("closed-form tables carry a tail");
    let value = zeta
        .evaluate(HalfInteger::minus_three_halves())
        .expect("den(t) = t - q has no root at t = q^{3/2}");
    let scale = SqrtExt::q_pow_half(q, -(canonical.abs_utheta_val() as i64));
    let lhs = &scale * &value;
    let kappa = if avatar.tag().is_isotropic() { 1 } else { -1 };
    let rhs = theorem_rhs(q, kappa);
    let pass = lhs == rhs;
    TheoremReport {
        avatar,
        canonical,
        kappa,
        lhs,
        rhs,
        pass,
    }
}
