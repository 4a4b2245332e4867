//! The diagonal ternary form x² + u·y² − θ·z² over ℚ_p, its classification
//! into canonical avatars, and the isotropy sign κ.
//!
//! θ is required to be a non-square so that K = ℚ_p(√θ) is a field. The form
//! is isotropic exactly when (θ, −u)_p = +1, i.e. when −u is a norm from K.
//! Up to unit-square scaling of u and θ (which preserves every shell volume)
//! an isotropic form is equivalent to one of three shapes, and an anisotropic
//! form to one of two; `classify` returns that canonical representative.

use core::fmt;

use crate::padic::{hilbert_symbol, legendre, Coefficient, PadicError, Prime};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormError {
    /// θ is a square in ℚ_p^×, so ℚ_p(√θ) is not a field.
    InvalidTheta,
    /// A coefficient violates its own invariants for this prime.
    Coefficient(PadicError),
}

impl fmt::Display for FormError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormError::InvalidTheta => {
                write!(f, "theta is a square in Q_p, so Q_p(sqrt theta) is not a field")
            }
            FormError::Coefficient(e) => write!(f, "invalid coefficient: {}", e),
        }
    }
}

impl From<PadicError> for FormError {
    fn from(e: PadicError) -> Self {
        FormError::Coefficient(e)
    }
}

/// The form x² + u·y² − θ·z² over ℚ_p together with its prime.
///
/// Invariants, enforced at construction: u and θ have valuation in {0, 1},
/// units coprime to p, and θ is a non-square (automatic for v(θ) = 1, a
/// Legendre-symbol condition for v(θ) = 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TernaryForm {
    p: Prime,
    u: Coefficient,
    theta: Coefficient,
}

impl TernaryForm {
    pub fn new(p: Prime, u: Coefficient, theta: Coefficient) -> Result<Self, FormError> {
        // Coefficients may have been built against a different prime;
        // re-validate coprimality against this one.
        let u = Coefficient::new(u.val() as i64, u.unit(), p)?;
        let theta = Coefficient::new(theta.val() as i64, theta.unit(), p)?;
        if theta.val() == 0 && legendre(theta.unit(), p) != -1 {
            return Err(FormError::InvalidTheta);
        }
        Ok(TernaryForm { p, u, theta })
    }

    pub fn from_raw(p: u64, u_val: i64, u_unit: i64, theta_val: i64, theta_unit: i64) -> Result<Self, FormError> {
        let p = Prime::new(p)?;
        let u = Coefficient::new(u_val, u_unit, p)?;
        let theta = Coefficient::new(theta_val, theta_unit, p)?;
        TernaryForm::new(p, u, theta)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn u(&self) -> Coefficient {
        self.u
    }

    pub fn theta(&self) -> Coefficient {
        self.theta
    }

    /// v(u·θ) ∈ {0, 1, 2}, so that |uθ| = q^{−v}.
    pub fn abs_utheta_val(&self) -> u8 {
        self.u.val() + self.theta.val()
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn term(f: &mut fmt::Formatter<'_>, coeff: i64, var: &str) -> fmt::Result {
            let sign = if coeff < 0 { '-' } else { '+' };
            let mag = coeff.unsigned_abs();
            if mag == 1 {
                write!(f, " {} {}^2", sign, var)
            } else {
                write!(f, " {} {}*{}^2", sign, mag, var)
            }
        }
        write!(f, "x^2")?;
        term(f, self.u.to_integer(self.p), "y")?;
        term(f, -self.theta.to_integer(self.p), "z")
    }
}

/// The canonical shapes of the form after the standard reductions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AvatarTag {
    /// A1: x² − y² − θ·z² with θ a unit non-square; |uθ| = 1.
    UnramifiedIsotropic,
    /// A2: x² + π·y² − π·z²; |uθ| = q^{−2}.
    RamifiedPiPi,
    /// A3: x² − y² − π·z²; |uθ| = q^{−1}.
    RamifiedPiMinusOne,
    /// B: anisotropic; the form omits no value of valuation ≥ 2 on
    /// primitive vectors, so only the shells n = 0, 1 are nonempty.
    Anisotropic,
}

impl AvatarTag {
    pub const ALL: [AvatarTag; 4] = [
        AvatarTag::UnramifiedIsotropic,
        AvatarTag::RamifiedPiPi,
        AvatarTag::RamifiedPiMinusOne,
        AvatarTag::Anisotropic,
    ];

    pub fn code(self) -> &'static str {
        match self {
            AvatarTag::UnramifiedIsotropic => "A1",
            AvatarTag::RamifiedPiPi => "A2",
            AvatarTag::RamifiedPiMinusOne => "A3",
            AvatarTag::Anisotropic => "B",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            AvatarTag::UnramifiedIsotropic => "unramified isotropic",
            AvatarTag::RamifiedPiPi => "ramified, u = theta = pi",
            AvatarTag::RamifiedPiMinusOne => "ramified, u = -1",
            AvatarTag::Anisotropic => "anisotropic",
        }
    }

    pub fn is_isotropic(self) -> bool {
        !matches!(self, AvatarTag::Anisotropic)
    }

    pub fn from_code(code: &str) -> Option<AvatarTag> {
        match code.to_ascii_uppercase().as_str() {
            "A1" => Some(AvatarTag::UnramifiedIsotropic),
            "A2" => Some(AvatarTag::RamifiedPiPi),
            "A3" => Some(AvatarTag::RamifiedPiMinusOne),
            "B" => Some(AvatarTag::Anisotropic),
            _ => None,
        }
    }

    /// The canonical representative used for avatar shortcuts:
    /// A1 → u = −1, θ = smallest unit non-square; A2 → u = θ = p;
    /// A3 → u = −1, θ = p; B → u = p, θ = smallest unit non-square.
    pub fn canonical_form(self, p: Prime) -> TernaryForm {
        let nonsquare = smallest_nonsquare_unit(p) as i64;
        let (u, theta) = match self {
            AvatarTag::UnramifiedIsotropic => {
                (Coefficient::unit_unchecked(-1), Coefficient::unit_unchecked(nonsquare))
            }
            AvatarTag::RamifiedPiPi => (Coefficient::uniformizer(), Coefficient::uniformizer()),
            AvatarTag::RamifiedPiMinusOne => {
                (Coefficient::unit_unchecked(-1), Coefficient::uniformizer())
            }
            AvatarTag::Anisotropic => {
                (Coefficient::uniformizer(), Coefficient::unit_unchecked(nonsquare))
            }
        };
        TernaryForm { p, u, theta }
    }
}

impl fmt::Display for AvatarTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Classification result: the avatar tag plus v(uθ) of the classified form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Avatar {
    tag: AvatarTag,
    abs_utheta_val: u8,
}

impl Avatar {
    pub fn tag(&self) -> AvatarTag {
        self.tag
    }

    /// v(uθ) of the input form: 0 for A1, 2 for A2, 1 for A3, and 1 or 2 for
    /// the two anisotropic subcases.
    pub fn abs_utheta_val(&self) -> u8 {
        self.abs_utheta_val
    }
}

impl fmt::Display for Avatar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.tag.code(), self.tag.describe())
    }
}

/// Smallest positive non-square residue mod p (1 is always a square, so the
/// scan starts at 2).
pub fn smallest_nonsquare_unit(p: Prime) -> u64 {
    (2..p.get())
        .find(|&a| legendre(a as i64, p) == -1)
        .expect("every odd prime has a non-square unit")
}

/// Smallest positive unit ε with −ε a non-square mod p, so that x² + ε·y²
/// is anisotropic mod p.
pub fn smallest_anisotropic_unit(p: Prime) -> u64 {
    (1..p.get())
        .find(|&e| legendre(-(e as i64), p) == -1)
        .expect("negation maps some unit onto a non-square")
}

/// The ramified-θ anisotropic canonical shape x² + ε·y² − p·z².
pub fn anisotropic_ramified_form(p: Prime) -> TernaryForm {
    TernaryForm {
        p,
        u: Coefficient::unit_unchecked(smallest_anisotropic_unit(p) as i64),
        theta: Coefficient::uniformizer(),
    }
}

/// Classify a form into its avatar and return the equivalent canonical
/// representative.
///
/// Isotropy is decided by (θ, −u)_p = +1; the case split below realizes that
/// criterion through the norm-group description of ℚ_p(√θ). The canonical
/// form normalizes the uniformizer to p and the unit parts to the fixed
/// representatives of [`AvatarTag::canonical_form`]; shell volumes depend
/// only on the avatar, so the normalization is volume-preserving.
pub fn classify(form: &TernaryForm) -> (Avatar, TernaryForm) {
    let p = form.p;
    let input_val = form.abs_utheta_val();
    let tag = match (form.theta.val(), form.u.val()) {
        // Unramified K: the norm group contains every unit, so any unit u
        // gives an isotropic form, while v(u) = 1 never does.
        (0, 0) => AvatarTag::UnramifiedIsotropic,
        (0, 1) => AvatarTag::Anisotropic,
        // Ramified K: the norm group is (−θ)^ℤ·(units²), so isotropy means
        // −u ∈ units² (shape A3) or u ∈ θ·units² (shape A2).
        (1, 0) => {
            if legendre(-form.u.unit(), p) == 1 {
                AvatarTag::RamifiedPiMinusOne
            } else {
                AvatarTag::Anisotropic
            }
        }
        (1, 1) => {
            if legendre(form.u.unit(), p) == legendre(form.theta.unit(), p) {
                AvatarTag::RamifiedPiPi
            } else {
                AvatarTag::Anisotropic
            }
        }
        _ => unreachable!("coefficient valuations are restricted to {{0, 1}}"),
    };
    debug_assert_eq!(
        tag.is_isotropic(),
        hilbert_symbol(&form.theta, &-form.u, p) == 1,
        "case analysis must agree with the Hilbert-symbol criterion"
    );
    let canonical = if tag == AvatarTag::Anisotropic && form.theta.val() == 1 {
        anisotropic_ramified_form(p)
    } else {
        tag.canonical_form(p)
    };
    (
        Avatar {
            tag,
            abs_utheta_val: input_val,
        },
        canonical,
    )
}

/// κ(form): +1 for isotropic forms, −1 for anisotropic ones. Coincides with
/// hilbert_symbol(θ, −u).
pub fn kappa(form: &TernaryForm) -> i8 {
    if classify(form).0.tag().is_isotropic() {
        1
    } else {
        -1
    }
}
