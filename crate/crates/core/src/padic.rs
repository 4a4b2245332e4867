//! Exact arithmetic predicates over ℚ_p for odd p: valuations, quadratic
//! residues, Hilbert symbols.
//!
//! Throughout, q denotes the size of the residue field; for ℚ_p this is p
//! itself, and the absolute value is normalized by |p| = 1/q.

use core::fmt;
use core::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Errors from constructing or operating on p-adic data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PadicError {
    /// The modulus is not a prime number.
    NotPrime(u64),
    /// p = 2 is excluded; the residual characteristic must be odd.
    EvenPrime,
    /// The p-adic valuation of zero is +∞ and not representable.
    ZeroInput,
    /// A coefficient's unit part is divisible by p.
    NotAUnit { unit: i64, p: u64 },
    /// A coefficient valuation outside {0, 1}.
    BadValuation(i64),
}

impl fmt::Display for PadicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicError::NotPrime(n) => write!(f, "{} is not prime", n),
            PadicError::EvenPrime => write!(f, "p must be an odd prime (p = 2 is excluded)"),
            PadicError::ZeroInput => write!(f, "the valuation of 0 is infinite"),
            PadicError::NotAUnit { unit, p } => {
                write!(f, "unit part {} is divisible by p = {}", unit, p)
            }
            PadicError::BadValuation(v) => {
                write!(f, "coefficient valuation {} outside {{0, 1}}", v)
            }
        }
    }
}

/// An odd prime p ≥ 3, the residual characteristic of F = ℚ_p.
///
/// Primality is checked deterministically at construction, so a `Prime`
/// value is always trustworthy downstream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self, PadicError> {
        if !is_prime(p) {
            return Err(PadicError::NotPrime(p));
        }
        if p == 2 {
            return Err(PadicError::EvenPrime);
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// The residue field size q; equals p for F = ℚ_p.
    pub fn q(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic trial-division primality test; exact for all u64 inputs we
/// accept (coefficient enumeration caps p well below the 32-bit range).
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// A p-adic number unit·p^val with valuation restricted to {0, 1}.
///
/// This is the shape of the coefficients u and θ after the standard
/// reduction: classification only sees the unit's residue mod p, while the
/// counting oracle uses the exact integer unit mod pᵏ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coefficient {
    val: u8,
    unit: i64,
}

impl Coefficient {
    pub fn new(val: i64, unit: i64, p: Prime) -> Result<Self, PadicError> {
        if val != 0 && val != 1 {
            return Err(PadicError::BadValuation(val));
        }
        if unit == 0 || unit.rem_euclid(p.get() as i64) == 0 {
            return Err(PadicError::NotAUnit { unit, p: p.get() });
        }
        Ok(Coefficient {
            val: val as u8,
            unit,
        })
    }

    /// The uniformizer π = p itself (valuation 1, unit 1).
    pub fn uniformizer() -> Self {
        Coefficient { val: 1, unit: 1 }
    }

    /// A unit coefficient (valuation 0). The caller guarantees coprimality;
    /// use [`Coefficient::new`] for validated construction.
    pub(crate) fn unit_unchecked(unit: i64) -> Self {
        Coefficient { val: 0, unit }
    }

    pub fn val(&self) -> u8 {
        self.val
    }

    pub fn unit(&self) -> i64 {
        self.unit
    }

    /// Residue of the unit part in [1, p−1].
    pub fn unit_residue(&self, p: Prime) -> u64 {
        self.unit.rem_euclid(p.get() as i64) as u64
    }

    /// The element unit·p^val reduced mod pᵏ, for the counting oracle.
    pub fn residue_mod(&self, p: Prime, k: u32) -> u64 {
        let m = p.get().pow(k);
        let u = self.unit.rem_euclid(m as i64) as u128;
        let pv = if self.val == 0 { 1u128 } else { p.get() as u128 };
        ((u * pv) % m as u128) as u64
    }

    /// The exact integer value unit·p^val (for display).
    pub fn to_integer(&self, p: Prime) -> i64 {
        if self.val == 0 {
            self.unit
        } else {
            self.unit * p.get() as i64
        }
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;

    fn neg(self) -> Coefficient {
        Coefficient {
            val: self.val,
            unit: -self.unit,
        }
    }
}

/// p-adic valuation v(x) of a nonzero rational: x = p^v·(a/b) with p ∤ ab,
/// so that |x| = q^{−v}.
pub fn valuation(x: &BigRational, p: Prime) -> Result<i64, PadicError> {
    if x.is_zero() {
        return Err(PadicError::ZeroInput);
    }
    Ok(int_valuation(x.numer(), p) - int_valuation(x.denom(), p))
}

fn int_valuation(n: &BigInt, p: Prime) -> i64 {
    let p = BigInt::from(p.get());
    let mut n = n.abs();
    let mut v = 0i64;
    loop {
        let (div, rem) = (&n / &p, &n % &p);
        if !rem.is_zero() {
            return v;
        }
        n = div;
        v += 1;
    }
}

/// Legendre symbol (a | p): +1 for a nonzero square mod p, −1 for a
/// non-square, 0 when p | a.
///
/// For odd p a unit of ℤ_p is a square iff its residue is, so this also
/// decides squareness in ℤ_p^×.
pub fn legendre(a: i64, p: Prime) -> i8 {
    let m = p.get();
    let r = a.rem_euclid(m as i64) as u64;
    if r == 0 {
        return 0;
    }
    // Euler's criterion: a^{(p-1)/2} ≡ ±1 mod p.
    if mod_pow(r, (m - 1) / 2, m) == 1 {
        1
    } else {
        -1
    }
}

pub(crate) fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut base = base as u128 % m as u128;
    let mut acc = 1u128;
    let m = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc as u64
}

pub(crate) fn mod_inverse(a: u64, p: Prime) -> u64 {
    mod_pow(a, p.get() - 2, p.get())
}

/// Hilbert symbol (a, b)_p for odd p, via the tame closed formula: writing
/// a = p^α·u₁ and b = p^β·u₂,
///
/// ```text
/// (a, b)_p = (−1)^{αβ(p−1)/2} · (u₁|p)^β · (u₂|p)^α.
/// ```
///
/// The symbol is +1 exactly when z² = a·x² + b·y² has a nontrivial solution
/// over ℚ_p, i.e. when b is a norm from ℚ_p(√a).
pub fn hilbert_symbol(a: &Coefficient, b: &Coefficient, p: Prime) -> i8 {
    let alpha = a.val();
    let beta = b.val();
    let mut s: i8 = 1;
    if alpha == 1 && beta == 1 && (p.get() - 1) / 2 % 2 == 1 {
        s = -s;
    }
    if beta == 1 {
        s *= legendre(a.unit(), p);
    }
    if alpha == 1 {
        s *= legendre(b.unit(), p);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn prime_construction() {
        assert!(Prime::new(3).is_ok());
        assert!(Prime::new(13).is_ok());
        assert_eq!(Prime::new(2), Err(PadicError::EvenPrime));
        assert_eq!(Prime::new(9), Err(PadicError::NotPrime(9)));
        assert_eq!(Prime::new(1), Err(PadicError::NotPrime(1)));
        assert_eq!(Prime::new(0), Err(PadicError::NotPrime(0)));
        assert!(Prime::new(7919).is_ok());
    }

    #[test]
    fn coefficient_invariants() {
        assert!(Coefficient::new(0, -1, p(5)).is_ok());
        assert!(Coefficient::new(1, 3, p(5)).is_ok());
        assert_eq!(
            Coefficient::new(2, 1, p(5)),
            Err(PadicError::BadValuation(2))
        );
        assert_eq!(
            Coefficient::new(0, 10, p(5)),
            Err(PadicError::NotAUnit { unit: 10, p: 5 })
        );
        assert_eq!(
            Coefficient::new(0, 0, p(5)),
            Err(PadicError::NotAUnit { unit: 0, p: 5 })
        );
        let c = Coefficient::new(0, -1, p(5)).unwrap();
        assert_eq!(c.unit_residue(p(5)), 4);
        assert_eq!(c.residue_mod(p(5), 2), 24);
        let d = Coefficient::new(1, 2, p(5)).unwrap();
        assert_eq!(d.residue_mod(p(5), 2), 10);
        assert_eq!(d.to_integer(p(5)), 10);
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&rat(1, 1), p(3)), Ok(0));
        assert_eq!(valuation(&rat(18, 1), p(3)), Ok(2));
        assert_eq!(valuation(&rat(5, 9), p(3)), Ok(-2));
        assert_eq!(valuation(&rat(0, 1), p(3)), Err(PadicError::ZeroInput));
        assert_eq!(valuation(&rat(-27, 4), p(3)), Ok(3));
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(2, p(5)), -1);
        assert_eq!(legendre(4, p(5)), 1);
        assert_eq!(legendre(10, p(5)), 0);
        assert_eq!(legendre(-1, p(5)), 1); // 5 ≡ 1 mod 4
        assert_eq!(legendre(-1, p(7)), -1); // 7 ≡ 3 mod 4
    }

    #[test]
    fn legendre_multiplicative() {
        for &q in &[3u64, 5, 7, 11, 13] {
            let pr = p(q);
            for a in 1..q as i64 {
                for b in 1..q as i64 {
                    assert_eq!(legendre(a * b, pr), legendre(a, pr) * legendre(b, pr));
                }
            }
        }
    }

    #[test]
    fn hilbert_examples() {
        let p5 = p(5);
        let p7 = p(7);
        // (2, 5)_5 = leg(2|5) = −1.
        let a = Coefficient::new(0, 2, p5).unwrap();
        let b = Coefficient::new(1, 1, p5).unwrap();
        assert_eq!(hilbert_symbol(&a, &b, p5), -1);
        // (1, b)_p = +1 always.
        let one = Coefficient::new(0, 1, p7).unwrap();
        let b7 = Coefficient::new(1, 1, p7).unwrap();
        assert_eq!(hilbert_symbol(&one, &b7, p7), 1);
        // (5, 5)_5 = (5, −1)_5 = leg(−1|5) = +1.
        let pi = Coefficient::new(1, 1, p5).unwrap();
        assert_eq!(hilbert_symbol(&pi, &pi, p5), 1);
    }

    #[test]
    fn hilbert_symmetry_exhaustive() {
        for &q in &[3u64, 5, 7, 11, 13] {
            let pr = p(q);
            for va in 0..=1i64 {
                for vb in 0..=1i64 {
                    for ua in 1..q as i64 {
                        for ub in 1..q as i64 {
                            let a = Coefficient::new(va, ua, pr).unwrap();
                            let b = Coefficient::new(vb, ub, pr).unwrap();
                            assert_eq!(
                                hilbert_symbol(&a, &b, pr),
                                hilbert_symbol(&b, &a, pr),
                                "symmetry failed at p={} a=({},{}) b=({},{})",
                                q,
                                va,
                                ua,
                                vb,
                                ub
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hilbert_norm_group_membership() {
        // For a unit non-square a, (a, b) = +1 iff v(b) is even: the norm
        // group of the unramified quadratic extension is p^{2ℤ}·ℤ_p^×.
        for &q in &[3u64, 5, 7, 11, 13] {
            let pr = p(q);
            for ua in 1..q as i64 {
                if legendre(ua, pr) != -1 {
                    continue;
                }
                let a = Coefficient::new(0, ua, pr).unwrap();
                for ub in 1..q as i64 {
                    let b_unit = Coefficient::new(0, ub, pr).unwrap();
                    let b_pi = Coefficient::new(1, ub, pr).unwrap();
                    assert_eq!(hilbert_symbol(&a, &b_unit, pr), 1);
                    assert_eq!(hilbert_symbol(&a, &b_pi, pr), -1);
                }
            }
        }
    }
}
