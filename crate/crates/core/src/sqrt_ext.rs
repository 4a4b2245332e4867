//! Exact arithmetic in the real quadratic field ℚ(√q).
//!
//! Elements are a + b·√q with rational a, b. Since q is prime, √q is
//! irrational, so the representation is unique and a nonzero element always
//! has the inverse (a − b·√q)/(a² − b²·q). These are the values of q^{−s} and
//! of the continued integral at half-integer s.

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SqrtExt {
    q: u64,
    a: BigRational,
    b: BigRational,
}

impl SqrtExt {
    pub fn new(q: u64, a: BigRational, b: BigRational) -> Self {
        SqrtExt { q, a, b }
    }

    pub fn zero(q: u64) -> Self {
        SqrtExt::new(q, BigRational::zero(), BigRational::zero())
    }

    pub fn one(q: u64) -> Self {
        SqrtExt::new(q, BigRational::one(), BigRational::zero())
    }

    pub fn from_rational(q: u64, a: BigRational) -> Self {
        SqrtExt::new(q, a, BigRational::zero())
    }

    /// q^{m/2} exactly: a rational power of q for even m, a rational
    /// multiple of √q for odd m.
    pub fn q_pow_half(q: u64, m: i64) -> Self {
        let q_int_pow = |e: i64| -> BigRational {
            let p = BigInt::from(q).pow(e.unsigned_abs() as u32);
            if e >= 0 {
                BigRational::from_integer(p)
            } else {
                BigRational::new(BigInt::one(), p)
            }
        };
        if m % 2 == 0 {
            SqrtExt::from_rational(q, q_int_pow(m / 2))
        } else {
            // q^{m/2} = q^{(m−1)/2}·√q; (m−1)/2 is exact since m−1 is even.
            SqrtExt::new(q, BigRational::zero(), q_int_pow((m - 1) / 2))
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `Some(a)` when the element is rational (b = 0).
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<SqrtExt> {
        if self.is_zero() {
            return None;
        }
        // a² − b²q ≠ 0 for (a, b) ≠ 0 because √q is irrational.
        let norm = &self.a * &self.a - &self.b * &self.b * q_rat(self.q);
        debug_assert!(!norm.is_zero());
        Some(SqrtExt::new(self.q, &self.a / &norm, -&self.b / &norm))
    }

    /// Sign of the real number a + b·√q: −1, 0, or +1.
    pub fn sign(&self) -> i8 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: compare |a|² against |b|²·q.
        let cmp = (&self.a * &self.a).cmp(&(&self.b * &self.b * q_rat(self.q)));
        match cmp {
            core::cmp::Ordering::Greater => sa,
            core::cmp::Ordering::Less => sb,
            core::cmp::Ordering::Equal => 0,
        }
    }
}

fn q_rat(q: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(q))
}

fn rational_sign(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn assert_same_field(lhs: &SqrtExt, rhs: &SqrtExt) {
    assert_eq!(
        lhs.q, rhs.q,
        "mixed Q(sqrt {}) and Q(sqrt {}) operands",
        lhs.q, rhs.q
    );
}

impl Add for &SqrtExt {
    type Output = SqrtExt;

    fn add(self, rhs: &SqrtExt) -> SqrtExt {
        assert_same_field(self, rhs);
        SqrtExt::new(self.q, &self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &SqrtExt {
    type Output = SqrtExt;

    fn sub(self, rhs: &SqrtExt) -> SqrtExt {
        assert_same_field(self, rhs);
        SqrtExt::new(self.q, &self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &SqrtExt {
    type Output = SqrtExt;

    fn mul(self, rhs: &SqrtExt) -> SqrtExt {
        assert_same_field(self, rhs);
        let a = &self.a * &rhs.a + &self.b * &rhs.b * q_rat(self.q);
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        SqrtExt::new(self.q, a, b)
    }
}

impl Div for &SqrtExt {
    type Output = SqrtExt;

    fn div(self, rhs: &SqrtExt) -> SqrtExt {
        let inv = rhs.inv().expect("division by zero in Q(sqrt q)");
        self * &inv
    }
}

impl Neg for &SqrtExt {
    type Output = SqrtExt;

    fn neg(self) -> SqrtExt {
        SqrtExt::new(self.q, -&self.a, -&self.b)
    }
}

macro_rules! forward_owned_binop {
    ($($t:ident, $f:ident);*) => {$(
        impl $t for SqrtExt {
            type Output = SqrtExt;
            fn $f(self, rhs: SqrtExt) -> SqrtExt {
                (&self).$f(&rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add, add; Sub, sub; Mul, mul; Div, div);

impl Neg for SqrtExt {
    type Output = SqrtExt;

    fn neg(self) -> SqrtExt {
        -&self
    }
}

impl fmt::Display for SqrtExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write_sqrt_term(f, &self.b, self.q, false);
        }
        write!(f, "{} ", self.a)?;
        write_sqrt_term(f, &self.b, self.q, true)
    }
}

fn write_sqrt_term(
    f: &mut fmt::Formatter<'_>,
    b: &BigRational,
    q: u64,
    spaced_sign: bool,
) -> fmt::Result {
    let mag = b.abs();
    if spaced_sign {
        write!(f, "{} ", if b.is_negative() { '-' } else { '+' })?;
    } else if b.is_negative() {
        write!(f, "-")?;
    }
    if mag.is_one() {
        write!(f, "sqrt({})", q)
    } else {
        write!(f, "{}*sqrt({})", mag, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn field_ops() {
        let x = SqrtExt::new(3, rat(1, 2), rat(-2, 3));
        let y = SqrtExt::new(3, rat(-1, 5), rat(4, 1));
        let sum = &x + &y;
        assert_eq!(sum, SqrtExt::new(3, rat(3, 10), rat(10, 3)));
        let prod = &x * &y;
        // (1/2 − 2/3·√3)(−1/5 + 4·√3) = −1/10 − 8 + (2 + 2/15)√3
        assert_eq!(prod, SqrtExt::new(3, rat(-81, 10), rat(32, 15)));
        let inv = x.inv().unwrap();
        assert_eq!(&x * &inv, SqrtExt::one(3));
        assert!(SqrtExt::zero(3).inv().is_none());
    }

    #[test]
    fn q_pow_half_values() {
        assert_eq!(SqrtExt::q_pow_half(3, 0), SqrtExt::one(3));
        assert_eq!(SqrtExt::q_pow_half(3, 2), SqrtExt::from_rational(3, rat(3, 1)));
        assert_eq!(SqrtExt::q_pow_half(3, -2), SqrtExt::from_rational(3, rat(1, 3)));
        // q^{3/2} = q·√q
        assert_eq!(SqrtExt::q_pow_half(3, 3), SqrtExt::new(3, rat(0, 1), rat(3, 1)));
        // q^{−1/2} = √q/q
        assert_eq!(SqrtExt::q_pow_half(3, -1), SqrtExt::new(3, rat(0, 1), rat(1, 3)));
        // q^{−3/2} = √q/q²
        assert_eq!(SqrtExt::q_pow_half(3, -3), SqrtExt::new(3, rat(0, 1), rat(1, 9)));
    }

    #[test]
    fn sign_of_mixed_elements() {
        assert_eq!(SqrtExt::new(3, rat(2, 1), rat(-1, 1)).sign(), 1); // 2 > √3
        assert_eq!(SqrtExt::new(3, rat(1, 1), rat(-1, 1)).sign(), -1); // 1 < √3
        assert_eq!(SqrtExt::new(3, rat(-5, 1), rat(3, 1)).sign(), 1); // 3√3 > 5
        assert_eq!(SqrtExt::zero(3).sign(), 0);
        assert_eq!(SqrtExt::new(2, rat(2, 1), rat(-1, 1)).sign(), 1); // guard: 2 > √2
    }

    #[test]
    fn display_formatting() {
        assert_eq!(
            SqrtExt::new(3, rat(-1, 3), rat(-4, 9)).to_string(),
            "-1/3 - 4/9*sqrt(3)"
        );
        assert_eq!(SqrtExt::new(3, rat(0, 1), rat(1, 1)).to_string(), "sqrt(3)");
        assert_eq!(SqrtExt::new(3, rat(7, 2), rat(0, 1)).to_string(), "7/2");
        assert_eq!(SqrtExt::new(5, rat(1, 5), rat(6, 25)).to_string(), "1/5 + 6/25*sqrt(5)");
    }
}
