//! Dense univariate polynomials with exact rational coefficients, in the
//! variable t. Just enough algebra for rational-function assembly: ring ops,
//! Euclidean division, gcd, and evaluation in ℚ and ℚ(√q).

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::sqrt_ext::SqrtExt;

/// Coefficients in ascending degree order, highest coefficient nonzero;
/// the zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        RatPoly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = RatPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        if c.is_zero() {
            return RatPoly::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            None => RatPoly::zero(),
            Some(lead) => self.scale(&lead.recip()),
        }
    }

    pub fn eval_rational(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_ext(&self, t: &SqrtExt) -> SqrtExt {
        let mut acc = SqrtExt::zero(t.q());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + &SqrtExt::from_rational(t.q(), c.clone());
        }
        acc
    }

    /// Euclidean division: self = quot·divisor + rem with deg rem < deg divisor.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let d = divisor.degree().unwrap();
        let lead_inv = divisor.leading().unwrap().recip();
        let mut rem = self.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(d)];
        while let Some(r) = rem.degree() {
            if r < d {
                break;
            }
            let factor = rem.leading().unwrap() * &lead_inv;
            let shift = r - d;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                let delta = c * &factor;
                rem.coeffs[shift + i] -= delta;
            }
            rem.trim();
            quot[shift] = factor;
        }
        (RatPoly::from_coeffs(quot), rem)
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Render with positive powers of `var`, e.g. `27 - 9*t`.
    pub fn display(&self, var: &str) -> String {
        let mut out = String::new();
        if self.is_zero() {
            return String::from("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    out.push('-');
                }
                first = false;
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                let _ = write!(out, "{}", mag);
            }
            if i > 0 {
                if show_coeff {
                    out.push('*');
                }
                let _ = write!(out, "{}", var);
                if i > 1 {
                    let _ = write!(out, "^{}", i);
                }
            }
        }
        out
    }

    /// The joint factor that clears all coefficient denominators of `self`
    /// and `other` and divides out their common integer content.
    pub fn joint_integer_scaling(&self, other: &RatPoly) -> BigRational {
        let mut denom_lcm = BigInt::one();
        let mut numer_gcd = BigInt::zero();
        for c in self.coeffs.iter().chain(other.coeffs.iter()) {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        for c in self.coeffs.iter().chain(other.coeffs.iter()) {
            let cleared = (c * BigRational::from_integer(denom_lcm.clone())).to_integer();
            numer_gcd = numer_gcd.gcd(&cleared);
        }
        if numer_gcd.is_zero() {
            numer_gcd = BigInt::one();
        }
        BigRational::new(denom_lcm, numer_gcd)
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;

    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        RatPoly::from_coeffs(coeffs)
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;

    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        RatPoly::from_coeffs(coeffs)
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;

    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(coeffs)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;

    fn neg(self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn poly(coeffs: &[(i64, i64)]) -> RatPoly {
        RatPoly::from_coeffs(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn ring_ops() {
        let a = poly(&[(1, 1), (2, 1)]); // 1 + 2t
        let b = poly(&[(-1, 1), (0, 1), (3, 1)]); // -1 + 3t²
        assert_eq!(&a + &b, poly(&[(0, 1), (2, 1), (3, 1)]));
        assert_eq!(&a * &b, poly(&[(-1, 1), (-2, 1), (3, 1), (6, 1)]));
        assert_eq!((&a - &a).degree(), None);
    }

    #[test]
    fn division_and_gcd() {
        // (1 − t)(1 + 2t) and (1 − t)(3 + t) share the factor 1 − t.
        let f = &poly(&[(1, 1), (-1, 1)]) * &poly(&[(1, 1), (2, 1)]);
        let g = &poly(&[(1, 1), (-1, 1)]) * &poly(&[(3, 1), (1, 1)]);
        let (q, r) = f.div_rem(&poly(&[(1, 1), (-1, 1)]));
        assert!(r.is_zero());
        assert_eq!(q, poly(&[(1, 1), (2, 1)]));
        // monic gcd: t − 1
        assert_eq!(RatPoly::gcd(&f, &g), poly(&[(-1, 1), (1, 1)]));
    }

    #[test]
    fn evaluation() {
        let f = poly(&[(27, 1), (-1, 1)]); // 27 − t
        assert_eq!(f.eval_rational(&rat(3, 1)), rat(24, 1));
        // at t = 3√3: 27 − 3√3
        let t = SqrtExt::q_pow_half(3, 3);
        assert_eq!(f.eval_ext(&t), SqrtExt::new(3, rat(27, 1), rat(-3, 1)));
    }

    #[test]
    fn rendering() {
        assert_eq!(poly(&[(27, 1), (-9, 1)]).to_string(), "27 - 9*t");
        assert_eq!(poly(&[(0, 1), (1, 1)]).to_string(), "t");
        assert_eq!(poly(&[(-1, 2), (0, 1), (1, 3)]).to_string(), "-1/2 + 1/3*t^2");
        assert_eq!(RatPoly::zero().to_string(), "0");
    }

    #[test]
    fn joint_scaling_clears_denominators() {
        let num = poly(&[(1, 1), (-1, 27)]); // 1 − t/27
        let den = poly(&[(1, 1), (-1, 3)]); // 1 − t/3
        let lambda = num.joint_integer_scaling(&den);
        assert_eq!(lambda, rat(27, 1));
        assert_eq!(num.scale(&lambda), poly(&[(27, 1), (-1, 1)]));
        assert_eq!(den.scale(&lambda), poly(&[(27, 1), (-9, 1)]));
    }
}
