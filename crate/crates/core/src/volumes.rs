//! Exact shell volumes Vol(V_n⁰).
//!
//! V is the set of primitive vectors of ℤ_p³ (some coordinate a unit), V_n
//! its subset where |x² + u·y² − θ·z²| = q^{−n}, and V_n⁰ = V_n/∼ the
//! quotient by unit scaling, so Vol(V_n⁰) = Vol(V_n)/(1 − 1/q). Haar measure
//! is normalized by Vol(ℤ_p³) = 1.
//!
//! Two independent routes produce the same numbers:
//! - [`closed_form_vol`]: the per-avatar closed formulas;
//! - [`oracle_vol`]: exhaustive counting of solutions of Q ≡ 0 mod pᵏ by
//!   level-lifting, with no knowledge of the closed forms.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::padic::mod_inverse;
use crate::quadform::{AvatarTag, TernaryForm};

/// Default enumeration budget for the counting oracle, in visited
/// candidate/solution nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VolumeError {
    /// The level-lifting enumeration would exceed the node budget at the
    /// given level (congruence modulo p^level).
    ResourceLimit { level: u32, budget: u64 },
    /// p^k does not fit the 63-bit working modulus of the oracle.
    ModulusTooLarge { p: u64, k: u32 },
    /// A tail model that contradicts the listed entries.
    TailMismatch { n: u32 },
    /// A tail model whose total mass is not 1 − q^{−3}.
    MassMismatch,
}

impl fmt::Display for VolumeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VolumeError::ResourceLimit { level, budget } => write!(
                f,
                "counting at level n = {} exceeds the node budget of {}",
                level, budget
            ),
            VolumeError::ModulusTooLarge { p, k } => {
                write!(f, "modulus {}^{} overflows the oracle's u64 arithmetic", p, k)
            }
            VolumeError::TailMismatch { n } => {
                write!(f, "tail model disagrees with the table entry at n = {}", n)
            }
            VolumeError::MassMismatch => {
                write!(f, "tail model violates the total-mass identity 1 - q^-3")
            }
        }
    }
}

fn big_rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// q^e as an exact rational, for e of either sign.
pub(crate) fn q_pow(q: u64, e: i64) -> BigRational {
    let p = BigInt::from(q).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// Closed-form Vol(V_n⁰) for the given avatar over the residue field of
/// size q:
///
/// ```text
/// A1:  1,                                    n = 0
///      q^{−n}(1 − 1/q)(1 + 1/q),             n ≥ 1
/// A2:  1,  q^{−1}(1 − 1/q),                  n = 0, 1
/// A3:  1 − 1/q,  2q^{−1}(1 − 1/q) + q^{−2},  n = 0, 1
/// A2/A3: 2·q^{−n}(1 − 1/q),                  n ≥ 2
/// B:   1 + 1/q,  q^{−2},  0,                 n = 0, 1, ≥ 2
/// ```
pub fn closed_form_vol(tag: AvatarTag, n: u32, q: u64) -> BigRational {
    let qi = q as i64;
    match (tag, n) {
        (AvatarTag::UnramifiedIsotropic, 0) => BigRational::one(),
        (AvatarTag::UnramifiedIsotropic, n) => {
            // (q² − 1)/q^{n+2}
            big_rat(qi * qi - 1, 1) * q_pow(q, -(n as i64) - 2)
        }
        (AvatarTag::RamifiedPiPi, 0) => BigRational::one(),
        (AvatarTag::RamifiedPiPi, 1) => big_rat(qi - 1, qi * qi),
        (AvatarTag::RamifiedPiMinusOne, 0) => big_rat(qi - 1, qi),
        (AvatarTag::RamifiedPiMinusOne, 1) => big_rat(2 * qi - 1, qi * qi),
        (AvatarTag::RamifiedPiPi, n) | (AvatarTag::RamifiedPiMinusOne, n) => {
            // 2(q − 1)/q^{n+1}
            big_rat(2 * (qi - 1), 1) * q_pow(q, -(n as i64) - 1)
        }
        (AvatarTag::Anisotropic, 0) => big_rat(qi + 1, qi),
        (AvatarTag::Anisotropic, 1) => big_rat(1, qi * qi),
        (AvatarTag::Anisotropic, _) => BigRational::zero(),
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Count solutions of Q(x, y, z) ≡ 0 mod pᵏ over (ℤ/pᵏ)³ with (x, y, z) not
/// all divisible by p.
///
/// Enumeration lifts the solution set level by level: a solution mod p^{j+1}
/// reduces to one mod p^j, and lifting a node costs p² candidates (p³ at the
/// rare singular nodes where the gradient vanishes mod p). `node_budget`
/// bounds the total number of candidates examined, aborting with
/// `ResourceLimit` before out-of-budget work is performed.
pub fn count_level(form: &TernaryForm, k: u32, node_budget: u64) -> Result<u64, VolumeError> {
    assert!(k >= 1, "count_level requires k >= 1");
    Ok(*count_levels_up_to(form, k, node_budget)?
        .last()
        .expect("k >= 1 yields at least one level"))
}

/// Solution counts N_1, …, N_k in one lifting pass.
pub(crate) fn count_levels_up_to(
    form: &TernaryForm,
    k: u32,
    node_budget: u64,
) -> Result<Vec<u64>, VolumeError> {
    assert!(k >= 1, "count_levels_up_to requires k >= 1");
    let prime = form.prime();
    let p = prime.get();
    match p.checked_pow(k) {
        Some(pk) if pk <= 1 << 31 => {}
        _ => return Err(VolumeError::ModulusTooLarge { p, k }),
    }

    let u_full = form.u().residue_mod(prime, k);
    let th_full = form.theta().residue_mod(prime, k);
    let mut work: u64 = 0;
    let mut counts = Vec::with_capacity(k as usize);

    // Level 1: direct scan of (ℤ/p)³ minus the origin.
    let u1 = u_full % p;
    let th1 = th_full % p;
    let mut frontier: Vec<[u64; 3]> = Vec::new();
    work += p * p * p;
    if work > node_budget {
        return Err(VolumeError::ResourceLimit {
            level: 1,
            budget: node_budget,
        });
    }
    for x in 0..p {
        for y in 0..p {
            for z in 0..p {
                if x == 0 && y == 0 && z == 0 {
                    continue;
                }
                let q_val = (x * x % p + u1 * (y * y % p) % p + (p - th1 * (z * z % p) % p)) % p;
                if q_val == 0 {
                    frontier.push([x, y, z]);
                }
            }
        }
    }
    counts.push(frontier.len() as u64);

    // Lift level j -> j+1: for a solution v mod p^j, Q(v + p^j·d) ≡
    // Q(v) + 2·p^j·(x·dx + u·y·dy − θ·z·dz) mod p^{j+1}, so the digit
    // vector d satisfies a linear congruence mod p.
    for j in 1..k {
        let pj = p.pow(j);
        let pj1 = p.pow(j + 1);
        let u = u_full % pj1;
        let th = th_full % pj1;
        let mut next: Vec<[u64; 3]> = Vec::new();
        for &[x, y, z] in &frontier {
            let q_val = (mul_mod(x, x, pj1) + mul_mod(u, mul_mod(y, y, pj1), pj1) + pj1
                - mul_mod(th, mul_mod(z, z, pj1), pj1))
                % pj1;
            debug_assert_eq!(q_val % pj, 0);
            let c = q_val / pj % p;
            let g = [
                2 * (x % p) % p,
                2 * mul_mod(u, y, p) % p,
                (2 * p - 2 * mul_mod(th, z, p)) % p,
            ];
            if let Some(pivot) = g.iter().position(|&gi| gi != 0) {
                // Smooth node: exactly p² lifts, the pivot digit solved for.
                work = work.saturating_add(p * p);
                if work > node_budget {
                    return Err(VolumeError::ResourceLimit {
                        level: j + 1,
                        budget: node_budget,
                    });
                }
                let inv = mod_inverse(g[pivot], prime);
                let others: [usize; 2] = match pivot {
                    0 => [1, 2],
                    1 => [0, 2],
                    _ => [0, 1],
                };
                for d_a in 0..p {
                    for d_b in 0..p {
                        let rest =
                            (c + g[others[0]] * d_a % p + g[others[1]] * d_b % p) % p;
                        let d_pivot = (p - rest) % p * inv % p;
                        let mut d = [0u64; 3];
                        d[others[0]] = d_a;
                        d[others[1]] = d_b;
                        d[pivot] = d_pivot;
                        next.push([x + pj * d[0], y + pj * d[1], z + pj * d[2]]);
                    }
                }
            } else if c == 0 {
                // Singular node with vanishing constant: all p³ lifts.
                work = work.saturating_add(p * p * p);
                if work > node_budget {
                    return Err(VolumeError::ResourceLimit {
                        level: j + 1,
                        budget: node_budget,
                    });
                }
                for dx in 0..p {
                    for dy in 0..p {
                        for dz in 0..p {
                            next.push([x + pj * dx, y + pj * dy, z + pj * dz]);
                        }
                    }
                }
            } else {
                work = work.saturating_add(1);
            }
        }
        frontier = next;
        counts.push(frontier.len() as u64);
    }
    Ok(counts)
}

/// S_k = measure of {v ∈ V : |Q(v)| ≤ q^{−k}}, with S_0 the measure
/// 1 − q^{−3} of V itself.
fn shell_tail_measure(counts: &[u64], q: u64, k: u32) -> BigRational {
    if k == 0 {
        return BigRational::one() - q_pow(q, -3);
    }
    BigRational::from_integer(BigInt::from(counts[k as usize - 1])) * q_pow(q, -3 * k as i64)
}

/// Vol(V_n⁰) by exhaustive counting: (S_n − S_{n+1})/(1 − 1/q).
pub fn oracle_vol(
    form: &TernaryForm,
    n: u32,
    node_budget: u64,
) -> Result<BigRational, VolumeError> {
    let counts = count_levels_up_to(form, n + 1, node_budget)?;
    let q = form.prime().get();
    let s_n = shell_tail_measure(&counts, q, n);
    let s_next = shell_tail_measure(&counts, q, n + 1);
    Ok((s_n - s_next) / (BigRational::one() - q_pow(q, -1)))
}

/// Eventual geometric model of a volume sequence: vol(n) = coeff·ratioⁿ for
/// all n ≥ start. The all-zero tail is encoded as coeff = ratio = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct TailModel {
    pub coeff: BigRational,
    pub ratio: BigRational,
    pub start: u32,
}

impl TailModel {
    pub fn vol(&self, n: u32) -> BigRational {
        if self.coeff.is_zero() {
            return BigRational::zero();
        }
        &self.coeff * self.ratio.pow(n as i32)
    }

    /// Σ_{n ≥ start} coeff·ratioⁿ = coeff·ratio^start/(1 − ratio).
    pub fn sum_from_start(&self) -> BigRational {
        if self.coeff.is_zero() {
            return BigRational::zero();
        }
        self.vol(self.start) / (BigRational::one() - &self.ratio)
    }
}

/// The exact table n ↦ Vol(V_n⁰) with an optional geometric tail model.
///
/// `entries[n]` is Vol(V_n⁰) for consecutive n starting at 0. When a tail is
/// present it must reproduce every listed entry with n ≥ start, and the total
/// mass (1 − 1/q)·Σ Vol(V_n⁰) must equal 1 − q^{−3}, the measure of V.
#[derive(Debug, Clone, PartialEq)]
pub struct VolumeTable {
    q: u64,
    entries: Vec<BigRational>,
    tail: Option<TailModel>,
}

impl VolumeTable {
    pub fn new(q: u64, entries: Vec<BigRational>) -> Self {
        debug_assert!(entries.iter().all(|v| !v.is_negative()));
        VolumeTable {
            q,
            entries,
            tail: None,
        }
    }

    pub fn with_tail(
        q: u64,
        entries: Vec<BigRational>,
        tail: TailModel,
    ) -> Result<Self, VolumeError> {
        if tail.ratio.is_negative() || tail.ratio >= BigRational::one() {
            return Err(VolumeError::TailMismatch { n: tail.start });
        }
        if (tail.start as usize) > entries.len() {
            return Err(VolumeError::TailMismatch { n: tail.start });
        }
        for (n, v) in entries.iter().enumerate().skip(tail.start as usize) {
            if *v != tail.vol(n as u32) {
                return Err(VolumeError::TailMismatch { n: n as u32 });
            }
        }
        let head: BigRational = entries
            .iter()
            .take(tail.start as usize)
            .fold(BigRational::zero(), |acc, v| acc + v);
        let total = (BigRational::one() - q_pow(q, -1)) * (head + tail.sum_from_start());
        if total != BigRational::one() - q_pow(q, -3) {
            return Err(VolumeError::MassMismatch);
        }
        Ok(VolumeTable {
            q,
            entries,
            tail: Some(tail),
        })
    }

    /// The closed-form table for an avatar, with entries up to `max_n` and
    /// the exact tail model attached.
    pub fn closed_form(tag: AvatarTag, q: u64, max_n: u32) -> Self {
        let entries = (0..=max_n).map(|n| closed_form_vol(tag, n, q)).collect();
        let qi = q as i64;
        let tail = match tag {
            AvatarTag::UnramifiedIsotropic => TailModel {
                coeff: big_rat(qi * qi - 1, qi * qi),
                ratio: big_rat(1, qi),
                start: 1,
            },
            AvatarTag::RamifiedPiPi | AvatarTag::RamifiedPiMinusOne => TailModel {
                coeff: big_rat(2 * (qi - 1), qi),
                ratio: big_rat(1, qi),
                start: 2,
            },
            AvatarTag::Anisotropic => TailModel {
                coeff: BigRational::zero(),
                ratio: BigRational::zero(),
                start: 2,
            },
        };
        Self::with_tail(q, entries, tail).expect("closed-form tables satisfy their invariants")
    }

    /// The table computed by the counting oracle, without a tail model (use
    /// [`crate::zeta::detect_tail`] to fit one).
    pub fn from_oracle(
        form: &TernaryForm,
        max_n: u32,
        node_budget: u64,
    ) -> Result<Self, VolumeError> {
        let counts = count_levels_up_to(form, max_n + 1, node_budget)?;
        let q = form.prime().get();
        let one_minus = BigRational::one() - q_pow(q, -1);
        let entries = (0..=max_n)
            .map(|n| {
                (shell_tail_measure(&counts, q, n) - shell_tail_measure(&counts, q, n + 1))
                    / &one_minus
            })
            .collect();
        Ok(VolumeTable {
            q,
            entries,
            tail: None,
        })
    }

    pub fn attach_tail(self, tail: TailModel) -> Result<Self, VolumeError> {
        Self::with_tail(self.q, self.entries, tail)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn tail(&self) -> Option<&TailModel> {
        self.tail.as_ref()
    }

    /// Vol(V_n⁰) from the listed entries, or from the tail model when n lies
    /// beyond them.
    pub fn vol(&self, n: u32) -> Option<BigRational> {
        if let Some(v) = self.entries.get(n as usize) {
            return Some(v.clone());
        }
        match &self.tail {
            Some(tail) if n >= tail.start => Some(tail.vol(n)),
            _ => None,
        }
    }

    /// (1 − 1/q)·Σ_n Vol(V_n⁰), summed exactly through the tail model.
    pub fn total_mass(&self) -> Option<BigRational> {
        let tail = self.tail.as_ref()?;
        let head: BigRational = self
            .entries
            .iter()
            .take(tail.start as usize)
            .fold(BigRational::zero(), |acc, v| acc + v);
        Some((BigRational::one() - q_pow(self.q, -1)) * (head + tail.sum_from_start()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::Prime;
    use crate::quadform::classify;
    use alloc::vec;

    fn form(p_: u64, uv: i64, uu: i64, tv: i64, tu: i64) -> TernaryForm {
        TernaryForm::from_raw(p_, uv, uu, tv, tu).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            closed_form_vol(AvatarTag::RamifiedPiMinusOne, 1, 3),
            big_rat(5, 9)
        );
        assert_eq!(closed_form_vol(AvatarTag::RamifiedPiPi, 0, 7), BigRational::one());
        assert_eq!(
            closed_form_vol(AvatarTag::UnramifiedIsotropic, 2, 3),
            big_rat(8, 81)
        );
        assert_eq!(closed_form_vol(AvatarTag::Anisotropic, 1, 5), big_rat(1, 25));
        assert_eq!(closed_form_vol(AvatarTag::Anisotropic, 3, 5), BigRational::zero());
    }

    #[test]
    fn count_level_examples() {
        // x² − y² − 2z² at p = 3 (A1 canonical): 8 of the 26 nonzero
        // triples mod 3 are solutions.
        let a1 = form(3, 0, -1, 0, 2);
        assert_eq!(count_level(&a1, 1, DEFAULT_NODE_BUDGET), Ok(8));
        // x² − y² − 3z² at p = 3 (A3 canonical): x² ≡ y² has 5 pairs, times
        // 3 values of z, minus the origin.
        let a3 = form(3, 0, -1, 1, 1);
        assert_eq!(count_level(&a3, 1, DEFAULT_NODE_BUDGET), Ok(14));
    }

    #[test]
    fn count_level_respects_sublattice_bound() {
        // N_k ≤ p^{3k} − p^{3(k−1)}: the excluded sublattice has index p³.
        for k in 1..=3u32 {
            for tag in AvatarTag::ALL {
                let f = tag.canonical_form(Prime::new(3).unwrap());
                let n = count_level(&f, k, DEFAULT_NODE_BUDGET).unwrap();
                assert!(n <= 3u64.pow(3 * k) - 3u64.pow(3 * (k - 1)));
            }
        }
    }

    #[test]
    fn count_level_budget() {
        let a1 = form(3, 0, -1, 0, 2);
        assert_eq!(
            count_level(&a1, 1, 10),
            Err(VolumeError::ResourceLimit {
                level: 1,
                budget: 10
            })
        );
        assert!(matches!(
            count_level(&a1, 3, 100),
            Err(VolumeError::ResourceLimit { level: 2, .. })
        ));
    }

    #[test]
    fn frozen_level_counts_p3() {
        // Frozen from the closed forms via N_k = S_k·p^{3k}.
        let a1 = form(3, 0, -1, 0, 2);
        assert_eq!(
            count_levels_up_to(&a1, 5, DEFAULT_NODE_BUDGET).unwrap(),
            vec![8, 72, 648, 5832, 52488]
        );
        let a3 = form(3, 0, -1, 1, 1);
        assert_eq!(
            count_levels_up_to(&a3, 3, DEFAULT_NODE_BUDGET).unwrap(),
            vec![14, 108, 972]
        );
        let a2 = form(3, 1, 1, 1, 1);
        assert_eq!(
            count_levels_up_to(&a2, 3, DEFAULT_NODE_BUDGET).unwrap(),
            vec![8, 108, 972]
        );
        let b = form(3, 1, 1, 0, 2);
        assert_eq!(
            count_levels_up_to(&b, 3, DEFAULT_NODE_BUDGET).unwrap(),
            vec![2, 0, 0]
        );
    }

    #[test]
    fn oracle_examples() {
        let a3 = form(3, 0, -1, 1, 1);
        assert_eq!(oracle_vol(&a3, 0, DEFAULT_NODE_BUDGET), Ok(big_rat(2, 3)));
        let a1 = form(3, 0, -1, 0, 2);
        assert_eq!(oracle_vol(&a1, 0, DEFAULT_NODE_BUDGET), Ok(BigRational::one()));
        let a2 = form(5, 1, 1, 1, 1);
        assert_eq!(oracle_vol(&a2, 1, DEFAULT_NODE_BUDGET), Ok(big_rat(4, 25)));
    }

    #[test]
    fn oracle_matches_closed_forms_at_p3() {
        for tag in AvatarTag::ALL {
            let f = tag.canonical_form(Prime::new(3).unwrap());
            for n in 0..=4u32 {
                assert_eq!(
                    oracle_vol(&f, n, DEFAULT_NODE_BUDGET).unwrap(),
                    closed_form_vol(tag, n, 3),
                    "mismatch at {:?}, n = {}",
                    tag,
                    n
                );
            }
        }
    }

    #[test]
    fn closed_form_tables_are_valid() {
        for &q in &[3u64, 5, 7, 11] {
            for tag in AvatarTag::ALL {
                let table = VolumeTable::closed_form(tag, q, 6);
                let mass = table.total_mass().unwrap();
                assert_eq!(mass, BigRational::one() - q_pow(q, -3));
                // tail extension agrees with the closed form beyond entries
                assert_eq!(table.vol(9).unwrap(), closed_form_vol(tag, 9, q));
            }
        }
    }

    #[test]
    fn tail_validation_rejects_bad_models() {
        let entries = vec![BigRational::one(), big_rat(1, 3), big_rat(1, 9)];
        // vol(n) = (1/3)ⁿ from n = 1 matches the entries, but the mass is
        // wrong for q = 3.
        let bad_mass = TailModel {
            coeff: BigRational::one(),
            ratio: big_rat(1, 3),
            start: 1,
        };
        assert_eq!(
            VolumeTable::with_tail(3, entries.clone(), bad_mass),
            Err(VolumeError::MassMismatch)
        );
        let mismatch = TailModel {
            coeff: big_rat(1, 2),
            ratio: big_rat(1, 3),
            start: 1,
        };
        assert_eq!(
            VolumeTable::with_tail(3, entries, mismatch),
            Err(VolumeError::TailMismatch { n: 1 })
        );
    }

    #[test]
    fn anisotropic_input_with_utheta_val_two() {
        // u = 3, θ = 2·3 at p = 3: |uθ| = q^{−2}, anisotropic. Its own
        // shell volumes differ from the canonical anisotropic table, but
        // vanish for n ≥ 2 all the same.
        let f = form(3, 1, 1, 1, 2);
        assert_eq!(classify(&f).0.abs_utheta_val(), 2);
        assert_eq!(oracle_vol(&f, 0, DEFAULT_NODE_BUDGET), Ok(BigRational::one()));
        assert_eq!(oracle_vol(&f, 1, DEFAULT_NODE_BUDGET), Ok(big_rat(4, 9)));
        assert_eq!(oracle_vol(&f, 2, DEFAULT_NODE_BUDGET), Ok(BigRational::zero()));
        assert_eq!(oracle_vol(&f, 3, DEFAULT_NODE_BUDGET), Ok(BigRational::zero()));
    }
}
