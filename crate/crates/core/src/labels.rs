//! Closed-form label families α_n, β_n, γ_n, δ_n, the basic/second-basic
//! dimension table (a_n, b_n, f, f*), and type (M/Q) predicates.
//!
//! Formula branches that do not produce a restricted p-strict partition of
//! the right degree are ignored (the label is absent, not an error).
//! Characteristic zero is folded in by treating every κ as 0 and using the
//! `n < p` branches.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use std::fmt;

use crate::partition::{Char, Partition};

/// σ(m): the parity of m.
pub fn sigma(m: u64) -> u8 {
    (m % 2) as u8
}

fn divides(p: u64, m: u64) -> bool {
    p != 0 && m.is_multiple_of(p)
}

/// κ_n = 1 if p | n, else 0 (always 0 for p = 0).
pub fn kappa(c: Char, n: u64) -> u8 {
    u8::from(divides(c.p(), n))
}

/// `n = ap + b` with `0 < b ≤ p` (p > 0, n ≥ 1).
fn ap_plus_b(p: u64, n: u64) -> (u64, u64) {
    let b = ((n - 1) % p) + 1;
    ((n - b) / p, b)
}

fn pow2(k: u64) -> BigUint {
    BigUint::one() << (k as usize)
}

/// Builds a label candidate from raw part values, returning it only when it
/// is a restricted p-strict partition of degree `n`.
fn build(c: Char, n: u64, parts: Vec<u64>) -> Option<Partition> {
    if parts.iter().any(|&x| x == 0 || x > u64::from(u32::MAX)) {
        return None;
    }
    let parts: Vec<u32> = parts.into_iter().map(|x| x as u32).collect();
    let la = Partition::try_new(parts).ok()?;
    (la.n() == n && la.is_restricted(c)).then_some(la)
}

fn repeat(head: &[u64], value: u64, times: u64, tail: &[u64]) -> Vec<u64> {
    let mut parts = head.to_vec();
    parts.extend(std::iter::repeat_n(value, times as usize));
    parts.extend_from_slice(tail);
    parts
}

/// The basic label α_n (the empty partition for n = 0).
pub fn alpha_label(c: Char, n: u64) -> Partition {
    if n == 0 {
        return Partition::empty();
    }
    let p = c.p();
    if p == 0 {
        return build(c, n, vec![n]).expect("(n) is strict");
    }
    let (a, b) = ap_plus_b(p, n);
    let parts = if b != p {
        repeat(&[], p, a, &[b])
    } else {
        repeat(&[], p, a, &[p - 1, 1])
    };
    build(c, n, parts).expect("alpha label is always restricted")
}

/// The second-basic label β_n.
///
/// Defined for n ≥ 3 except the degenerate (p, n) = (3, 4), where
/// `RP_3(4)` is a singleton and no second label exists.
pub fn beta_label(c: Char, n: u64) -> Option<Partition> {
    if n < 3 {
        return None;
    }
    let p = c.p();
    if p == 0 || n < p {
        return build(c, n, vec![n - 1, 1]);
    }
    let (a, b) = ap_plus_b(p, n);
    let parts = if n == p {
        vec![p - 2, 2]
    } else if n == p + 1 {
        vec![p - 2, 2, 1]
    } else if b != 1 {
        repeat(&[p + 1], p, a - 1, &[b - 1])
    } else {
        repeat(&[p + 1], p, a - 2, &[p - 1, 1])
    };
    build(c, n, parts)
}

/// The third label γ_n, defined only when some branch yields a member of
/// `RP_p(n)` (never when n ≡ 0, 3 mod p).
pub fn gamma_label(c: Char, n: u64) -> Option<Partition> {
    if n < 4 {
        return None;
    }
    let p = c.p();
    if p == 0 || n < p || n == p + 1 {
        return build(c, n, vec![n - 2, 2]);
    }
    let (a, b) = ap_plus_b(p, n);
    if n == p + 2 {
        return build(c, n, vec![p - 1, 2, 1]);
    }
    if n > p + 2 {
        if b == 1 {
            return build(c, n, repeat(&[p + 2], p, a - 2, &[p - 1]));
        }
        if b == 2 {
            return build(c, n, repeat(&[p + 2], p, a - 2, &[p - 1, 1]));
        }
        if b != 3 && b != p {
            return build(c, n, repeat(&[p + 2], p, a - 1, &[b - 2]));
        }
    }
    None
}

/// One or two label candidates of the same degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabelSet {
    candidates: Vec<Partition>,
}

impl LabelSet {
    pub fn candidates(&self) -> &[Partition] {
        &self.candidates
    }

    pub fn contains(&self, la: &Partition) -> bool {
        self.candidates.iter().any(|d| d == la)
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.candidates.iter().map(|d| format!("({d})")).collect();
        write!(f, "{}", strs.join(" or "))
    }
}

/// The fourth label δ_n: the full case table, with both candidates where two
/// are listed; absent when no branch yields a valid partition.
pub fn delta_labels(c: Char, n: u64) -> Option<LabelSet> {
    let p = c.p();
    let raw: Vec<Vec<u64>> = if p == 3 {
        let (a, b) = ap_plus_b(p, n);
        if a >= 2 && b == 3 {
            vec![repeat(&[5], 3, a - 1, &[1])]
        } else {
            Vec::new()
        }
    } else if p == 0 {
        if n >= 4 {
            vec![vec![n - 3, 3], vec![n - 3, 2, 1]]
        } else {
            Vec::new()
        }
    } else {
        let (a, b) = ap_plus_b(p, n);
        if n <= p {
            if n < 4 {
                Vec::new()
            } else {
                vec![vec![n - 3, 3], vec![n - 3, 2, 1]]
            }
        } else if n == p + 2 {
            vec![vec![p - 1, 3]]
        } else if n == p + 3 {
            vec![vec![p - 1, 3, 1], vec![p, 2, 1]]
        } else if n == p + 5 && n > 10 {
            vec![vec![p + 2, 2, 1]]
        } else if a == 1 && 5 < b && b < p {
            vec![vec![p + 3, b - 3], vec![p + 2, b - 3, 1]]
        } else if n == 2 * p {
            vec![vec![p + 2, p - 3, 1], vec![p + 2, p - 2]]
        } else if a >= 2 && b == 2 {
            vec![repeat(&[p + 3], p, a - 2, &[p - 1])]
        } else if a >= 2 && b == 3 {
            vec![
                repeat(&[p + 2], p, a - 1, &[1]),
                repeat(&[p + 3], p, a - 2, &[p - 1, 1]),
            ]
        } else if a >= 2 && b == 5 && 5 < p {
            vec![repeat(&[p + 2, p + 1], p, a - 2, &[2])]
        } else if a >= 2 && 5 < b && b < p {
            vec![
                repeat(&[p + 3], p, a - 1, &[b - 3]),
                repeat(&[p + 2, p + 1], p, a - 2, &[b - 3]),
            ]
        } else if a >= 2 && b == p {
            vec![
                repeat(&[p + 2], p, a - 1, &[p - 2]),
                repeat(&[p + 2, p + 1], p, a - 2, &[p - 3]),
            ]
        } else {
            Vec::new()
        }
    };
    let mut candidates: Vec<Partition> = raw
        .into_iter()
        .filter_map(|parts| build(c, n, parts))
        .collect();
    candidates.dedup();
    if candidates.is_empty() {
        None
    } else {
        Some(LabelSet { candidates })
    }
}

/// Supermodule type: M (a = 0) or Q (a = 1).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum SuperType {
    M,
    Q,
}

impl fmt::Display for SuperType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuperType::M => write!(f, "M"),
            SuperType::Q => write!(f, "Q"),
        }
    }
}

/// `a_n = dim A_n = 2^{⌊(n-κ_n)/2⌋}`.
pub fn basic_dim(c: Char, n: u64) -> BigUint {
    pow2((n - u64::from(kappa(c, n))) / 2)
}

/// `b_n = dim B_n = 2^{⌊(n-1-κ_{n-1})/2⌋} (n-2-κ_n-2κ_{n-1})`.
pub fn second_basic_dim(c: Char, n: u64) -> BigUint {
    let kn = u64::from(kappa(c, n));
    let kn1 = u64::from(kappa(c, n - 1));
    pow2((n - 1 - kn1) / 2) * BigUint::from(n - 2 - kn - 2 * kn1)
}

/// `f(n) = 2 b_n`, the dimension threshold for large supermodules.
pub fn f_threshold(c: Char, n: u64) -> BigUint {
    BigUint::from(2u8) * second_basic_dim(c, n)
}

/// `f*(n) = 2^{⌊(n+2-κ_{n-1})/2⌋} (n-2-κ_n-2κ_{n-1})` (closed form).
pub fn fstar_threshold(c: Char, n: u64) -> BigUint {
    let kn = u64::from(kappa(c, n));
    let kn1 = u64::from(kappa(c, n - 1));
    pow2((n + 2 - kn1) / 2) * BigUint::from(n - 2 - kn - 2 * kn1)
}

/// `f*(n) = 4 b_n / 2^{a(β_n)}`, the quotient form; `None` when β_n is
/// undefined. Agreement with [`fstar_threshold`] ties the closed form to the
/// type of the second basic module.
pub fn fstar_quotient(c: Char, n: u64) -> Option<BigUint> {
    let beta = beta_label(c, n)?;
    let a = u64::from(beta.a_parity(c));
    Some(BigUint::from(4u8) * second_basic_dim(c, n) / pow2(a))
}

/// Type of A_n: M iff n is odd and p∤n, or n is even and p|n.
pub fn basic_type(c: Char, n: u64) -> SuperType {
    let div = divides(c.p(), n);
    let odd = n % 2 == 1;
    if (odd && !div) || (!odd && div) {
        SuperType::M
    } else {
        SuperType::Q
    }
}

/// Type of B_n: M iff n is odd and p|(n-1), or n is even and p∤(n-1).
pub fn second_basic_type(c: Char, n: u64) -> SuperType {
    let div = divides(c.p(), n - 1);
    let odd = n % 2 == 1;
    if (odd && div) || (!odd && !div) {
        SuperType::M
    } else {
        SuperType::Q
    }
}

/// Dimension-formula table entry for one n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DimRecord {
    pub n: u64,
    pub kappa_n: u8,
    pub a_n: BigUint,
    pub b_n: BigUint,
    pub f_n: BigUint,
    pub fstar_n: BigUint,
    pub basic_type: SuperType,
    pub second_basic_type: SuperType,
}

/// All closed-form dimension data for one n ≥ 5.
pub fn dims(c: Char, n: u64) -> DimRecord {
    assert!(n >= 5, "dimension table starts at n = 5");
    DimRecord {
        n,
        kappa_n: kappa(c, n),
        a_n: basic_dim(c, n),
        b_n: second_basic_dim(c, n),
        f_n: f_threshold(c, n),
        fstar_n: fstar_threshold(c, n),
        basic_type: basic_type(c, n),
        second_basic_type: second_basic_type(c, n),
    }
}
