//! Homotopy of Moore spectra from the long exact sequence of
//! S --n--> S --> S/n --> S[1].

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use super::group::{mult_by_n, AbelianGroup};
use super::table::{Provenance, StemsTable};
use crate::modules::{is_decomposable, moore_module, tensor};
use crate::prime::Prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Resolution {
    Split,
    NonSplit,
    Unknown,
}

/// 0 → sub → ? → quotient → 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupExtensionProblem {
    pub sub: AbelianGroup,
    pub quotient: AbelianGroup,
    pub resolution: Resolution,
    pub note: String,
}

impl GroupExtensionProblem {
    pub fn order(&self) -> Option<u64> {
        Some(self.sub.order()? * self.quotient.order()?)
    }
}

/// A group determined up to the information available.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Computed {
    Group { group: AbelianGroup, provenance: Provenance },
    OrderOnly { order: u64, problem: GroupExtensionProblem },
    Unknown { reason: String },
}

impl Computed {
    fn derived(group: AbelianGroup) -> Self {
        Computed::Group { group, provenance: Provenance::Derived }
    }

    pub fn group(&self) -> Option<&AbelianGroup> {
        match self {
            Computed::Group { group, .. } => Some(group),
            _ => None,
        }
    }

    pub fn order(&self) -> Option<u64> {
        match self {
            Computed::Group { group, .. } => group.order(),
            Computed::OrderOnly { order, .. } => Some(*order),
            Computed::Unknown { .. } => None,
        }
    }

    pub fn is_known(&self) -> bool {
        !matches!(self, Computed::Unknown { .. })
    }

    /// None when nothing is known. An order-only value of order > 1 is
    /// nonzero whatever the extension turns out to be.
    pub fn is_trivial(&self) -> Option<bool> {
        match self {
            Computed::Group { group, .. } => Some(group.is_trivial()),
            Computed::OrderOnly { order, .. } => Some(*order == 1),
            Computed::Unknown { .. } => None,
        }
    }
}

impl fmt::Display for Computed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Computed::Group { group, .. } => write!(f, "{group}"),
            Computed::OrderOnly { order, problem } => {
                write!(f, "order {order} (extension of {} by {}, unresolved)", problem.quotient, problem.sub)
            }
            Computed::Unknown { reason } => write!(f, "unknown ({reason})"),
        }
    }
}

/// The prime q if n = q^e.
fn prime_power_base(n: u64) -> Option<u64> {
    let q = (2..=n).find(|q| n.is_multiple_of(*q))?;
    let mut r = n;
    while r.is_multiple_of(q) {
        r /= q;
    }
    (r == 1).then_some(q)
}

/// π_k as far as multiplication by n can see it: the full group, or the
/// q-primary part when n is a power of q and only that part is stored.
fn visible_stem(t: &StemsTable, n: u64, k: i64) -> Option<AbelianGroup> {
    t.group(k).or_else(|| t.p_primary_part(k, prime_power_base(n)?))
}

/// 0 → coker(n on π_k) → π_k(S/n) → ker(n on π_{k-1}) → 0.
pub fn moore_homotopy(t: &StemsTable, n: u64, k: i64) -> Computed {
    if n == 0 {
        return Computed::Unknown { reason: "n must be positive".into() };
    }
    let (Some(a), Some(b)) = (visible_stem(t, n, k), visible_stem(t, n, k - 1)) else {
        let missing: Vec<String> =
            [k, k - 1].iter().filter(|&&d| visible_stem(t, n, d).is_none()).map(|d| format!("π_{d}")).collect();
        return Computed::Unknown { reason: format!("{} not in the stems table", missing.join(", ")) };
    };
    let coker = mult_by_n(&a, n).1;
    let ker = mult_by_n(&b, n).0;
    extend(ker, coker, "π_k(S/n) from the long exact sequence")
}

fn extend(quotient: AbelianGroup, sub: AbelianGroup, what: &str) -> Computed {
    if quotient.is_trivial() {
        return Computed::derived(sub);
    }
    if sub.is_trivial() {
        return Computed::derived(quotient);
    }
    match (sub.order(), quotient.order()) {
        (Some(a), Some(b)) if a.gcd(&b) == 1 => Computed::derived(sub.direct_sum(&quotient)),
        (Some(a), Some(b)) => Computed::OrderOnly {
            order: a * b,
            problem: GroupExtensionProblem {
                sub,
                quotient,
                resolution: Resolution::Unknown,
                note: format!("{what}: orders share a prime, the sequence alone does not decide the extension"),
            },
        },
        _ => Computed::Unknown { reason: format!("{what}: infinite extension") },
    }
}

/// Whether 2 · id of S/2 is nonzero, read off from the module calculus:
/// if it were zero, the cone S/2 ∧ S/2 of 2 · id would split as
/// S/2 ∨ S/2[1] and its mod-2 cohomology would decompose.
pub fn two_times_identity_of_mod_two_moore_is_nonzero() -> bool {
    let m = moore_module(Prime::TWO);
    let square = tensor(&m, &m).expect("same prime");
    !is_decomposable(&square).expect("4-dimensional").is_decomposable()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MooreEndomorphisms {
    pub n: u64,
    /// π_1(S/n) ⊗ Z/n.
    pub sub: Computed,
    /// n-torsion of π_0(S/n).
    pub quotient: Computed,
    pub group: Computed,
    /// Order of the identity of S/n in [S/n, S/n], when determined.
    pub identity_order: Option<u64>,
}

/// [S/n, S/n] from 0 → π_1(S/n) ⊗ Z/n → [S/n, S/n] → π_0(S/n)[n] → 0.
/// The identity maps to a generator of the quotient Z/n.
pub fn moore_endomorphisms(t: &StemsTable, n: u64) -> MooreEndomorphisms {
    let pi1 = moore_homotopy(t, n, 1);
    let pi0 = moore_homotopy(t, n, 0);
    let sub = match &pi1 {
        Computed::Group { group, .. } => Computed::derived(group.tensor_mod(n)),
        other => other.clone(),
    };
    let quotient = match &pi0 {
        Computed::Group { group, .. } => Computed::derived(mult_by_n(group, n).0),
        other => other.clone(),
    };
    let unknown = |reason: &str| MooreEndomorphisms {
        n,
        sub: sub.clone(),
        quotient: quotient.clone(),
        group: Computed::Unknown { reason: reason.into() },
        identity_order: None,
    };
    let (Some(s), Some(q)) = (sub.group().cloned(), quotient.group().cloned()) else {
        return unknown("π_0(S/n) or π_1(S/n) undetermined");
    };
    if s.is_trivial() {
        return MooreEndomorphisms { n, identity_order: q.order(), group: Computed::derived(q.clone()), sub, quotient };
    }
    if n == 2 && s == AbelianGroup::cyclic(2) && q == AbelianGroup::cyclic(2) {
        let nonsplit = two_times_identity_of_mod_two_moore_is_nonzero();
        let (group, identity_order) = if nonsplit {
            (AbelianGroup::cyclic(4), Some(4))
        } else {
            (AbelianGroup::from_factors(s.factors().into_iter().chain(q.factors())), Some(2))
        };
        return MooreEndomorphisms {
            n,
            group: Computed::Group { group, provenance: Provenance::Derived },
            identity_order,
            sub,
            quotient,
        };
    }
    let order = s.order().zip(q.order()).map(|(a, b)| a * b);
    match order {
        Some(order) => MooreEndomorphisms {
            n,
            group: Computed::OrderOnly {
                order,
                problem: GroupExtensionProblem {
                    sub: s,
                    quotient: q,
                    resolution: Resolution::Unknown,
                    note: "[S/n, S/n] for even n > 2 is not resolved here".into(),
                },
            },
            identity_order: None,
            sub,
            quotient,
        },
        None => unknown("infinite groups in the sequence"),
    }
}

/// n-order ≥ 1 iff n · id = 0, i.e. the order of the identity divides n.
pub fn positive_n_order(identity_order: u64, n: u64) -> bool {
    n.is_multiple_of(identity_order)
}

/// The group [S[3], S/n] = π_3(S/n) containing the obstruction to an
/// associative multiplication on S/n; the multiplication is associative
/// when it vanishes.
pub fn associator_obstruction(t: &StemsTable, n: u64) -> Computed {
    moore_homotopy(t, n, 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> StemsTable {
        StemsTable::reference()
    }

    #[test]
    fn low_homotopy_of_moore_spectra() {
        assert_eq!(moore_homotopy(&t(), 3, 0).group(), Some(&AbelianGroup::cyclic(3)));
        assert_eq!(moore_homotopy(&t(), 3, 1).group(), Some(&AbelianGroup::trivial()));
        assert_eq!(moore_homotopy(&t(), 2, 1).group(), Some(&AbelianGroup::cyclic(2)));
        assert_eq!(moore_homotopy(&t(), 5, -1).group(), Some(&AbelianGroup::trivial()));
        assert!(!moore_homotopy(&t(), 3, 5).is_known());
    }

    #[test]
    fn local_data_is_used_for_prime_powers() {
        assert_eq!(moore_homotopy(&t(), 3, 22).group(), Some(&AbelianGroup::trivial()));
        assert_eq!(moore_homotopy(&t(), 9, 34).group(), Some(&AbelianGroup::trivial()));
        assert!(!moore_homotopy(&t(), 6, 22).is_known());
        assert!(!moore_homotopy(&t(), 2, 22).is_known());
    }

    #[test]
    fn endomorphisms() {
        for n in [3, 5, 7, 9, 15] {
            let e = moore_endomorphisms(&t(), n);
            assert_eq!(e.group.group(), Some(&AbelianGroup::cyclic(n)));
            assert_eq!(e.identity_order, Some(n));
            assert!(positive_n_order(n, n));
        }
        let e = moore_endomorphisms(&t(), 2);
        assert_eq!(e.group.group(), Some(&AbelianGroup::cyclic(4)));
        assert!(!positive_n_order(e.identity_order.unwrap(), 2));
        let e4 = moore_endomorphisms(&t(), 4);
        assert_eq!(e4.group.order(), Some(8));
        assert!(e4.group.group().is_none());
    }

    #[test]
    fn associator() {
        for n in [5, 7, 25, 35] {
            assert_eq!(associator_obstruction(&t(), n).is_trivial(), Some(true), "n = {n}");
        }
        assert_eq!(associator_obstruction(&t(), 3).group(), Some(&AbelianGroup::cyclic(3)));
        let two = associator_obstruction(&t(), 2);
        assert_eq!(two.order(), Some(4));
        assert_eq!(two.is_trivial(), Some(false));
    }
}
