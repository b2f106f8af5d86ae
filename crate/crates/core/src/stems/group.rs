use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// A cyclic factor: Z or Z/m with m ≥ 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FactorRepr", into = "FactorRepr")]
pub enum Factor {
    Z,
    Cyclic(u64),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FactorRepr {
    Order(u64),
    Marker(String),
}

impl TryFrom<FactorRepr> for Factor {
    type Error = String;
    fn try_from(r: FactorRepr) -> Result<Self, String> {
        match r {
            FactorRepr::Order(m) if m >= 1 => Ok(Factor::Cyclic(m)),
            FactorRepr::Order(m) => Err(format!("cyclic order must be positive, got {m}")),
            FactorRepr::Marker(s) if s == "Z" => Ok(Factor::Z),
            FactorRepr::Marker(s) => Err(format!("expected an order or \"Z\", got \"{s}\"")),
        }
    }
}

impl From<Factor> for FactorRepr {
    fn from(f: Factor) -> Self {
        match f {
            Factor::Z => FactorRepr::Marker("Z".into()),
            Factor::Cyclic(m) => FactorRepr::Order(m),
        }
    }
}

/// A finitely generated abelian group in invariant-factor form:
/// Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k with 1 < d_1 | d_2 | ... | d_k.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Factor>", into = "Vec<Factor>")]
pub struct AbelianGroup {
    rank: usize,
    torsion: Vec<u64>,
}

impl From<Vec<Factor>> for AbelianGroup {
    fn from(f: Vec<Factor>) -> Self {
        AbelianGroup::from_factors(f)
    }
}

impl From<AbelianGroup> for Vec<Factor> {
    fn from(g: AbelianGroup) -> Self {
        g.factors()
    }
}

fn prime_powers(mut m: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q) {
            let mut pk = 1;
            while m.is_multiple_of(q) {
                m /= q;
                pk *= q;
            }
            out.push((q, pk));
        }
        q += 1;
    }
    if m > 1 {
        out.push((m, m));
    }
    out
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn z() -> Self {
        AbelianGroup { rank: 1, torsion: Vec::new() }
    }

    pub fn cyclic(m: u64) -> Self {
        Self::from_factors([Factor::Cyclic(m)])
    }

    /// Canonicalizes an arbitrary list of cyclic factors.
    pub fn from_factors(factors: impl IntoIterator<Item = Factor>) -> Self {
        let mut rank = 0;
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for f in factors {
            match f {
                Factor::Z => rank += 1,
                Factor::Cyclic(m) => {
                    for (q, pk) in prime_powers(m) {
                        by_prime.entry(q).or_default().push(pk);
                    }
                }
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut torsion = vec![1u64; len];
        for powers in by_prime.values_mut() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            for (i, &pk) in powers.iter().enumerate() {
                torsion[len - 1 - i] *= pk;
            }
        }
        AbelianGroup { rank, torsion }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Invariant factors of the torsion subgroup, ascending.
    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    /// Z factors first, then the invariant factors.
    pub fn factors(&self) -> Vec<Factor> {
        std::iter::repeat_n(Factor::Z, self.rank).chain(self.torsion.iter().map(|&m| Factor::Cyclic(m))).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn is_cyclic(&self) -> bool {
        self.rank + self.torsion.len() <= 1
    }

    /// None for infinite groups.
    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_factors(self.factors().into_iter().chain(other.factors()))
    }

    /// The q-primary part of the torsion subgroup.
    pub fn p_primary(&self, q: u64) -> Self {
        Self::from_factors(self.torsion.iter().map(|&m| {
            let mut pk = 1;
            let mut r = m;
            while r % q == 0 {
                r /= q;
                pk *= q;
            }
            Factor::Cyclic(pk)
        }))
    }

    /// G ⊗ Z/n.
    pub fn tensor_mod(&self, n: u64) -> Self {
        Self::from_factors(self.factors().into_iter().map(|f| match f {
            Factor::Z => Factor::Cyclic(n),
            Factor::Cyclic(m) => Factor::Cyclic(m.gcd(&n)),
        }))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .factors()
            .into_iter()
            .map(|x| match x {
                Factor::Z => "Z".to_string(),
                Factor::Cyclic(m) => format!("Z/{m}"),
            })
            .collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// Kernel and cokernel of multiplication by n, factor by factor.
/// On Z/m both have order gcd(n, m); on Z (n ≠ 0) the kernel is 0 and the
/// cokernel Z/n.
pub fn mult_by_n(g: &AbelianGroup, n: u64) -> (AbelianGroup, AbelianGroup) {
    if n == 0 {
        return (g.clone(), g.clone());
    }
    let mut ker = Vec::new();
    let mut coker = Vec::new();
    for f in g.factors() {
        match f {
            Factor::Z => coker.push(Factor::Cyclic(n)),
            Factor::Cyclic(m) => {
                ker.push(Factor::Cyclic(m.gcd(&n)));
                coker.push(Factor::Cyclic(m.gcd(&n)));
            }
        }
    }
    (AbelianGroup::from_factors(ker), AbelianGroup::from_factors(coker))
}
