//! The mod-p Steenrod algebra as formal sums of generator words.
//!
//! Elements are kept as free words; [`normalize`] rewrites them into the
//! admissible basis with the Adem relations. Words act on the left, so the
//! word `[Sq2, Sq1]` means "apply Sq^1, then Sq^2".

mod basis;
mod parse;
mod relations;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

pub use basis::admissible_basis;
pub use parse::parse_expression;
pub use relations::{adem_pair, binomial_mod_p, normalize, Expansion};

use crate::error::{Error, Result};
use crate::prime::Prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// Sq^i, p = 2 only. The index is positive.
    Sq(u32),
    /// P^i, odd p only. The index is positive.
    P(u32),
    /// β, odd p only.
    Bockstein,
}

impl Generator {
    pub fn degree(self, p: Prime) -> i64 {
        match self {
            Generator::Sq(i) => i as i64,
            Generator::P(i) => 2 * i as i64 * (p.value() as i64 - 1),
            Generator::Bockstein => 1,
        }
    }

    pub fn check_prime(self, p: Prime) -> Result<()> {
        let ok = match self {
            Generator::Sq(i) => !p.is_odd() && i > 0,
            Generator::P(i) => p.is_odd() && i > 0,
            Generator::Bockstein => p.is_odd(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::GeneratorPrime { generator: self.to_string(), prime: p })
        }
    }

    /// The Bockstein at p: Sq^1 for p = 2, β otherwise.
    pub fn bockstein(p: Prime) -> Generator {
        if p.is_odd() {
            Generator::Bockstein
        } else {
            Generator::Sq(1)
        }
    }

    /// All generators of degree at most `max_degree`.
    pub fn up_to_degree(p: Prime, max_degree: i64) -> Vec<Generator> {
        let mut out = Vec::new();
        if p.is_odd() {
            if max_degree >= 1 {
                out.push(Generator::Bockstein);
            }
            let step = 2 * (p.value() as i64 - 1);
            out.extend((1..).take_while(|&i| i as i64 * step <= max_degree).map(Generator::P));
        } else {
            out.extend((1..).take_while(|&i| i as i64 <= max_degree).map(Generator::Sq));
        }
        out
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Sq(i) => write!(f, "Sq^{i}"),
            Generator::P(i) => write!(f, "P^{i}"),
            Generator::Bockstein => write!(f, "b"),
        }
    }
}

/// A word in the generators. The empty word is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    word: Vec<Generator>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial { word: Vec::new() }
    }

    pub fn new(word: Vec<Generator>) -> Self {
        Monomial { word }
    }

    pub fn word(&self) -> &[Generator] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn degree(&self, p: Prime) -> i64 {
        self.word.iter().map(|g| g.degree(p)).sum()
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Monomial { word }
    }

    /// Exponent sequence: `(i_1, ..., i_k)` at p = 2 and
    /// `(ε_0, s_1, ε_1, ..., s_k, ε_k)` at odd p, where ε counts the
    /// Bocksteins sitting between consecutive reduced powers.
    pub fn exponents(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(2 * self.word.len() + 1);
        let mut pending = 0u32;
        let mut odd = false;
        for g in &self.word {
            match *g {
                Generator::Sq(i) => out.push(i),
                Generator::Bockstein => {
                    odd = true;
                    pending += 1;
                }
                Generator::P(s) => {
                    odd = true;
                    out.push(pending);
                    out.push(s);
                    pending = 0;
                }
            }
        }
        if odd {
            out.push(pending);
        }
        out
    }

    pub fn is_admissible(&self, p: Prime) -> bool {
        if p.is_odd() {
            let mut last_p: Option<u32> = None;
            let mut betas = 0u32;
            for g in &self.word {
                match *g {
                    Generator::Sq(_) => return false,
                    Generator::Bockstein => {
                        betas += 1;
                        if betas > 1 {
                            return false;
                        }
                    }
                    Generator::P(s) => {
                        if let Some(prev) = last_p {
                            if prev < p.value() * s + betas {
                                return false;
                            }
                        }
                        last_p = Some(s);
                        betas = 0;
                    }
                }
            }
            true
        } else {
            self.word.iter().all(|g| matches!(g, Generator::Sq(_)))
                && self.word.windows(2).all(|w| match (w[0], w[1]) {
                    (Generator::Sq(a), Generator::Sq(b)) => a >= 2 * b,
                    _ => false,
                })
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exponents().cmp(&other.exponents())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (i, g) in self.word.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Degree of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    /// The zero element lives in every degree.
    Any,
    Homogeneous(i64),
    NonHomogeneous,
}

/// A finite F_p-linear combination of words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SteenrodElement {
    prime: Prime,
    terms: BTreeMap<Monomial, u32>,
}

impl SteenrodElement {
    pub fn zero(p: Prime) -> Self {
        SteenrodElement { prime: p, terms: BTreeMap::new() }
    }

    pub fn unit(p: Prime) -> Self {
        Self::from_monomial(p, Monomial::unit(), 1)
    }

    fn from_monomial(p: Prime, m: Monomial, coeff: u32) -> Self {
        let mut e = Self::zero(p);
        e.add_term(m, coeff);
        e
    }

    /// A single word with coefficient one.
    pub fn word(p: Prime, word: &[Generator]) -> Result<Self> {
        Self::term(p, 1, word)
    }

    pub fn term(p: Prime, coeff: i64, word: &[Generator]) -> Result<Self> {
        for g in word {
            g.check_prime(p)?;
        }
        Ok(Self::from_monomial(p, Monomial::new(word.to_vec()), p.reduce(coeff)))
    }

    pub fn generator(p: Prime, g: Generator) -> Result<Self> {
        Self::word(p, &[g])
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, u32)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, coeff: u32) {
        let p = self.prime;
        let c = coeff % p.value();
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = p.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_same_prime(&self, other: &Self) -> Result<()> {
        if self.prime == other.prime {
            Ok(())
        } else {
            Err(Error::PrimeMismatch(self.prime, other.prime))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_prime(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(self.prime.value() - 1))
    }

    pub fn scale(&self, c: u32) -> Self {
        let mut out = Self::zero(self.prime);
        for (m, k) in self.terms() {
            out.add_term(m.clone(), self.prime.mul(k, c));
        }
        out
    }

    /// Free product: bilinear concatenation of words. No normalization.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same_prime(other)?;
        let p = self.prime;
        let mut out = Self::zero(p);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(a.concat(b), p.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::unit(self.prime);
        for _ in 0..n {
            acc = acc.multiply(self).expect("same prime");
        }
        acc
    }

    pub fn degree(&self) -> Degree {
        let mut it = self.terms.keys().map(|m| m.degree(self.prime));
        let Some(first) = it.next() else {
            return Degree::Any;
        };
        if it.all(|d| d == first) {
            Degree::Homogeneous(first)
        } else {
            Degree::NonHomogeneous
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.terms.keys().all(|m| m.is_admissible(self.prime))
    }

    /// Split into homogeneous pieces, keyed by degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<i64, SteenrodElement> {
        let mut out: BTreeMap<i64, SteenrodElement> = BTreeMap::new();
        for (m, c) in self.terms() {
            out.entry(m.degree(self.prime)).or_insert_with(|| Self::zero(self.prime)).add_term(m.clone(), c);
        }
        out
    }
}

/// Printed with the larger exponent sequences first.
impl fmt::Display for SteenrodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (c, m.is_empty()) {
                (1, _) => write!(f, "{m}")?,
                (_, true) => write!(f, "{c}")?,
                _ => write!(f, "{c} {m}")?,
            }
        }
        Ok(())
    }
}
