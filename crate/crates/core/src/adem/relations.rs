//! Adem relations and the rewriting normal form.
//!
//! For p = 2 and a < 2b:
//!
//! ```text
//! Sq^a Sq^b = Σ_{c=0}^{⌊a/2⌋} C(b-c-1, a-2c) Sq^{a+b-c} Sq^c
//! ```
//!
//! For odd p and a < pb:
//!
//! ```text
//! P^a P^b = Σ_t (-1)^{a+t} C((p-1)(b-t)-1, a-pt) P^{a+b-t} P^t
//! ```
//!
//! and for a ≤ pb:
//!
//! ```text
//! P^a β P^b = Σ_t (-1)^{a+t}   C((p-1)(b-t),   a-pt)   β P^{a+b-t} P^t
//!           + Σ_t (-1)^{a+t+1} C((p-1)(b-t)-1, a-pt-1) P^{a+b-t} β P^t
//! ```
//!
//! together with β β = 0. Sq^0 and P^0 are the unit and are dropped.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::{Generator, Monomial, SteenrodElement};
use crate::prime::Prime;

/// Binomial coefficient mod p.
///
/// Zero for k < 0. For n ≥ 0 this is Lucas' theorem; for n < 0 the
/// polynomial convention C(n, k) = (-1)^k C(k-n-1, k) is used.
pub fn binomial_mod_p(n: i64, k: i64, p: Prime) -> u32 {
    if k < 0 {
        return 0;
    }
    if n < 0 {
        let c = binomial_mod_p(k - n - 1, k, p);
        return if k % 2 == 0 { c } else { p.neg(c) };
    }
    if k > n {
        return 0;
    }
    let q = p.value() as i64;
    let (mut n, mut k) = (n, k);
    let mut acc = 1u32;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % q, k % q);
        if kd > nd {
            return 0;
        }
        acc = p.mul(acc, small_binomial(nd as u32, kd as u32, p));
        n /= q;
        k /= q;
    }
    acc
}

/// C(n, k) mod p for 0 ≤ k ≤ n < p.
fn small_binomial(n: u32, k: u32, p: Prime) -> u32 {
    let k = k.min(n - k);
    let (mut num, mut den) = (1u32, 1u32);
    for i in 0..k {
        num = p.mul(num, n - i);
        den = p.mul(den, i + 1);
    }
    p.mul(num, p.inv(den))
}

fn sign(exp: i64, p: Prime) -> u32 {
    if exp.rem_euclid(2) == 0 {
        1
    } else {
        p.value() - 1
    }
}

fn push_word(out: &mut Vec<(Vec<Generator>, u32)>, coeff: u32, word: Vec<Generator>) {
    if coeff != 0 {
        out.push((word, coeff));
    }
}

fn power(s: u32) -> Option<Generator> {
    (s > 0).then_some(Generator::P(s))
}

fn square(s: u32) -> Option<Generator> {
    (s > 0).then_some(Generator::Sq(s))
}

/// Words with coefficients replacing an inadmissible pattern.
pub type Expansion = Vec<(Vec<Generator>, u32)>;

/// Admissible expansion of a single inadmissible pattern at the start of
/// `word`, together with the number of letters it replaces. Returns `None`
/// when the word does not start with an inadmissible pattern.
pub fn adem_pair(p: Prime, word: &[Generator]) -> Option<(usize, Expansion)> {
    use Generator::*;
    let mut out = Vec::new();
    match word {
        [Sq(a), Sq(b), ..] if *a < 2 * *b => {
            let (a, b) = (*a as i64, *b as i64);
            for c in 0..=a / 2 {
                let coeff = binomial_mod_p(b - c - 1, a - 2 * c, p);
                let w = [square((a + b - c) as u32), square(c as u32)].into_iter().flatten().collect();
                push_word(&mut out, coeff, w);
            }
            Some((2, out))
        }
        [Bockstein, Bockstein, ..] => Some((2, out)),
        [P(a), P(b), ..] if *a < p.value() * *b => {
            let (a, b, q) = (*a as i64, *b as i64, p.value() as i64);
            for t in 0..=a / q {
                let coeff = p.mul(sign(a + t, p), binomial_mod_p((q - 1) * (b - t) - 1, a - q * t, p));
                let w = [power((a + b - t) as u32), power(t as u32)].into_iter().flatten().collect();
                push_word(&mut out, coeff, w);
            }
            Some((2, out))
        }
        [P(a), Bockstein, P(b), ..] if *a <= p.value() * *b => {
            let (a, b, q) = (*a as i64, *b as i64, p.value() as i64);
            for t in 0..=a / q {
                let c1 = p.mul(sign(a + t, p), binomial_mod_p((q - 1) * (b - t), a - q * t, p));
                let w1 = [Some(Bockstein), power((a + b - t) as u32), power(t as u32)].into_iter().flatten().collect();
                push_word(&mut out, c1, w1);
                let c2 = p.mul(sign(a + t + 1, p), binomial_mod_p((q - 1) * (b - t) - 1, a - q * t - 1, p));
                let w2 = [power((a + b - t) as u32), Some(Bockstein), power(t as u32)].into_iter().flatten().collect();
                push_word(&mut out, c2, w2);
            }
            Some((3, out))
        }
        _ => None,
    }
}

/// Leftmost inadmissible pattern of a word, with its expansion.
fn first_rewrite(p: Prime, word: &[Generator]) -> Option<(usize, usize, Expansion)> {
    (0..word.len()).find_map(|i| adem_pair(p, &word[i..]).map(|(len, exp)| (i, len, exp)))
}

/// Rewrite an element into the admissible basis.
///
/// Each step replaces the leftmost inadmissible pattern by its Adem
/// expansion. Like terms are merged in the worklist so that cancellations
/// happen before further rewriting.
pub fn normalize(e: &SteenrodElement) -> SteenrodElement {
    let p = e.prime();
    let mut result = SteenrodElement::zero(p);
    let mut pending: BTreeMap<Vec<Generator>, u32> = BTreeMap::new();
    for (m, c) in e.terms() {
        accumulate(&mut pending, m.word().to_vec(), c, p);
    }
    while let Some((word, coeff)) = pending.pop_last() {
        match first_rewrite(p, &word) {
            None => result.add_term(Monomial::new(word), coeff),
            Some((start, len, expansion)) => {
                for (middle, c) in expansion {
                    let mut w = Vec::with_capacity(word.len() + 1);
                    w.extend_from_slice(&word[..start]);
                    w.extend(middle);
                    w.extend_from_slice(&word[start + len..]);
                    accumulate(&mut pending, w, p.mul(coeff, c), p);
                }
            }
        }
    }
    result
}

fn accumulate(map: &mut BTreeMap<Vec<Generator>, u32>, word: Vec<Generator>, c: u32, p: Prime) {
    if c == 0 {
        return;
    }
    match map.entry(word) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = p.add(*o.get(), c);
            if s == 0 {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}
