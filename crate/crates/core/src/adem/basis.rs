use super::{Generator, Monomial};
use crate::prime::Prime;

/// All admissible monomials of the given degree, in descending
/// lexicographic order of exponent sequences.
pub fn admissible_basis(p: Prime, degree: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    if degree < 0 {
        return out;
    }
    let mut word = Vec::new();
    if p.is_odd() {
        odd_after_power(p, degree, None, &mut word, &mut out);
    } else {
        two(degree as u32, u32::MAX, &mut word, &mut out);
    }
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn two(remaining: u32, max: u32, word: &mut Vec<Generator>, out: &mut Vec<Monomial>) {
    if remaining == 0 {
        out.push(Monomial::new(word.clone()));
        return;
    }
    for i in 1..=remaining.min(max) {
        word.push(Generator::Sq(i));
        two(remaining - i, i / 2, word, out);
        word.pop();
    }
}

/// Choose the Bockstein exponent following the last reduced power `last`
/// (or the leading one when `last` is None), then stop or place the next power.
fn odd_after_power(p: Prime, remaining: i64, last: Option<u32>, word: &mut Vec<Generator>, out: &mut Vec<Monomial>) {
    let step = 2 * (p.value() as i64 - 1);
    for eps in 0..=1u32 {
        let rem = remaining - eps as i64;
        if rem < 0 {
            continue;
        }
        if eps == 1 {
            word.push(Generator::Bockstein);
        }
        if rem == 0 {
            out.push(Monomial::new(word.clone()));
        } else {
            let mut max_s = (rem / step) as u32;
            if let Some(s) = last {
                // s ≥ p s' + ε
                max_s = max_s.min(s.saturating_sub(eps) / p.value());
            }
            for s in 1..=max_s {
                word.push(Generator::P(s));
                odd_after_power(p, rem - s as i64 * step, Some(s), word, out);
                word.pop();
            }
        }
        if eps == 1 {
            word.pop();
        }
    }
}
