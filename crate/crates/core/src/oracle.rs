//! Polynomial oracle for the Steenrod action.
//!
//! At p = 2 the algebra is F_2[x_1..x_k] with |x_j| = 1 and
//! `Sq(x) = x + x^2`. At odd p it is Λ(y_1..y_k) ⊗ F_p[x_1..x_k] with
//! |y_j| = 1, |x_j| = 2, `β y = x`, `P(x) = x + x^p` and `P(y) = y`.
//! Operations act letter by letter, right to left, through the Cartan
//! formula; no Adem relation is used anywhere in this module.
//!
//! Comparisons run on the single test class `u = Π y_j · Π x_j^(q^N - 1)`
//! (no y at p = 2), where `q^N` exceeds the operation degree so that every
//! binomial `C(q^N - 1, t)` is a unit. [`faithful_in_degree`] checks that
//! the admissible basis maps injectively under `θ ↦ θ(u)`, which is what
//! makes [`oracle_equal`] an equality test and not just a necessary
//! condition.

use std::collections::BTreeMap;
use std::fmt;

use crate::adem::{admissible_basis, Degree, Generator, SteenrodElement};
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::prime::Prime;

/// A monomial `y^S x^e`: `exterior` is a bitmask over the y's (odd p only).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OracleMonomial {
    pub exterior: u64,
    pub exponents: Vec<u32>,
}

impl OracleMonomial {
    pub fn degree(&self, p: Prime) -> i64 {
        let w = if p.is_odd() { 2 } else { 1 };
        self.exterior.count_ones() as i64 + w * self.exponents.iter().map(|&e| e as i64).sum::<i64>()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleElement {
    prime: Prime,
    terms: BTreeMap<OracleMonomial, u32>,
}

/// The polynomial (tensor exterior) algebra on k generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleAlgebra {
    prime: Prime,
    generators: usize,
}

impl OracleAlgebra {
    pub fn new(prime: Prime, generators: usize) -> Self {
        assert!(generators <= 64, "at most 64 generators");
        OracleAlgebra { prime, generators }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn one(&self) -> OracleElement {
        self.monomial(0, vec![0; self.generators])
    }

    pub fn monomial(&self, exterior: u64, exponents: Vec<u32>) -> OracleElement {
        assert_eq!(exponents.len(), self.generators);
        assert!(self.prime.is_odd() || exterior == 0, "no exterior classes at p = 2");
        let mut terms = BTreeMap::new();
        terms.insert(OracleMonomial { exterior, exponents }, 1);
        OracleElement { prime: self.prime, terms }
    }

    /// x_j (degree 1 at p = 2, degree 2 at odd p).
    pub fn x(&self, j: usize) -> OracleElement {
        let mut e = vec![0; self.generators];
        e[j] = 1;
        self.monomial(0, e)
    }

    /// y_j (odd p only).
    pub fn y(&self, j: usize) -> OracleElement {
        self.monomial(1 << j, vec![0; self.generators])
    }
}

impl OracleElement {
    pub fn zero(prime: Prime) -> Self {
        OracleElement { prime, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OracleMonomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &OracleMonomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    fn add_term(&mut self, m: OracleMonomial, c: u32) {
        let p = self.prime;
        if c.is_multiple_of(p.value()) {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert(0);
        *slot = p.add(*slot, c);
        if *slot == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &OracleElement) -> OracleElement {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: u32) -> OracleElement {
        let mut out = OracleElement::zero(self.prime);
        for (m, k) in self.terms() {
            out.add_term(m.clone(), self.prime.mul(k, c));
        }
        out
    }

    /// Graded-commutative product.
    pub fn mul(&self, other: &OracleElement) -> OracleElement {
        let p = self.prime;
        let mut out = OracleElement::zero(p);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                if a.exterior & b.exterior != 0 {
                    continue;
                }
                // move each y of b left past the larger y's of a
                let swaps: u32 =
                    (0..64).filter(|j| b.exterior >> j & 1 == 1).map(|j| (a.exterior >> j >> 1).count_ones()).sum();
                let mut c = p.mul(ca, cb);
                if swaps % 2 == 1 {
                    c = p.neg(c);
                }
                let exponents = a.exponents.iter().zip(&b.exponents).map(|(x, y)| x + y).collect();
                out.add_term(OracleMonomial { exterior: a.exterior | b.exterior, exponents }, c);
            }
        }
        out
    }

    /// Homogeneous pieces by degree.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.terms.keys().map(|m| m.degree(self.prime)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

impl fmt::Display for OracleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c != 1 {
                write!(f, "{c} ")?;
            }
            let mut parts = Vec::new();
            for j in 0..m.exponents.len() {
                if m.exterior >> j & 1 == 1 {
                    parts.push(format!("y{}", j + 1));
                }
            }
            for (j, &e) in m.exponents.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(format!("x{}", j + 1)),
                    _ => parts.push(format!("x{}^{e}", j + 1)),
                }
            }
            if parts.is_empty() {
                write!(f, "1")?;
            } else {
                write!(f, "{}", parts.join(" "))?;
            }
        }
        Ok(())
    }
}

/// C(n, k) mod p by Lucas, kept separate from the rewriting engine.
fn lucas(mut n: u32, mut k: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    while k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        // C(nd, kd) < p-adic digit sizes stay tiny; compute exactly
        let mut c = 1u64;
        for i in 0..kd as u64 {
            c = c * (nd as u64 - i) / (i + 1);
        }
        acc = acc * (c % p as u64) % p as u64;
        n /= p;
        k /= p;
    }
    acc as u32
}

/// Σ_{|t| = i} Π C(e_j, t_j) x^(e + step·t): the i-th component of the
/// total operation x ↦ x + x^(step+1) on a pure polynomial monomial.
fn total_power_component(p: Prime, exps: &[u32], i: u32, step: u32, out: &mut Vec<(Vec<u32>, u32)>) {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        p: Prime,
        exps: &[u32],
        j: usize,
        left: u32,
        step: u32,
        cur: &mut Vec<u32>,
        coeff: u32,
        out: &mut Vec<(Vec<u32>, u32)>,
    ) {
        if j == exps.len() {
            if left == 0 {
                out.push((cur.clone(), coeff));
            }
            return;
        }
        let e = exps[j];
        let remaining_capacity: u32 = exps[j + 1..].iter().sum();
        let lo = left.saturating_sub(remaining_capacity);
        for t in lo..=left.min(e) {
            let b = lucas(e, t, p.value());
            if b == 0 {
                continue;
            }
            cur[j] = e + step * t;
            rec(p, exps, j + 1, left - t, step, cur, p.mul(coeff, b), out);
        }
        cur[j] = e;
    }
    let mut cur = exps.to_vec();
    rec(p, exps, 0, i, step, &mut cur, 1, out);
}

fn act_generator(g: Generator, v: &OracleElement) -> OracleElement {
    let p = v.prime;
    let mut out = OracleElement::zero(p);
    let mut buf = Vec::new();
    for (m, c) in v.terms() {
        match g {
            Generator::Sq(i) | Generator::P(i) => {
                buf.clear();
                total_power_component(p, &m.exponents, i, p.value() - 1, &mut buf);
                for (exps, k) in buf.drain(..) {
                    out.add_term(OracleMonomial { exterior: m.exterior, exponents: exps }, p.mul(c, k));
                }
            }
            Generator::Bockstein => {
                // β(y_{i1} ... y_{im} x^e) = Σ_r (-1)^(r-1) y_{i1}..ŷ_{ir}..y_{im} x_{ir} x^e
                let mut r = 0u32;
                for j in 0..m.exponents.len() {
                    if m.exterior >> j & 1 == 0 {
                        continue;
                    }
                    let mut exps = m.exponents.clone();
                    exps[j] += 1;
                    let k = if r.is_multiple_of(2) { c } else { p.neg(c) };
                    out.add_term(OracleMonomial { exterior: m.exterior & !(1 << j), exponents: exps }, k);
                    r += 1;
                }
            }
        }
    }
    out
}

/// Action of an arbitrary (not necessarily admissible) element.
pub fn act(op: &SteenrodElement, v: &OracleElement) -> Result<OracleElement> {
    if op.prime() != v.prime {
        return Err(Error::PrimeMismatch(op.prime(), v.prime));
    }
    let mut out = OracleElement::zero(v.prime);
    for (m, c) in op.terms() {
        let mut w = v.clone();
        for &g in m.word().iter().rev() {
            if w.is_zero() {
                break;
            }
            w = act_generator(g, &w);
        }
        out = out.add(&w.scale(c));
    }
    Ok(out)
}

/// Number of generators used by the test class for operations of degree
/// at most `max_degree`: one per Milnor generator (ξ_i, and τ_i at odd p)
/// of degree ≤ max_degree, and at least one.
pub fn generators_for_degree(p: Prime, max_degree: i64) -> usize {
    let q = p.value() as i64;
    let mut k = 0usize;
    let mut pow = q;
    loop {
        let xi = if p.is_odd() { 2 * pow - 2 } else { pow - 1 };
        if xi > max_degree {
            break;
        }
        k += 1;
        pow *= q;
    }
    if p.is_odd() {
        let mut pow = 1i64;
        let mut taus = 0usize;
        while 2 * pow - 1 <= max_degree {
            taus += 1;
            pow *= q;
        }
        k = k.max(taus);
    }
    k.max(1)
}

/// The test class `u` for operations of degree ≤ max_degree.
pub fn test_class(p: Prime, max_degree: i64) -> OracleElement {
    let k = generators_for_degree(p, max_degree);
    let alg = OracleAlgebra::new(p, k);
    let q = p.value() as i64;
    // need q^N - 1 ≥ largest possible t, which is at most the operation index
    let mut pow = q;
    while pow - 1 < max_degree.max(1) {
        pow *= q;
    }
    let e = (pow - 1) as u32;
    let exterior = if p.is_odd() { (1u64 << k) - 1 } else { 0 };
    alg.monomial(exterior, vec![e; k])
}

/// Whether `θ ↦ θ(u)` is injective on the admissible basis in this degree.
pub fn faithful_in_degree(p: Prime, degree: i64, u: &OracleElement) -> bool {
    let basis = admissible_basis(p, degree);
    let images: Vec<OracleElement> = basis
        .iter()
        .map(|m| act(&SteenrodElement::word(p, m.word()).expect("valid word"), u).expect("same prime"))
        .collect();
    let mut index: BTreeMap<&OracleMonomial, usize> = BTreeMap::new();
    for img in &images {
        for (m, _) in img.terms() {
            let n = index.len();
            index.entry(m).or_insert(n);
        }
    }
    let mut span = Subspace::zero(p, index.len());
    images.iter().all(|img| {
        let mut v = vec![0u32; index.len()];
        for (m, c) in img.terms() {
            v[index[m]] = c;
        }
        span.add_vector(&v)
    })
}

/// Whether a and b act identically on the test class for `max_degree`.
///
/// Each homogeneous piece is compared separately. Operations of degree
/// above `max_degree` are outside the verified range and make this an
/// error.
pub fn oracle_equal(a: &SteenrodElement, b: &SteenrodElement, max_degree: i64) -> Result<bool> {
    if a.prime() != b.prime() {
        return Err(Error::PrimeMismatch(a.prime(), b.prime()));
    }
    let p = a.prime();
    for e in [a, b] {
        if let Degree::Homogeneous(d) = e.degree() {
            if d > max_degree {
                return Err(Error::OracleRange { degree: d, max_degree });
            }
        }
    }
    let u = test_class(p, max_degree);
    let (pa, pb) = (a.homogeneous_parts(), b.homogeneous_parts());
    let degrees: std::collections::BTreeSet<i64> = pa.keys().chain(pb.keys()).copied().collect();
    for d in degrees {
        if d > max_degree {
            return Err(Error::OracleRange { degree: d, max_degree });
        }
        let zero = SteenrodElement::zero(p);
        let x = pa.get(&d).unwrap_or(&zero);
        let y = pb.get(&d).unwrap_or(&zero);
        if act(x, &u)? != act(y, &u)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adem::{normalize, parse_expression};

    #[test]
    fn sq1_on_product_of_two_classes() {
        let alg = OracleAlgebra::new(Prime::TWO, 2);
        let v = alg.x(0).mul(&alg.x(1));
        let sq1 = parse_expression("Sq^1", Prime::TWO).unwrap();
        let expected = alg.monomial(0, vec![2, 1]).add(&alg.monomial(0, vec![1, 2]));
        assert_eq!(act(&sq1, &v).unwrap(), expected);

        let sq2 = parse_expression("Sq^2", Prime::TWO).unwrap();
        assert_eq!(act(&sq2, &v).unwrap(), alg.monomial(0, vec![2, 2]));
    }

    #[test]
    fn sq1_squared_vanishes() {
        let alg = OracleAlgebra::new(Prime::TWO, 3);
        let w = parse_expression("Sq^1 Sq^1", Prime::TWO).unwrap();
        for e in [vec![1, 0, 0], vec![3, 1, 0], vec![2, 5, 7], vec![1, 1, 1]] {
            assert!(act(&w, &alg.monomial(0, e)).unwrap().is_zero());
        }
    }

    #[test]
    fn odd_generators() {
        let p = Prime::THREE;
        let alg = OracleAlgebra::new(p, 2);
        let b = parse_expression("b", p).unwrap();
        assert_eq!(act(&b, &alg.y(0)).unwrap(), alg.x(0));
        assert!(act(&b, &alg.x(0)).unwrap().is_zero());
        let p1 = parse_expression("P^1", p).unwrap();
        assert_eq!(act(&p1, &alg.x(0)).unwrap(), alg.monomial(0, vec![3, 0]));
        assert!(act(&parse_expression("P^2", p).unwrap(), &alg.x(0)).unwrap().is_zero());
        assert!(act(&p1, &alg.y(0)).unwrap().is_zero());
        // β(y1 y2) = x1 y2 - y1 x2
        let v = alg.y(0).mul(&alg.y(1));
        let expected = alg.x(0).mul(&alg.y(1)).add(&alg.y(0).mul(&alg.x(1)).scale(2));
        assert_eq!(act(&b, &v).unwrap(), expected);
        assert!(act(&parse_expression("b b", p).unwrap(), &v).unwrap().is_zero());
    }

    #[test]
    fn exterior_signs() {
        let alg = OracleAlgebra::new(Prime::THREE, 2);
        let yx = alg.y(1).mul(&alg.y(0));
        let xy = alg.y(0).mul(&alg.y(1));
        assert_eq!(yx, xy.scale(2));
        assert!(alg.y(0).mul(&alg.y(0)).is_zero());
    }

    #[test]
    fn examples_from_relations() {
        let p2 = Prime::TWO;
        let a = parse_expression("Sq^2 Sq^2", p2).unwrap();
        let b = parse_expression("Sq^3 Sq^1", p2).unwrap();
        assert!(oracle_equal(&a, &b, 8).unwrap());
        let c = parse_expression("Sq^4", p2).unwrap();
        assert!(!oracle_equal(&a, &c, 8).unwrap());
        let s = parse_expression("Sq^1", p2).unwrap();
        assert!(oracle_equal(&s, &s, 3).unwrap());

        let p3 = Prime::THREE;
        let lhs = parse_expression("(P^3)^3", p3).unwrap();
        let rhs = parse_expression("(P^7 P^1 - P^8) P^1", p3).unwrap();
        assert!(oracle_equal(&lhs, &rhs, 40).unwrap());
        assert!(!oracle_equal(&lhs, &parse_expression("P^9", p3).unwrap(), 40).unwrap());
    }

    #[test]
    fn degree_outside_range_is_rejected() {
        let a = parse_expression("Sq^9", Prime::TWO).unwrap();
        assert!(oracle_equal(&a, &a, 8).is_err());
    }

    #[test]
    fn faithful_on_admissible_basis() {
        for (p, max) in [(Prime::TWO, 30), (Prime::THREE, 40), (Prime::FIVE, 30)] {
            let u = test_class(p, max);
            for d in 0..=max {
                assert!(faithful_in_degree(p, d, &u), "p={p} degree {d}");
            }
        }
    }

    #[test]
    fn normalization_agrees_on_small_words() {
        let p2 = Prime::TWO;
        for a in 1..8u32 {
            for b in 1..8u32 {
                let w = SteenrodElement::word(p2, &[Generator::Sq(a), Generator::Sq(b)]).unwrap();
                assert!(oracle_equal(&w, &normalize(&w), 16).unwrap(), "Sq^{a} Sq^{b}");
            }
        }
    }
}
