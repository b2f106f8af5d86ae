//! Direct-sum decompositions via the endomorphism algebra.
//!
//! M splits iff End(M) is not local. We compute a basis of End(M), its
//! Jacobson radical J from composition series of the homogeneous pieces
//! (J is exactly what acts as zero on every composition factor), and
//! decide locality on the semisimple quotient E/J: it is local iff E/J is
//! a field, i.e. commutative with a one-dimensional space of solutions to
//! x^p = x. When M splits, a splitting comes from Fitting's lemma applied
//! to an endomorphism that is neither nilpotent nor invertible.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::FiniteModule;
use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, Subspace};
use crate::prime::Prime;

pub const DEFAULT_DIMENSION_BOUND: usize = 12;

/// Largest endomorphism algebra the exhaustive idempotent search will walk.
const EXHAUSTIVE_LIMIT: u64 = 1 << 22;

/// A degree-preserving linear map M → M, stored blockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endomorphism {
    prime: Prime,
    blocks: BTreeMap<i64, FpMatrix>,
}

impl Endomorphism {
    pub fn identity(m: &FiniteModule) -> Self {
        Endomorphism {
            prime: m.prime(),
            blocks: m.dims().iter().map(|(&d, &n)| (d, FpMatrix::identity(m.prime(), n))).collect(),
        }
    }

    pub fn zero(m: &FiniteModule) -> Self {
        Endomorphism {
            prime: m.prime(),
            blocks: m.dims().iter().map(|(&d, &n)| (d, FpMatrix::zero(m.prime(), n, n))).collect(),
        }
    }

    pub fn block(&self, degree: i64) -> Option<&FpMatrix> {
        self.blocks.get(&degree)
    }

    pub fn blocks(&self) -> &BTreeMap<i64, FpMatrix> {
        &self.blocks
    }

    fn zip(&self, other: &Self, f: impl Fn(&FpMatrix, &FpMatrix) -> FpMatrix) -> Self {
        Endomorphism {
            prime: self.prime,
            blocks: self.blocks.iter().map(|(d, a)| (*d, f(a, &other.blocks[d]))).collect(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.mul(b))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.sub(b))
    }

    pub fn scale(&self, c: u32) -> Self {
        Endomorphism { prime: self.prime, blocks: self.blocks.iter().map(|(d, a)| (*d, a.scale(c))).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        Endomorphism { prime: self.prime, blocks: self.blocks.iter().map(|(d, a)| (*d, a.pow(e))).collect() }
    }

    pub fn rank(&self) -> usize {
        self.blocks.values().map(FpMatrix::rank).sum()
    }

    pub fn total_dim(&self) -> usize {
        self.blocks.values().map(FpMatrix::rows).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(FpMatrix::is_zero)
    }

    pub fn is_idempotent(&self) -> bool {
        self.compose(self) == *self
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.total_dim() as u32).is_zero()
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.total_dim()
    }

    /// Commutes with every action matrix of `m`.
    pub fn is_module_map(&self, m: &FiniteModule) -> bool {
        m.actions().all(|(g, d, a)| {
            let t = d + g.degree(m.prime());
            self.blocks[&t].mul(a) == a.mul(&self.blocks[&d])
        })
    }

    fn to_vector(&self) -> Vec<u32> {
        self.blocks.values().flat_map(|b| b.entries().iter().copied()).collect()
    }

    fn from_vector(m: &FiniteModule, v: &[u32]) -> Self {
        let p = m.prime();
        let mut at = 0;
        let mut blocks = BTreeMap::new();
        for (&d, &n) in m.dims() {
            let mut b = FpMatrix::zero(p, n, n);
            for i in 0..n {
                for j in 0..n {
                    b.set(i, j, v[at + i * n + j]);
                }
            }
            at += n * n;
            blocks.insert(d, b);
        }
        Endomorphism { prime: p, blocks }
    }

    fn combination(basis: &[Endomorphism], coeffs: &[u32], m: &FiniteModule) -> Self {
        let p = m.prime();
        let mut v = vec![0; basis.first().map_or(0, |b| b.to_vector().len())];
        for (b, &c) in basis.iter().zip(coeffs) {
            if c != 0 {
                for (x, y) in v.iter_mut().zip(b.to_vector()) {
                    *x = p.add(*x, p.mul(c, y));
                }
            }
        }
        Self::from_vector(m, &v)
    }
}

/// Basis of the algebra of degree-preserving maps commuting with every
/// generator action.
pub fn endomorphism_basis(m: &FiniteModule) -> Vec<Endomorphism> {
    let p = m.prime();
    let mut offset = BTreeMap::new();
    let mut vars = 0;
    for (&d, &n) in m.dims() {
        offset.insert(d, vars);
        vars += n * n;
    }
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (g, d, a) in m.actions() {
        let t = d + g.degree(p);
        let (nt, nd) = (m.dim(t), m.dim(d));
        // (f_t a - a f_d)[i][j] = 0
        for i in 0..nt {
            for j in 0..nd {
                let mut row = vec![0i64; vars];
                for l in 0..nt {
                    row[offset[&t] + i * nt + l] += a.get(l, j) as i64;
                }
                for l in 0..nd {
                    row[offset[&d] + l * nd + j] -= a.get(i, l) as i64;
                }
                rows.push(row);
            }
        }
    }
    let kernel = if rows.is_empty() {
        FpMatrix::identity(p, vars).to_rows().into_iter().collect()
    } else {
        FpMatrix::from_rows(p, vars, &rows).kernel()
    };
    kernel.iter().map(|v| Endomorphism::from_vector(m, v)).collect()
}

/// A splitting M ≅ image ⊕ kernel of a nontrivial idempotent.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub idempotent: Endomorphism,
    pub image: FiniteModule,
    pub kernel: FiniteModule,
}

#[derive(Clone, Debug)]
pub enum Decomposition {
    /// End(M) is local (or M = 0, which has no nonzero summands).
    Indecomposable,
    Decomposable(Box<Splitting>),
}

impl Decomposition {
    pub fn is_decomposable(&self) -> bool {
        matches!(self, Decomposition::Decomposable(_))
    }

    pub fn splitting(&self) -> Option<&Splitting> {
        match self {
            Decomposition::Decomposable(s) => Some(s),
            Decomposition::Indecomposable => None,
        }
    }
}

pub fn is_decomposable(m: &FiniteModule) -> Result<Decomposition> {
    is_decomposable_with_bound(m, DEFAULT_DIMENSION_BOUND)
}

pub fn is_decomposable_with_bound(m: &FiniteModule, bound: usize) -> Result<Decomposition> {
    if m.total_dim() > bound {
        return Err(Error::DimensionBound { dim: m.total_dim(), bound });
    }
    if m.total_dim() <= 1 {
        return Ok(Decomposition::Indecomposable);
    }
    let p = m.prime();
    let basis = endomorphism_basis(m);
    let algebra = Algebra::new(m, basis);
    let radical = algebra.radical();
    let top = algebra.dim() - radical.dim();

    if top == 1 {
        return Ok(Decomposition::Indecomposable);
    }
    if algebra.quotient_is_commutative(&radical) {
        let fixed = algebra.frobenius_fixed(&radical);
        if fixed.len() == 1 {
            return Ok(Decomposition::Indecomposable);
        }
        // A fixed element that is not a scalar mod J has two distinct
        // F_p-valued components in E/J; shifting by one of them kills that
        // component only.
        for x in &fixed {
            for c in 0..p.value() {
                let y = x.sub(&Endomorphism::identity(m).scale(c));
                if let Some(s) = fitting_splitting(m, &y) {
                    return Ok(Decomposition::Decomposable(Box::new(s)));
                }
            }
        }
    }
    match algebra.search_witness() {
        Some(s) => Ok(Decomposition::Decomposable(Box::new(s))),
        None => {
            Err(Error::DimensionBound { dim: algebra.dim(), bound: 64 - EXHAUSTIVE_LIMIT.leading_zeros() as usize })
        }
    }
}

/// Independent route: walks every element of End(M) looking for an
/// idempotent other than 0 and 1. Only for small endomorphism algebras.
pub fn is_decomposable_exhaustive(m: &FiniteModule) -> Result<bool> {
    let p = m.prime();
    let basis = endomorphism_basis(m);
    let count = (p.value() as u64).checked_pow(basis.len() as u32).unwrap_or(u64::MAX);
    if count > EXHAUSTIVE_LIMIT {
        return Err(Error::DimensionBound { dim: basis.len(), bound: 64 - EXHAUSTIVE_LIMIT.leading_zeros() as usize });
    }
    let id = Endomorphism::identity(m);
    let mut coeffs = vec![0u32; basis.len()];
    for _ in 0..count {
        let x = Endomorphism::combination(&basis, &coeffs, m);
        if !x.is_zero() && x != id && x.is_idempotent() {
            return Ok(true);
        }
        increment(&mut coeffs, p.value());
    }
    Ok(false)
}

fn increment(v: &mut [u32], base: u32) {
    for x in v.iter_mut() {
        *x += 1;
        if *x < base {
            return;
        }
        *x = 0;
    }
}

/// If `x` is neither nilpotent nor invertible, M = ker x^N ⊕ im x^N.
fn fitting_splitting(m: &FiniteModule, x: &Endomorphism) -> Option<Splitting> {
    let n = m.total_dim();
    let y = x.pow(n as u32);
    let r = y.rank();
    if r == 0 || r == n {
        return None;
    }
    let p = m.prime();
    let mut image_basis = BTreeMap::new();
    let mut kernel_basis = BTreeMap::new();
    let mut idempotent = Endomorphism::zero(m);
    for (&d, b) in y.blocks() {
        let cols: Vec<Vec<u32>> = (0..b.cols()).map(|j| b.column(j)).collect();
        let im = Subspace::span(p, b.rows(), &cols).basis().to_vec();
        let ker = b.kernel();
        let mut all = im.clone();
        all.extend(ker.iter().cloned());
        let c = FpMatrix::from_columns(p, b.rows(), &all);
        let mut diag = FpMatrix::zero(p, b.rows(), b.rows());
        for i in 0..im.len() {
            diag.set(i, i, 1);
        }
        let e = c.mul(&diag).mul(&c.inverse().expect("image and kernel of x^N are complementary"));
        idempotent.blocks.insert(d, e);
        image_basis.insert(d, im);
        kernel_basis.insert(d, ker);
    }
    Some(Splitting { idempotent, image: restrict(m, &image_basis), kernel: restrict(m, &kernel_basis) })
}

/// The submodule spanned degreewise by `basis`, which must be closed under
/// the action.
fn restrict(m: &FiniteModule, basis: &BTreeMap<i64, Vec<Vec<u32>>>) -> FiniteModule {
    let p = m.prime();
    let mut out = FiniteModule::with_dims(p, basis.iter().map(|(&d, b)| (d, b.len())));
    for (g, d, a) in m.actions() {
        let t = d + g.degree(p);
        let (Some(src), Some(tgt)) = (basis.get(&d), basis.get(&t)) else { continue };
        if src.is_empty() || tgt.is_empty() {
            continue;
        }
        let tm = FpMatrix::from_columns(p, m.dim(t), tgt);
        let cols: Vec<Vec<u32>> =
            src.iter().map(|v| tm.solve(&a.apply(v)).expect("submodule is closed under the action")).collect();
        out.set_action(g, d, FpMatrix::from_columns(p, tgt.len(), &cols)).expect("shape matches");
    }
    out
}

struct Algebra<'a> {
    module: &'a FiniteModule,
    basis: Vec<Endomorphism>,
    vectors: Vec<Vec<u32>>,
}

impl<'a> Algebra<'a> {
    fn new(module: &'a FiniteModule, basis: Vec<Endomorphism>) -> Self {
        let vectors = basis.iter().map(Endomorphism::to_vector).collect();
        Algebra { module, basis, vectors }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn prime(&self) -> Prime {
        self.module.prime()
    }

    /// Coordinates of an element of the algebra in `basis`.
    fn coordinates(&self, x: &Endomorphism) -> Vec<u32> {
        let v = x.to_vector();
        FpMatrix::from_columns(self.prime(), v.len(), &self.vectors)
            .solve(&v)
            .expect("element lies in the endomorphism algebra")
    }

    /// J(E) as a subspace of coordinate space: the elements that push
    /// every step of a composition series of every H^d one step down.
    fn radical(&self) -> Subspace {
        let p = self.prime();
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for (&d, &n) in self.module.dims() {
            let ops: Vec<&FpMatrix> = self.basis.iter().map(|b| &b.blocks[&d]).collect();
            let series = composition_series(p, n, &ops);
            for pair in series.windows(2) {
                let (lower, upper) = (&pair[0], &pair[1]);
                for u in upper.basis() {
                    let images: Vec<Vec<u32>> = ops.iter().map(|a| lower.reduce(&a.apply(u))).collect();
                    for i in 0..n {
                        rows.push(images.iter().map(|im| im[i] as i64).collect());
                    }
                }
            }
        }
        let kernel = if rows.is_empty() { Vec::new() } else { FpMatrix::from_rows(p, self.dim(), &rows).kernel() };
        Subspace::span(p, self.dim(), &kernel)
    }

    fn quotient_is_commutative(&self, radical: &Subspace) -> bool {
        for (i, a) in self.basis.iter().enumerate() {
            for b in &self.basis[i + 1..] {
                let c = a.compose(b).sub(&b.compose(a));
                if !radical.contains(&self.coordinates(&c)) {
                    return false;
                }
            }
        }
        true
    }

    /// For commutative E/J: representatives of a basis of {x : x^p ≡ x mod J}
    /// in E/J. The identity comes first.
    fn frobenius_fixed(&self, radical: &Subspace) -> Vec<Endomorphism> {
        let p = self.prime();
        let all = Subspace::span(p, self.dim(), &FpMatrix::identity(p, self.dim()).to_rows());
        let complement = radical.complement_in(&all);
        let images: Vec<Vec<u32>> = complement
            .iter()
            .map(|c| {
                let x = Endomorphism::combination(&self.basis, c, self.module);
                radical.reduce(&self.coordinates(&x.pow(p.value()).sub(&x)))
            })
            .collect();
        let phi = FpMatrix::from_columns(p, self.dim(), &images);
        let id = Endomorphism::identity(self.module);
        let mut out = vec![id.clone()];
        let mut seen = radical.clone();
        seen.add_vector(&self.coordinates(&id));
        for k in phi.kernel() {
            let mut v = vec![0; self.dim()];
            for (c, &a) in complement.iter().zip(&k) {
                for (x, &y) in v.iter_mut().zip(c) {
                    *x = p.add(*x, p.mul(a, y));
                }
            }
            if seen.add_vector(&v) {
                out.push(Endomorphism::combination(&self.basis, &v, self.module));
            }
        }
        out
    }

    /// Looks for an element that is neither nilpotent nor invertible:
    /// basis elements, then seeded random combinations, then everything.
    fn search_witness(&self) -> Option<Splitting> {
        let m = self.module;
        for b in &self.basis {
            if let Some(s) = fitting_splitting(m, b) {
                return Some(s);
            }
        }
        let p = self.prime().value();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..2000 {
            let coeffs: Vec<u32> = (0..self.dim()).map(|_| rng.gen_range(0..p)).collect();
            if let Some(s) = fitting_splitting(m, &Endomorphism::combination(&self.basis, &coeffs, m)) {
                return Some(s);
            }
        }
        let count = (p as u64).checked_pow(self.dim() as u32).filter(|&c| c <= EXHAUSTIVE_LIMIT)?;
        let mut coeffs = vec![0u32; self.dim()];
        for _ in 0..count {
            if let Some(s) = fitting_splitting(m, &Endomorphism::combination(&self.basis, &coeffs, m)) {
                return Some(s);
            }
            increment(&mut coeffs, p);
        }
        None
    }
}

/// A composition series 0 = V_0 ⊂ ... ⊂ V_r = F_p^n for the algebra spanned
/// by `ops` (which contains the identity). Each step adds the smallest
/// cyclic submodule of the quotient, which is simple.
fn composition_series(p: Prime, n: usize, ops: &[&FpMatrix]) -> Vec<Subspace> {
    let full = Subspace::span(p, n, &FpMatrix::identity(p, n).to_rows());
    let mut series = vec![Subspace::zero(p, n)];
    // the full matrix algebra acts irreducibly
    let span = Subspace::span(p, n * n, &ops.iter().map(|a| a.entries().to_vec()).collect::<Vec<_>>());
    if span.dim() == n * n {
        if n > 0 {
            series.push(full);
        }
        return series;
    }
    loop {
        let current = series.last().expect("nonempty").clone();
        if current.dim() == n {
            return series;
        }
        let reps = current.complement_in(&full);
        let mut best: Option<Subspace> = None;
        let mut coeffs = vec![0u32; reps.len()];
        // projective points of the quotient: first nonzero coordinate is 1
        for lead in 0..reps.len() {
            coeffs.iter_mut().for_each(|c| *c = 0);
            coeffs[lead] = 1;
            let free = reps.len() - lead - 1;
            let total = (p.value() as u64).pow(free as u32);
            for _ in 0..total {
                let mut v = vec![0; n];
                for (r, &c) in reps.iter().zip(&coeffs) {
                    for (x, &y) in v.iter_mut().zip(r) {
                        *x = p.add(*x, p.mul(c, y));
                    }
                }
                let mut u = current.clone();
                for a in ops {
                    u.add_vector(&a.apply(&v));
                }
                if best.as_ref().is_none_or(|b| u.dim() < b.dim()) {
                    best = Some(u);
                }
                increment(&mut coeffs[lead + 1..], p.value());
            }
            if best.as_ref().is_some_and(|b| b.dim() == current.dim() + 1) {
                break;
            }
        }
        series.push(best.expect("quotient is nonzero"));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adem::Generator;
    use crate::modules::{direct_sum, hypothetical_cb_module, moore_module, shift, sphere_module, tensor};

    #[test]
    fn moore_tensor_square_is_indecomposable() {
        let m = moore_module(Prime::TWO);
        let t = tensor(&m, &m).unwrap();
        assert!(!is_decomposable(&t).unwrap().is_decomposable());
        assert!(!is_decomposable_exhaustive(&t).unwrap());
    }

    #[test]
    fn sums_split() {
        let m = moore_module(Prime::TWO);
        let s = direct_sum(&m, &shift(&m, 1)).unwrap();
        let d = is_decomposable(&s).unwrap();
        let split = d.splitting().expect("a sum splits");
        assert!(split.idempotent.is_idempotent());
        assert!(split.idempotent.is_module_map(&s));
        assert_eq!(split.image.total_dim() + split.kernel.total_dim(), 4);
        assert!(!split.image.is_zero() && !split.kernel.is_zero());
        assert!(is_decomposable_exhaustive(&s).unwrap());
    }

    #[test]
    fn small_modules() {
        assert!(!is_decomposable(&sphere_module(Prime::THREE, 0)).unwrap().is_decomposable());
        assert!(!is_decomposable(&FiniteModule::zero(Prime::TWO)).unwrap().is_decomposable());
        assert!(!is_decomposable(&moore_module(Prime::FIVE)).unwrap().is_decomposable());
        assert!(!is_decomposable(&hypothetical_cb_module()).unwrap().is_decomposable());
        // two spheres in the same degree: End = M_2(F_p), not commutative mod J
        let two = FiniteModule::with_dims(Prime::THREE, [(0, 2)]);
        assert!(is_decomposable(&two).unwrap().is_decomposable());
        assert!(is_decomposable_exhaustive(&two).unwrap());
    }

    #[test]
    fn commutative_split_quotient() {
        // two spheres in different degrees: E = F_p × F_p
        let m = direct_sum(&sphere_module(Prime::FIVE, 0), &sphere_module(Prime::FIVE, 3)).unwrap();
        assert!(is_decomposable(&m).unwrap().is_decomposable());
    }

    #[test]
    fn endomorphisms_commute_with_actions() {
        let m = moore_module(Prime::TWO);
        let t = tensor(&m, &m).unwrap();
        let basis = endomorphism_basis(&t);
        assert!(basis.iter().all(|b| b.is_module_map(&t)));
        // identity and the map sending the bottom class to the top one
        assert_eq!(basis.len(), 2);
    }

    #[test]
    fn bound_is_enforced() {
        let m = FiniteModule::with_dims(Prime::TWO, [(0, 13)]);
        assert!(matches!(is_decomposable(&m), Err(Error::DimensionBound { dim: 13, bound: 12 })));
    }

    #[test]
    fn nonsplit_extension_at_odd_prime() {
        // a uniserial module: β from 0 to 1 and P^1 from 1 to 5 at p = 3
        let mut m = FiniteModule::with_dims(Prime::THREE, [(0, 1), (1, 1), (5, 1)]);
        m.set_action_rows(Generator::Bockstein, 0, &[vec![1]]).unwrap();
        m.set_action_rows(Generator::P(1), 1, &[vec![1]]).unwrap();
        assert!(!is_decomposable(&m).unwrap().is_decomposable());
        assert!(!is_decomposable_exhaustive(&m).unwrap());
    }
}
