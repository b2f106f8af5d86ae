//! Finite graded modules over the Steenrod algebra.
//!
//! A module is a finite graded F_p vector space together with one matrix
//! per (generator, source degree). Degrees that are not listed are zero:
//! there is no truncation, so an operation landing in an unlisted degree
//! acts as zero.

mod consistency;
mod construct;
mod decompose;
mod format;

use std::collections::BTreeMap;

pub use consistency::{consistency_check, violation_classes, RelationViolation, ViolationClass};
pub use construct::{direct_sum, hypothetical_cb_module, moore_module, shift, sphere_module, tensor};
pub use decompose::{
    endomorphism_basis, is_decomposable, is_decomposable_exhaustive, is_decomposable_with_bound, Decomposition,
    Endomorphism, Splitting, DEFAULT_DIMENSION_BOUND,
};
pub use format::ModuleFile;

use crate::adem::{Degree, Generator, SteenrodElement};
use crate::error::{Error, Result};
use crate::linalg::FpMatrix;
use crate::prime::Prime;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModule {
    prime: Prime,
    dims: BTreeMap<i64, usize>,
    actions: BTreeMap<(Generator, i64), FpMatrix>,
    labels: BTreeMap<i64, Vec<String>>,
}

impl FiniteModule {
    /// The zero module.
    pub fn zero(prime: Prime) -> Self {
        FiniteModule { prime, dims: BTreeMap::new(), actions: BTreeMap::new(), labels: BTreeMap::new() }
    }

    /// A module with the given dimensions and every action zero.
    pub fn with_dims(prime: Prime, dims: impl IntoIterator<Item = (i64, usize)>) -> Self {
        let mut m = Self::zero(prime);
        for (d, n) in dims {
            if n > 0 {
                m.dims.insert(d, n);
                m.labels.insert(d, default_labels(d, n));
            }
        }
        m
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.dims.keys().copied()
    }

    pub fn bottom(&self) -> Option<i64> {
        self.dims.keys().next().copied()
    }

    pub fn top(&self) -> Option<i64> {
        self.dims.keys().next_back().copied()
    }

    pub fn labels(&self, degree: i64) -> &[String] {
        self.labels.get(&degree).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn set_labels(&mut self, degree: i64, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.dim(degree) {
            return Err(Error::InvalidModule(format!(
                "{} labels for degree {degree} of dimension {}",
                labels.len(),
                self.dim(degree)
            )));
        }
        if !labels.is_empty() {
            self.labels.insert(degree, labels);
        }
        Ok(())
    }

    /// Stored (nonzero) generator matrices.
    pub fn actions(&self) -> impl Iterator<Item = (Generator, i64, &FpMatrix)> {
        self.actions.iter().map(|(&(g, d), m)| (g, d, m))
    }

    /// Sets the matrix of `g` from `source` to `source + deg g`.
    pub fn set_action(&mut self, g: Generator, source: i64, matrix: FpMatrix) -> Result<()> {
        g.check_prime(self.prime)?;
        let target = source + g.degree(self.prime);
        let shape = (self.dim(target), self.dim(source));
        if (matrix.rows(), matrix.cols()) != shape {
            return Err(Error::InvalidModule(format!(
                "{g} from degree {source}: matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                shape.0,
                shape.1
            )));
        }
        if matrix.prime() != self.prime {
            return Err(Error::PrimeMismatch(matrix.prime(), self.prime));
        }
        if matrix.is_zero() {
            self.actions.remove(&(g, source));
        } else {
            self.actions.insert((g, source), matrix);
        }
        Ok(())
    }

    /// Convenience for integer rows.
    pub fn set_action_rows(&mut self, g: Generator, source: i64, rows: &[Vec<i64>]) -> Result<()> {
        let cols = self.dim(source);
        let rows_ok = rows.len() == self.dim(source + g.degree(self.prime)) && rows.iter().all(|r| r.len() == cols);
        if !rows_ok {
            return Err(Error::InvalidModule(format!("{g} from degree {source}: bad matrix shape")));
        }
        self.set_action(g, source, FpMatrix::from_rows(self.prime, cols, rows))
    }

    /// Matrix of a generator from `source`; zero when nothing is stored.
    pub fn generator_matrix(&self, g: Generator, source: i64) -> FpMatrix {
        match self.actions.get(&(g, source)) {
            Some(m) => m.clone(),
            None => FpMatrix::zero(self.prime, self.dim(source + g.degree(self.prime)), self.dim(source)),
        }
    }

    /// Matrix of a homogeneous element from `degree` to `degree + deg e`.
    /// The zero element gives the zero endomorphism of the source degree.
    pub fn act_element(&self, e: &SteenrodElement, degree: i64) -> Result<FpMatrix> {
        if e.prime() != self.prime {
            return Err(Error::PrimeMismatch(e.prime(), self.prime));
        }
        let shift = match e.degree() {
            Degree::Any => 0,
            Degree::Homogeneous(s) => s,
            Degree::NonHomogeneous => return Err(Error::NotHomogeneous),
        };
        let mut out = FpMatrix::zero(self.prime, self.dim(degree + shift), self.dim(degree));
        for (m, c) in e.terms() {
            out = out.add(&self.act_word(m.word(), degree).scale(c));
        }
        Ok(out)
    }

    pub(crate) fn act_word(&self, word: &[Generator], degree: i64) -> FpMatrix {
        let mut d = degree;
        let mut acc = FpMatrix::identity(self.prime, self.dim(degree));
        for &g in word.iter().rev() {
            if acc.is_zero() {
                let total: i64 = word.iter().map(|g| g.degree(self.prime)).sum();
                return FpMatrix::zero(self.prime, self.dim(degree + total), self.dim(degree));
            }
            acc = self.generator_matrix(g, d).mul(&acc);
            d += g.degree(self.prime);
        }
        acc
    }

    /// Largest degree gap between occupied degrees.
    pub fn span(&self) -> i64 {
        match (self.bottom(), self.top()) {
            (Some(b), Some(t)) => t - b,
            _ => 0,
        }
    }
}

pub(crate) fn default_labels(degree: i64, n: usize) -> Vec<String> {
    if n == 1 {
        vec![format!("e{degree}")]
    } else {
        (0..n).map(|i| format!("e{degree}_{i}")).collect()
    }
}
