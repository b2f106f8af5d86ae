//! Dense matrices over F_p and the handful of exact algorithms the module
//! calculus needs: products, row reduction, kernels, subspaces.

use std::fmt;

use crate::prime::Prime;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zero(p: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Entries are reduced mod p. Panics if a row has the wrong length.
    pub fn from_rows(p: Prime, cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = Self::zero(p, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row {i} has length {} != {cols}", row.len());
            for (j, &x) in row.iter().enumerate() {
                m.data[i * cols + j] = p.reduce(x);
            }
        }
        m
    }

    pub fn from_columns(p: Prime, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zero(p, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x % self.p.value();
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, rhs: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let p = self.p.value() as u64;
        let mut out = FpMatrix::zero(self.p, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * rhs.get(k, j) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.p;
        (0..self.rows).map(|i| self.row(i).iter().zip(v).fold(0u32, |acc, (&a, &b)| p.add(acc, p.mul(a, b)))).collect()
    }

    pub fn add(&self, rhs: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let p = self.p;
        FpMatrix {
            p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| p.add(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let p = self.p;
        FpMatrix { p, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| p.mul(a, c)).collect() }
    }

    pub fn sub(&self, rhs: &FpMatrix) -> FpMatrix {
        self.add(&rhs.scale(self.p.value() - 1))
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut out = FpMatrix::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> FpMatrix {
        assert!(self.is_square());
        let mut acc = FpMatrix::identity(self.p, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Flattened row-major entries.
    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &FpMatrix) -> FpMatrix {
        let mut out = FpMatrix::zero(self.p, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    /// Kronecker product: (A ⊗ B)[(i,k),(j,l)] = A[i,j] B[k,l].
    pub fn kronecker(&self, other: &FpMatrix) -> FpMatrix {
        let p = self.p;
        let mut out = FpMatrix::zero(p, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, p.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = p.inv(self.get(r, c));
            for j in 0..self.cols {
                let x = self.get(r, j);
                self.data[r * self.cols + j] = p.mul(x, inv);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let x = self.get(i, j);
                    let y = self.get(r, j);
                    self.data[i * self.cols + j] = p.sub(x, p.mul(f, y));
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of { x : self * x = 0 }.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = p.neg(m.get(r, f));
                }
                v
            })
            .collect()
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<FpMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = FpMatrix::zero(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = FpMatrix::zero(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Solve self * x = b, returning one solution if any.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = FpMatrix::zero(self.p, self.rows, self.cols + 1);
        for (i, &bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, bi);
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix<p={}>{:?}", self.p, self.to_rows())
    }
}

/// A subspace of F_p^n, kept as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    p: Prime,
    ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: Prime, ambient: usize) -> Self {
        Subspace { p, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn span(p: Prime, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        let mut s = Self::zero(p, ambient);
        for v in vectors {
            s.add_vector(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// Reduce v against the echelon basis; the result is zero iff v lies in the span.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut w = v.to_vec();
        for (b, &pc) in self.basis.iter().zip(&self.pivots) {
            let f = w[pc];
            if f != 0 {
                for (x, &y) in w.iter_mut().zip(b) {
                    *x = p.sub(*x, p.mul(f, y));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds v; returns true if the dimension grew.
    pub fn add_vector(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let p = self.p;
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = p.inv(w[pc]);
        for x in w.iter_mut() {
            *x = p.mul(*x, inv);
        }
        for b in self.basis.iter_mut() {
            let f = b[pc];
            if f != 0 {
                for (x, &y) in b.iter_mut().zip(&w) {
                    *x = p.sub(*x, p.mul(f, y));
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(pos, pc);
        self.basis.insert(pos, w);
        true
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Vectors extending this subspace's basis to a basis of `larger`.
    pub fn complement_in(&self, larger: &Subspace) -> Vec<Vec<u32>> {
        let mut acc = self.clone();
        larger.basis.iter().filter(|v| acc.add_vector(v)).cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    #[test]
    fn kernel_and_rank() {
        let m = FpMatrix::from_rows(p3(), 3, &[vec![1, 2, 0], vec![2, 1, 0]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = FpMatrix::from_rows(p3(), 2, &[vec![1, 1], vec![0, 2]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FpMatrix::identity(p3(), 2));
        let singular = FpMatrix::from_rows(p3(), 2, &[vec![1, 2], vec![2, 1]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = FpMatrix::from_rows(p3(), 2, &[vec![1, 1], vec![1, 1]]);
        let x = m.solve(&[2, 2]).unwrap();
        assert_eq!(m.apply(&x), vec![2, 2]);
        assert!(m.solve(&[1, 2]).is_none());
    }

    #[test]
    fn subspace_membership() {
        let p = p3();
        let s = Subspace::span(p, 3, &[vec![1, 1, 0], vec![2, 2, 0], vec![0, 1, 1]]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[1, 2, 1]));
        assert!(!s.contains(&[0, 0, 1]));
        let whole = Subspace::span(p, 3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(s.complement_in(&whole).len(), 1);
    }

    #[test]
    fn kronecker_dims() {
        let p = Prime::TWO;
        let a = FpMatrix::identity(p, 2);
        let b = FpMatrix::from_rows(p, 3, &[vec![1, 0, 1]]);
        let k = a.kronecker(&b);
        assert_eq!((k.rows(), k.cols()), (2, 6));
        assert_eq!(k.get(1, 5), 1);
        assert_eq!(k.get(0, 5), 0);
    }
}
