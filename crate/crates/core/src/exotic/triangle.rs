use std::fmt;

use super::matrix::Z4Matrix;

/// X --f--> Y --g--> Z --h--> X. The shift is the identity, so h lands
/// back in X.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Z4Triangle {
    pub f: Z4Matrix,
    pub g: Z4Matrix,
    pub h: Z4Matrix,
}

impl Z4Triangle {
    pub fn new(f: Z4Matrix, g: Z4Matrix, h: Z4Matrix) -> Self {
        let t = Z4Triangle { f, g, h };
        assert!(
            t.g.cols() == t.f.rows() && t.h.cols() == t.g.rows() && t.f.cols() == t.h.rows(),
            "ranks do not match cyclically"
        );
        t
    }

    pub fn zero() -> Self {
        Z4Triangle::new(Z4Matrix::zero(0, 0), Z4Matrix::zero(0, 0), Z4Matrix::zero(0, 0))
    }

    /// Ranks of (X, Y, Z).
    pub fn ranks(&self) -> (usize, usize, usize) {
        (self.f.cols(), self.g.cols(), self.h.cols())
    }

    /// Consecutive composites vanish.
    pub fn is_candidate(&self) -> bool {
        self.g.mul(&self.f).is_zero() && self.h.mul(&self.g).is_zero() && self.f.mul(&self.h).is_zero()
    }

    /// ker = im at X, Y and Z of the periodic sequence.
    pub fn is_exact(&self) -> bool {
        self.is_candidate()
            && self.g.kernel_size() == self.f.image_size()
            && self.h.kernel_size() == self.g.image_size()
            && self.f.kernel_size() == self.h.image_size()
    }

    /// (f, g, h) ↦ (g, h, -f).
    pub fn rotate(&self) -> Self {
        Z4Triangle::new(self.g.clone(), self.h.clone(), self.f.neg())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Z4Triangle::new(self.f.block_diag(&other.f), self.g.block_diag(&other.g), self.h.block_diag(&other.h))
    }

    /// Transport along automorphisms (α, β, γ) of X, Y, Z; the inverses are
    /// passed in as well to keep the orbit walk cheap.
    pub fn transport(&self, a: (&Z4Matrix, &Z4Matrix), b: (&Z4Matrix, &Z4Matrix), c: (&Z4Matrix, &Z4Matrix)) -> Self {
        Z4Triangle { f: b.0.mul(&self.f).mul(a.1), g: c.0.mul(&self.g).mul(b.1), h: a.0.mul(&self.h).mul(c.1) }
    }

    /// Injective encoding for ranks ≤ 3.
    pub fn key(&self) -> u64 {
        let (x, y, z) = self.ranks();
        let mut k = (x as u64) | (y as u64) << 2 | (z as u64) << 4;
        let mut shift = 6;
        for m in [&self.f, &self.g, &self.h] {
            k |= m.code() << shift;
            shift += 2 * m.rows() * m.cols();
        }
        k
    }

    /// Inverse of [`key`](Self::key).
    pub fn from_key(key: u64) -> Self {
        let (x, y, z) = ((key & 3) as usize, (key >> 2 & 3) as usize, (key >> 4 & 3) as usize);
        let mut rest = key >> 6;
        let mut take = |rows: usize, cols: usize| {
            let bits = 2 * rows * cols;
            let m = Z4Matrix::from_code(rows, cols, rest & ((1u64 << bits) - 1));
            rest >>= bits;
            m
        };
        let f = take(y, x);
        let g = take(z, y);
        let h = take(x, z);
        Z4Triangle::new(f, g, h)
    }

    /// Whether (a, b, c) is a morphism of triangles self → other.
    pub fn is_morphism_to(&self, other: &Self, a: &Z4Matrix, b: &Z4Matrix, c: &Z4Matrix) -> bool {
        b.mul(&self.f) == other.f.mul(a) && c.mul(&self.g) == other.g.mul(b) && a.mul(&self.h) == other.h.mul(c)
    }
}

impl fmt::Debug for Z4Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Z4Triangle {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y, z) = self.ranks();
        write!(fm, "Z4^{x} --{}--> Z4^{y} --{}--> Z4^{z} --{}--> Z4^{x}", self.f, self.g, self.h)
    }
}

/// The triangle 2, 2, 2 on Z/4, the contractible X = X → 0 → X, and the
/// two further rotations of the contractible one.
pub fn elementary_triangles() -> Vec<Z4Triangle> {
    let two = Z4Triangle::new(Z4Matrix::scalar(1, 2), Z4Matrix::scalar(1, 2), Z4Matrix::scalar(1, 2));
    let contractible = Z4Triangle::new(Z4Matrix::identity(1), Z4Matrix::zero(0, 1), Z4Matrix::zero(1, 0));
    let r1 = contractible.rotate();
    let r2 = r1.rotate();
    vec![two, contractible, r1, r2]
}
