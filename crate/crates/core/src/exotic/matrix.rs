use std::fmt;

/// A matrix over Z/4; a morphism Z/4^cols → Z/4^rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Z4Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Z4Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Z4Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn scalar(n: usize, c: i64) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = c.rem_euclid(4) as u8;
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, 1)
    }

    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = Self::zero(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = x.rem_euclid(4) as u8;
            }
        }
        m
    }

    /// The matrix whose entries, read row by row, are the base-4 digits
    /// of `code` (least significant first).
    pub fn from_code(rows: usize, cols: usize, mut code: u64) -> Self {
        let mut m = Self::zero(rows, cols);
        for x in m.data.iter_mut() {
            *x = (code & 3) as u8;
            code >>= 2;
        }
        m
    }

    pub fn code(&self) -> u64 {
        self.data.iter().rev().fold(0, |acc, &x| (acc << 2) | x as u64)
    }

    /// Every rows × cols matrix.
    pub fn all(rows: usize, cols: usize) -> impl Iterator<Item = Z4Matrix> {
        (0..1u64 << (2 * rows * cols)).map(move |c| Self::from_code(rows, cols, c))
    }

    /// Invertible n × n matrices: those invertible mod 2.
    pub fn general_linear(n: usize) -> Vec<Z4Matrix> {
        Self::all(n, n).filter(Z4Matrix::is_invertible).collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, rhs: &Z4Matrix) -> Z4Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let x = &mut out.data[i * rhs.cols + j];
                    *x = (*x + a * rhs.data[k * rhs.cols + j]) & 3;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Z4Matrix) -> Z4Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| (a + b) & 3).collect();
        Z4Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Z4Matrix {
        self.scale(3)
    }

    pub fn scale(&self, c: u8) -> Z4Matrix {
        Z4Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| (x * c) & 3).collect() }
    }

    pub fn block_diag(&self, other: &Z4Matrix) -> Z4Matrix {
        let mut out = Self::zero(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * out.cols + j] = self.get(i, j);
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.data[(self.rows + i) * out.cols + self.cols + j] = other.get(i, j);
            }
        }
        out
    }

    /// Determinant for n ≤ 3, which is all the enumeration needs.
    fn det(&self) -> u8 {
        assert_eq!(self.rows, self.cols);
        let g = |i, j| self.get(i, j) as i64;
        let d = match self.rows {
            0 => 1,
            1 => g(0, 0),
            2 => g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0),
            3 => {
                g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)) - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
                    + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0))
            }
            n => unimplemented!("determinant of a {n} x {n} matrix"),
        };
        d.rem_euclid(4) as u8
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.det() % 2 == 1
    }

    /// Inverse by search over the (small) matrix space.
    pub fn inverse(&self) -> Option<Z4Matrix> {
        if !self.is_invertible() {
            return None;
        }
        let id = Self::identity(self.rows);
        Self::all(self.rows, self.cols).find(|m| m.mul(self) == id)
    }

    /// Vectors of Z/4^n as column matrices.
    fn vectors(n: usize) -> impl Iterator<Item = Z4Matrix> {
        Self::all(n, 1)
    }

    pub fn kernel_size(&self) -> usize {
        Self::vectors(self.cols).filter(|v| self.mul(v).is_zero()).count()
    }

    pub fn image_size(&self) -> usize {
        let mut seen: Vec<u64> = Self::vectors(self.cols).map(|v| self.mul(&v).code()).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

impl fmt::Debug for Z4Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Z4Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "0[{}x{}]", self.rows, self.cols);
        }
        let rows: Vec<String> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}
