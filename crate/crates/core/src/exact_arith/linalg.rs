use dashu_ratio::RBig;

/// Dense matrix over the rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RBig>,
}

impl RMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![RBig::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = RBig::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> RBig) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RBig {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: RBig) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[RBig] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &RMatrix) -> RMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if *a == RBig::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if *b != RBig::ZERO {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + a * b;
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| *self.get(i, c) != RBig::ZERO) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = RBig::ONE / self.get(r, c).clone();
            for j in c..self.cols {
                let idx = r * self.cols + j;
                self.data[idx] = &self.data[idx] * &inv;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f == RBig::ZERO {
                    continue;
                }
                for j in c..self.cols {
                    let t = self.get(r, j).clone();
                    if t != RBig::ZERO {
                        let idx = i * self.cols + j;
                        self.data[idx] = &self.data[idx] - &f * t;
                    }
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

    /// The inverse of a square matrix, or `None` if it is singular.
    pub fn inverse(&self) -> Option<RMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j).clone();
            }
            aug.data[i * 2 * n + n + i] = RBig::ONE;
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| aug.get(i, n + j).clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(x: i64) -> RBig {
        RBig::from(x)
    }

    #[test]
    fn inverse_round_trip() {
        let m = RMatrix::from_fn(3, 3, |i, j| int([[2, 1, 0], [1, 3, 1], [0, 1, 4]][i][j]));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RMatrix::identity(3));
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = RMatrix::from_fn(2, 2, |i, j| int([[1, 2], [2, 4]][i][j]));
        assert!(m.inverse().is_none());
        assert_eq!(m.rank(), 1);
    }
}
