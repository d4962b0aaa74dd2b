use crate::scalar::Scalar;

/// Dense matrix over the configured field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Scalar>>,
}

/// Basis of a kernel, one vector per free column.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SolutionSpace {
    pub basis: Vec<Vec<Scalar>>,
}

impl SolutionSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![vec![Scalar::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(cols: usize, data: Vec<Vec<Scalar>>) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        ExactMatrix { rows: data.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r][c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r]
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                let mut acc = Scalar::zero();
                for (a, b) in row.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    /// Reduced row echelon form with the list of pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip().unwrap();
            for x in m[r][c..].iter_mut() {
                *x = &*x * &inv;
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (ExactMatrix { rows: self.rows, cols: self.cols, data: m }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Right kernel; dimension is `cols - rank`.
    pub fn kernel(&self) -> SolutionSpace {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -&r.data[i][free];
            }
            basis.push(v);
        }
        SolutionSpace { basis }
    }
}

/// Rank of a list of vectors of common length.
pub fn rank_of(vectors: &[Vec<Scalar>], len: usize) -> usize {
    if vectors.is_empty() || len == 0 {
        return 0;
    }
    ExactMatrix::from_rows(len, vectors.to_vec()).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernels() {
        assert_eq!(ExactMatrix::identity(2).kernel().dim(), 0);
        assert_eq!(ExactMatrix::zeros(2, 3).kernel().dim(), 3);
        let m = ExactMatrix::from_rows(2, vec![vec![Scalar::int(1), Scalar::int(1)]]);
        let k = m.kernel();
        assert_eq!(k.basis, vec![vec![Scalar::int(-1), Scalar::int(1)]]);
    }

    #[test]
    fn rank_with_surds() {
        let r = Scalar::sqrt(19).unwrap();
        let m = ExactMatrix::from_rows(
            2,
            vec![vec![r.clone(), Scalar::int(19)], vec![Scalar::int(1), r.clone()]],
        );
        assert_eq!(m.rank(), 1);
    }
}
