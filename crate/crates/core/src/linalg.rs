//! Exact linear algebra over the rationals: reduced row echelon form,
//! kernels, and solving inside a span. Matrices here are tiny (at most
//! a few hundred rows), so simplicity wins over pivoting strategy.

use num::{BigRational, Zero};

pub type Q = BigRational;

pub fn qz() -> Q {
    Q::zero()
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn qr(num: i64, den: i64) -> Q {
    Q::new(num.into(), den.into())
}

/// Dense row-major matrix over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Q>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        QMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// In-place reduced row echelon form; returns the pivot column of
    /// each pivot row, in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            let Some(nonzero) = (pivot_row..self.rows).find(|&r| !self.at(r, col).is_zero())
            else {
                continue;
            };
            if nonzero != pivot_row {
                for j in 0..self.cols {
                    self.data
                        .swap(nonzero * self.cols + j, pivot_row * self.cols + j);
                }
            }
            let inv = self.at(pivot_row, col).recip();
            for j in col..self.cols {
                let v = self.at(pivot_row, j) * &inv;
                self.set(pivot_row, j, v);
            }
            for r in 0..self.rows {
                if r != pivot_row && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    for j in col..self.cols {
                        let v = self.at(r, j) - &factor * self.at(pivot_row, j);
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
            if pivot_row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{ x : A·x = 0 }`, one vector per free column, echelon
    /// style (free column's coordinate set to 1).
    pub fn kernel_basis(&self) -> Vec<Vec<Q>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut x = vec![Q::zero(); self.cols];
            x[free] = qi(1);
            for (col, slot) in pivot_set.iter().enumerate() {
                if let Some(r) = slot {
                    x[col] = -m.at(*r, free).clone();
                }
            }
            basis.push(x);
        }
        basis
    }
}

/// Expresses `target` as a linear combination of `basis` vectors,
/// returning the coefficients, or None when it lies outside the span.
pub fn solve_in_span(basis: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    if basis.is_empty() {
        return if target.iter().all(|v| v.is_zero()) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let dim = target.len();
    debug_assert!(basis.iter().all(|b| b.len() == dim));
    // Augmented system: columns are the basis vectors, then the target.
    let mut m = QMat::zero(dim, basis.len() + 1);
    for (j, b) in basis.iter().enumerate() {
        for (i, v) in b.iter().enumerate() {
            m.set(i, j, v.clone());
        }
    }
    for (i, v) in target.iter().enumerate() {
        m.set(i, basis.len(), v.clone());
    }
    let pivots = m.rref();
    if pivots.contains(&basis.len()) {
        return None; // inconsistent
    }
    let mut coeffs = vec![Q::zero(); basis.len()];
    for (r, &c) in pivots.iter().enumerate() {
        coeffs[c] = m.at(r, basis.len()).clone();
    }
    Some(coeffs)
}

/// Rank of the span of a list of vectors.
pub fn span_rank(vectors: &[Vec<Q>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    QMat::from_rows(vectors.to_vec()).rank()
}

/// True when the two lists of vectors span the same subspace.
pub fn same_span(a: &[Vec<Q>], b: &[Vec<Q>]) -> bool {
    let ra = span_rank(a);
    let rb = span_rank(b);
    if ra != rb {
        return false;
    }
    let mut combined: Vec<Vec<Q>> = a.to_vec();
    combined.extend(b.to_vec());
    span_rank(&combined) == ra
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_rank() {
        let mut m = QMat::from_rows(vec![
            vec![qi(1), qi(2), qi(3)],
            vec![qi(2), qi(4), qi(6)],
            vec![qi(1), qi(0), qi(1)],
        ]);
        let pivots = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_of_known_matrix() {
        // x + y + z = 0 has a 2-dimensional kernel.
        let m = QMat::from_rows(vec![vec![qi(1), qi(1), qi(1)]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for x in &k {
            let s: Q = x.iter().cloned().sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn kernel_of_full_rank_matrix_is_trivial() {
        let m = QMat::from_rows(vec![
            vec![qi(1), qi(0)],
            vec![qi(0), qi(1)],
            vec![qi(3), qi(4)],
        ]);
        assert!(m.kernel_basis().is_empty());
    }

    #[test]
    fn solve_in_span_roundtrip() {
        let basis = vec![
            vec![qi(1), qi(0), qi(2)],
            vec![qi(0), qi(1), qi(-1)],
        ];
        let target = vec![qi(3), qi(2), qi(4)];
        let coeffs = solve_in_span(&basis, &target).unwrap();
        assert_eq!(coeffs, vec![qi(3), qi(2)]);
        let outside = vec![qi(0), qi(0), qi(1)];
        assert!(solve_in_span(&basis, &outside).is_none());
    }

    #[test]
    fn span_comparison() {
        let a = vec![vec![qi(1), qi(1)], vec![qi(1), qi(-1)]];
        let b = vec![vec![qi(1), qi(0)], vec![qi(0), qi(1)]];
        assert!(same_span(&a, &b));
        let c = vec![vec![qi(1), qi(0)]];
        assert!(!same_span(&a, &c));
    }

    #[test]
    fn rationals_stay_exact() {
        let mut m = QMat::from_rows(vec![
            vec![qr(1, 3), qr(1, 6)],
            vec![qr(1, 2), qr(1, 4)],
        ]);
        let pivots = m.rref();
        assert_eq!(pivots.len(), 1); // rows proportional
    }
}
