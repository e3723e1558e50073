use std::fmt;

use serde::{Deserialize, Serialize};

use super::vector::primitive_scale;
use super::{QVector, Rat};

/// A dense rectangular matrix of rationals, stored by rows.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QMatrix {
    rows: Vec<QVector>,
    cols: usize,
}

impl QMatrix {
    /// Builds a matrix from rows; panics if the rows are ragged.
    pub fn from_rows(rows: Vec<QVector>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        QMatrix { rows, cols }
    }

    pub fn zeros(nrows: usize, cols: usize) -> Self {
        QMatrix {
            rows: vec![QVector::zeros(cols); nrows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        QMatrix {
            rows: (0..n).map(|i| QVector::unit(n, i)).collect(),
            cols: n,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &QVector {
        &self.rows[i]
    }

    pub fn into_rows(self) -> Vec<QVector> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.rows[i][j]
    }

    pub fn transpose(&self) -> QMatrix {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        QMatrix {
            rows,
            cols: self.rows.len(),
        }
    }

    pub fn mul_vec(&self, x: &QVector) -> QVector {
        self.rows.iter().map(|r| r.dot(x)).collect()
    }

    /// `selfᵀ · y`.
    pub fn tmul_vec(&self, y: &QVector) -> QVector {
        assert_eq!(y.len(), self.nrows());
        let mut acc = QVector::zeros(self.cols);
        for (r, k) in self.rows.iter().zip(y.iter()) {
            if !k.is_zero() {
                acc = acc.axpy(k, r);
            }
        }
        acc
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.nrows());
        let t = other.transpose();
        let rows = self
            .rows
            .iter()
            .map(|r| t.rows.iter().map(|c| r.dot(c)).collect())
            .collect();
        QMatrix {
            rows,
            cols: other.cols,
        }
    }

    /// Exact rank via fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        rank_of(&self.rows, self.cols)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self
            .rows
            .iter()
            .map(|r| r.entries().to_vec())
            .collect::<Vec<_>>();
        let pivots = rref_in_place(&mut m, self.cols);
        let rows = m.into_iter().map(QVector::new).collect();
        (
            QMatrix {
                rows,
                cols: self.cols,
            },
            pivots,
        )
    }

    /// A basis of `{x : Mx = 0}`, one primitive integer row per free column.
    pub fn kernel_basis(&self) -> QMatrix {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = QVector::zeros(self.cols);
            v[free] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, free);
            }
            basis.push(v.primitive());
        }
        QMatrix {
            rows: basis,
            cols: self.cols,
        }
    }

    /// Some solution of `Mx = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &QVector) -> Option<QVector> {
        assert_eq!(b.len(), self.nrows());
        let mut m: Vec<Vec<Rat>> = self
            .rows
            .iter()
            .zip(b.iter())
            .map(|(r, bi)| {
                let mut row = r.entries().to_vec();
                row.push(bi.clone());
                row
            })
            .collect();
        let pivots = rref_in_place(&mut m, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = QVector::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = m[i][self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        let n = self.nrows();
        if n != self.cols {
            return None;
        }
        let mut m: Vec<Vec<Rat>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.entries().to_vec();
                row.extend(QVector::unit(n, i).into_entries());
                row
            })
            .collect();
        let pivots = rref_in_place(&mut m, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let rows = m
            .into_iter()
            .map(|r| QVector::new(r[n..].to_vec()))
            .collect();
        Some(QMatrix { rows, cols: n })
    }

    /// Orthogonal projection of `a` onto `ker M`: `a − Mᵀ(MMᵀ)⁻¹Ma`.
    ///
    /// Rows of `M` need not be independent.
    pub fn project_onto_kernel(&self, a: &QVector) -> QVector {
        let gram = self.mul(&self.transpose());
        let rhs = self.mul_vec(a);
        let xi = gram.solve(&rhs).expect("Gram system is always consistent");
        a.sub(&self.tmul_vec(&xi))
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.nrows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        write!(f, "]")
    }
}

/// Rank of a list of vectors of common length `cols`.
pub fn rank_of(rows: &[QVector], cols: usize) -> usize {
    // Integerise each row, then Bareiss.
    let mut m: Vec<Vec<Rat>> = rows
        .iter()
        .filter_map(|r| {
            debug_assert_eq!(r.len(), cols);
            primitive_scale(r.entries()).map(|s| r.iter().map(|a| a * &s).collect())
        })
        .collect();
    bareiss_rank(&mut m, cols)
}

fn bareiss_rank(m: &mut [Vec<Rat>], cols: usize) -> usize {
    let nrows = m.len();
    let mut rank = 0;
    let mut prev = Rat::one();
    for col in 0..cols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for i in rank + 1..nrows {
            let factor = m[i][col].clone();
            for j in col + 1..cols {
                let v = &(&m[i][j] * &pivot) - &(&factor * &m[rank][j]);
                m[i][j] = &v / &prev;
            }
            m[i][col] = Rat::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

fn rref_in_place(m: &mut [Vec<Rat>], cols: usize) -> Vec<usize> {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        if !inv.is_one() {
            for j in col..cols {
                if !m[r][j].is_zero() {
                    m[r][j] = &m[r][j] * &inv;
                }
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for j in col..cols {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &(&factor * &pivot_row[j]);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}
