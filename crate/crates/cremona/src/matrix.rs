//! Exact rational matrices with fraction-free elimination.
//!
//! Rank, nullspace and determinant run Bareiss one-step elimination on an
//! integer copy obtained by clearing denominators row by row, so no
//! intermediate fractions appear; the nullspace basis is then recovered by
//! rational back-substitution in a canonical free-column pattern.

use crate::scalar::{rat_one, rat_zero, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![rat_zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, rat_one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        QMatrix { rows: r, cols: c, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = rat_zero();
                for j in 0..self.cols {
                    acc += self.get(i, j) * &v[j];
                }
                acc
            })
            .collect()
    }

    /// Clear denominators row by row; row scaling preserves rank and
    /// nullspace.
    fn to_int_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let mut lcm = BigInt::one();
                for j in 0..self.cols {
                    lcm = lcm.lcm(self.get(i, j).denom());
                }
                (0..self.cols)
                    .map(|j| {
                        let r = self.get(i, j);
                        r.numer() * (&lcm / r.denom())
                    })
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Fraction-free forward elimination. Returns the echelon integer matrix
    /// together with the pivot (row, col) list in order.
    fn echelon(&self) -> (Vec<Vec<BigInt>>, Vec<(usize, usize)>) {
        let mut a = self.to_int_rows();
        let rows = self.rows;
        let cols = self.cols;
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut prev = BigInt::one();
        let mut pr = 0usize;
        for pc in 0..cols {
            if pr >= rows {
                break;
            }
            let mut sel = None;
            for i in pr..rows {
                if !a[i][pc].is_zero() {
                    sel = Some(i);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            a.swap(pr, sel);
            let pivot = a[pr][pc].clone();
            for i in (pr + 1)..rows {
                for j in 0..cols {
                    if j == pc {
                        continue;
                    }
                    let v = (&a[i][j] * &pivot - &a[i][pc] * &a[pr][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][pc] = BigInt::zero();
            }
            prev = pivot;
            pivots.push((pr, pc));
            pr += 1;
        }
        (a, pivots)
    }

    /// Canonical right-nullspace basis: one vector per free column, with the
    /// free variable set to one and later free variables zero.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (a, pivots) = self.echelon();
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let free_cols: Vec<usize> = (0..self.cols)
            .filter(|c| !pivot_cols.contains(c))
            .collect();
        let mut basis = Vec::with_capacity(free_cols.len());
        for &fc in &free_cols {
            let mut v = vec![rat_zero(); self.cols];
            v[fc] = rat_one();
            for &(pr, pc) in pivots.iter().rev() {
                // a[pr] . v = 0  =>  v[pc] = -(sum_{j>pc} a[pr][j] v[j]) / a[pr][pc]
                let mut acc = rat_zero();
                for j in (pc + 1)..self.cols {
                    if !a[pr][j].is_zero() && !v[j].is_zero() {
                        acc += Rat::from_integer(a[pr][j].clone()) * &v[j];
                    }
                }
                if acc.is_zero() {
                    v[pc] = rat_zero();
                } else {
                    v[pc] = -acc / Rat::from_integer(a[pr][pc].clone());
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Determinant by fraction-free elimination (square matrices).
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return rat_one();
        }
        // Track the rational scale introduced by denominator clearing.
        let int_rows = self.to_int_rows();
        let mut scale = rat_one();
        for i in 0..n {
            let mut lcm = BigInt::one();
            for j in 0..n {
                lcm = lcm.lcm(self.get(i, j).denom());
            }
            scale *= Rat::from_integer(lcm);
        }
        let mut a = int_rows;
        let mut prev = BigInt::one();
        let mut sign = 1i32;
        for pc in 0..n {
            let mut sel = None;
            for i in pc..n {
                if !a[i][pc].is_zero() {
                    sel = Some(i);
                    break;
                }
            }
            let Some(sel) = sel else { return rat_zero() };
            if sel != pc {
                a.swap(pc, sel);
                sign = -sign;
            }
            let pivot = a[pc][pc].clone();
            for i in (pc + 1)..n {
                for j in (pc + 1)..n {
                    a[i][j] = (&a[i][j] * &pivot - &a[i][pc] * &a[pc][j]) / &prev;
                }
                a[i][pc] = BigInt::zero();
            }
            prev = pivot;
        }
        let mut d = Rat::from_integer(a[n - 1][n - 1].clone()) / scale;
        if sign < 0 {
            d = -d;
        }
        d
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = QMatrix::identity(n);
        for col in 0..n {
            let mut sel = None;
            for i in col..n {
                if !a.get(i, col).is_zero() {
                    sel = Some(i);
                    break;
                }
            }
            let sel = sel?;
            if sel != col {
                for j in 0..n {
                    let t = a.get(sel, j).clone();
                    a.set(sel, j, a.get(col, j).clone());
                    a.set(col, j, t);
                    let t = inv.get(sel, j).clone();
                    inv.set(sel, j, inv.get(col, j).clone());
                    inv.set(col, j, t);
                }
            }
            let p = a.get(col, col).clone();
            for j in 0..n {
                a.set(col, j, a.get(col, j) / &p);
                inv.set(col, j, inv.get(col, j) / &p);
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let f = a.get(i, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let va = a.get(i, j) - &(a.get(col, j) * &f);
                    a.set(i, j, va);
                    let vi = inv.get(i, j) - &(inv.get(col, j) * &f);
                    inv.set(i, j, vi);
                }
            }
        }
        Some(inv)
    }
}
