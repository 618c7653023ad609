//! Dense linear algebra over GF(p): rank, solve, nullspace.

use crate::arith::Fp;

/// Row-major dense matrix over GF(p).
#[derive(Clone, Debug)]
pub struct FpMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl FpMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        FpMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn rank(&self, fp: &Fp) -> usize {
        let mut m = self.clone();
        row_echelon(fp, &mut m).len()
    }

    /// Nullspace basis (as column vectors).
    pub fn nullspace(&self, fp: &Fp) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = row_echelon(fp, &mut m);
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for &(r, c) in pivots.iter().rev() {
                // m is reduced echelon: row r reads v[c] + sum m[r][j] v[j] = 0
                let mut s = 0u64;
                for j in (c + 1)..self.cols {
                    s = fp.add(s, fp.mul(m.get(r, j), v[j]));
                }
                v[c] = fp.neg(s);
            }
            basis.push(v);
        }
        basis
    }
}

/// Reduce to reduced row echelon form in place; returns (row, col) pivots.
fn row_echelon(fp: &Fp, m: &mut FpMatrix) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row >= m.rows {
            break;
        }
        let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
            continue;
        };
        for c in 0..m.cols {
            let t = m.get(row, c);
            m.set(row, c, m.get(pr, c));
            m.set(pr, c, t);
        }
        let inv = fp.inv(m.get(row, col));
        for c in col..m.cols {
            m.set(row, c, fp.mul(m.get(row, c), inv));
        }
        for r in 0..m.rows {
            if r != row && m.get(r, col) != 0 {
                let f = m.get(r, col);
                for c in col..m.cols {
                    let v = fp.sub(m.get(r, c), fp.mul(f, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    pivots
}

/// Solve A x = b; returns one solution if consistent.
///
/// `reverse_unknowns` perturbs which particular solution is produced by
/// relabelling columns back-to-front before elimination.
pub fn solve(fp: &Fp, a: &FpMatrix, b: &[u64], reverse_unknowns: bool) -> Option<Vec<u64>> {
    assert_eq!(a.rows, b.len());
    let n = a.cols;
    let mut aug = FpMatrix::zero(a.rows, n + 1);
    for r in 0..a.rows {
        for c in 0..n {
            let src = if reverse_unknowns { n - 1 - c } else { c };
            aug.set(r, c, a.get(r, src));
        }
        aug.set(r, n, b[r]);
    }
    let pivots = row_echelon(fp, &mut aug);
    // inconsistent iff a pivot lands in the augmented column
    if pivots.iter().any(|&(_, c)| c == n) {
        return None;
    }
    let mut x = vec![0u64; n];
    for &(r, c) in &pivots {
        // free variables stay 0; pivot value = rhs minus free contributions
        let mut s = aug.get(r, n);
        for j in (c + 1)..n {
            s = fp.sub(s, fp.mul(aug.get(r, j), x[j]));
        }
        x[c] = s;
    }
    if reverse_unknowns {
        x.reverse();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_and_check() {
        let fp = Fp::new(101).unwrap();
        let mut a = FpMatrix::zero(2, 3);
        // x + 2y + z = 4 ; 3x + y = 5
        a.set(0, 0, 1);
        a.set(0, 1, 2);
        a.set(0, 2, 1);
        a.set(1, 0, 3);
        a.set(1, 1, 1);
        let b = vec![4, 5];
        for rev in [false, true] {
            let x = solve(&fp, &a, &b, rev).unwrap();
            for r in 0..2 {
                let mut s = 0;
                for c in 0..3 {
                    s = fp.add(s, fp.mul(a.get(r, c), x[c]));
                }
                assert_eq!(s, b[r]);
            }
        }
    }

    #[test]
    fn inconsistent() {
        let fp = Fp::new(101).unwrap();
        let mut a = FpMatrix::zero(2, 1);
        a.set(0, 0, 1);
        a.set(1, 0, 1);
        assert!(solve(&fp, &a, &[1, 2], false).is_none());
    }

    #[test]
    fn nullspace_dimension() {
        let fp = Fp::new(101).unwrap();
        let mut a = FpMatrix::zero(1, 3);
        a.set(0, 0, 1);
        a.set(0, 1, 1);
        a.set(0, 2, 1);
        let ns = a.nullspace(&fp);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let s = v.iter().fold(0, |acc, &x| fp.add(acc, x));
            assert_eq!(s, 0);
        }
        assert_eq!(a.rank(&fp), 1);
    }
}
