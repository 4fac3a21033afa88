//! Exact Gaussian elimination over [`Scalar`].

use crate::scalars::Scalar;

/// An incrementally built row echelon basis of a subspace of `Scalar^n`.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    /// Rows normalized to pivot 1, with their pivot column.
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    pub fn new(width: usize) -> Echelon {
        Echelon {
            width,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduces `v` against the basis; the remainder is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.width);
        let mut r = v.to_vec();
        for (p, row) in &self.rows {
            if r[*p].is_zero() {
                continue;
            }
            let f = r[*p].clone();
            for (k, x) in row.iter().enumerate().skip(*p) {
                if !x.is_zero() {
                    r[k] = &r[k] - &(&f * x);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns `true` if it was independent of the current span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().unwrap();
        let r: Vec<Scalar> = r.iter().map(|x| x * &inv).collect();
        // keep earlier rows reduced at the new pivot so `reduce` stays one pass
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for k in 0..self.width {
                    if !r[k].is_zero() {
                        row[k] = &row[k] - &(&f * &r[k]);
                    }
                }
            }
        }
        self.rows.push((p, r));
        true
    }
}

/// Rank of a list of row vectors.
pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let mut e = Echelon::new(first.len());
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Determinant of a square matrix.
#[allow(clippy::needless_range_loop)]
pub fn determinant(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det = &det * &p;
        let inv = p.inv().unwrap();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for k in col..n {
                let t = &f * &a[col][k];
                a[r][k] = &a[r][k] - &t;
            }
        }
    }
    det
}

/// Inverse of a square matrix, if it exists.
#[allow(clippy::needless_range_loop)]
pub fn inverse(m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        let inv = a[col][col].inv().unwrap();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for k in 0..2 * n {
                let t = &f * &a[col][k];
                a[r][k] = &a[r][k] - &t;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
