//! Exact strict-positivity feasibility: does some `m ≥ 0` give `D m > 0`?
//!
//! Solved as the matrix game with payoff `D + c` (all entries positive) by a
//! rational simplex with Bland's rule. Either outcome carries a certificate
//! that is re-checked exactly.

use num_traits::{One, Signed, Zero};

use crate::linalg::{q, Q};

#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility {
    /// `m ≥ 0` with `D m > 0` componentwise.
    Feasible(Vec<Q>),
    /// `y ≥ 0`, `y ≠ 0` with `Dᵀ y ≤ 0`, which rules out any such `m`.
    Infeasible(Vec<Q>),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// `max Σ w` subject to `Aᵀ w ≤ 1`, `w ≥ 0` for a positive matrix `A`.
/// Returns `(w, u, value)` with `u` the optimal dual.
fn solve_dual(a: &[Vec<Q>]) -> (Vec<Q>, Vec<Q>, Q) {
    let n = a.len();
    let k = a[0].len();
    let width = n + k + 1;
    let mut rows: Vec<Vec<Q>> = (0..k)
        .map(|j| {
            let mut r = vec![Q::zero(); width];
            for i in 0..n {
                r[i] = a[i][j].clone();
            }
            r[n + j] = Q::one();
            r[width - 1] = Q::one();
            r
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + k).collect();
    let mut obj: Vec<Q> = (0..width)
        .map(|j| if j < n { Q::one() } else { Q::zero() })
        .collect();
    while let Some(enter) = (0..width - 1).find(|&j| obj[j].is_positive()) {
        let mut leave: Option<(usize, Q)> = None;
        for (r, row) in rows.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width - 1] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let (r, _) = leave.expect("bounded: every column of A is positive");
        let inv = Q::one() / &rows[r][enter];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        let f = obj[enter].clone();
        for (x, p) in obj.iter_mut().zip(&pivot) {
            if !p.is_zero() {
                *x -= &f * p;
            }
        }
        basis[r] = enter;
    }
    let mut w = vec![Q::zero(); n];
    for (r, &b) in basis.iter().enumerate() {
        if b < n {
            w[b] = rows[r][width - 1].clone();
        }
    }
    let u: Vec<Q> = (0..k).map(|j| -obj[n + j].clone()).collect();
    let value = -obj[width - 1].clone();
    (w, u, value)
}

/// Decides `∃ m ≥ 0 : D m > 0` exactly.
pub fn strict_positive_combination(d: &[Vec<i64>]) -> Feasibility {
    let n = d.len();
    let k = d.first().map_or(0, |r| r.len());
    if n == 0 {
        return Feasibility::Feasible(vec![Q::zero(); k]);
    }
    if k == 0 {
        let mut y = vec![Q::zero(); n];
        y[0] = Q::one();
        return Feasibility::Infeasible(y);
    }
    let min = d.iter().flatten().copied().min().unwrap();
    let c = 1 - min.min(0);
    let a: Vec<Vec<Q>> = d
        .iter()
        .map(|r| r.iter().map(|&x| q(x + c)).collect())
        .collect();
    let (w, u, value) = solve_dual(&a);
    let cq = q(c);
    let out = if &value * &cq < Q::one() {
        Feasibility::Feasible(u)
    } else {
        Feasibility::Infeasible(w)
    };
    assert!(
        verify(d, &out),
        "simplex certificate failed exact verification"
    );
    out
}

/// Checks a certificate exactly.
pub fn verify(d: &[Vec<i64>], f: &Feasibility) -> bool {
    match f {
        Feasibility::Feasible(m) => {
            m.iter().all(|x| !x.is_negative())
                && d.iter().all(|row| {
                    row.iter()
                        .zip(m)
                        .map(|(&a, x)| q(a) * x)
                        .sum::<Q>()
                        .is_positive()
                })
        }
        Feasibility::Infeasible(y) => {
            let k = d.first().map_or(0, |r| r.len());
            y.iter().all(|x| !x.is_negative())
                && y.iter().any(|x| x.is_positive())
                && (0..k).all(|j| {
                    !d.iter()
                        .zip(y)
                        .map(|(row, x)| q(row[j]) * x)
                        .sum::<Q>()
                        .is_positive()
                })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn feasible_and_infeasible() {
        let d = vec![vec![1, -1], vec![-1, 2]];
        assert!(strict_positive_combination(&d).is_feasible());
        let d = vec![vec![1, -1], vec![-1, 1]];
        assert!(!strict_positive_combination(&d).is_feasible());
        let d = vec![vec![0, 0]];
        assert!(!strict_positive_combination(&d).is_feasible());
        let d = vec![vec![-3, 2], vec![5, -1], vec![1, 1]];
        let f = strict_positive_combination(&d);
        assert!(f.is_feasible() && verify(&d, &f));
    }

    #[test]
    fn degenerate_shapes() {
        assert!(strict_positive_combination(&[]).is_feasible());
        assert!(!strict_positive_combination(&[vec![]]).is_feasible());
    }
}
