//! Exact linear solving over the rationals.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::rat::Rat;

/// Outcome of solving A x = b over Q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// A particular solution plus a basis of the kernel of A. The full
    /// solution set is particular + span(kernel).
    Solvable {
        particular: Vec<Rat>,
        kernel: Vec<Vec<Rat>>,
    },
    Inconsistent,
}

impl SolveOutcome {
    pub fn particular(&self) -> Option<&Vec<Rat>> {
        match self {
            SolveOutcome::Solvable { particular, .. } => Some(particular),
            SolveOutcome::Inconsistent => None,
        }
    }
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(a: &mut RatMatrix) -> Vec<usize> {
    let (m, n) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row >= m {
            break;
        }
        let Some(p) = (row..m).find(|&r| !a[(r, col)].is_zero()) else {
            continue;
        };
        if p != row {
            for c in 0..n {
                let tmp = a[(p, c)].clone();
                a[(p, c)] = a[(row, c)].clone();
                a[(row, c)] = tmp;
            }
        }
        let pv = a[(row, col)].clone();
        for c in col..n {
            a[(row, c)] /= pv.clone();
        }
        for r in 0..m {
            if r == row || a[(r, col)].is_zero() {
                continue;
            }
            let f = a[(r, col)].clone();
            for c in col..n {
                let t = &f * &a[(row, c)];
                a[(r, c)] -= t;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of the rational kernel {x : A x = 0}, with free variables set to 1
/// one at a time.
pub fn rat_kernel(a: &RatMatrix) -> Vec<Vec<Rat>> {
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let n = a.cols();
    let mut basis = Vec::new();
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; n];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    for free in (0..n).filter(|c| !is_pivot[*c]) {
        let mut vec = vec![Rat::zero(); n];
        vec[free] = crate::rat::int(1);
        for (r, &p) in pivots.iter().enumerate() {
            vec[p] = -m[(r, free)].clone();
        }
        basis.push(vec);
    }
    basis
}

/// Solve A x = b exactly. The particular solution sets all free variables to
/// zero, so it is deterministic.
pub fn solve_exact(a: &RatMatrix, b: &[Rat]) -> Result<SolveOutcome> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "system has {} rows but right-hand side has {} entries",
            a.rows(),
            b.len()
        )));
    }
    let (m, n) = (a.rows(), a.cols());
    let mut aug = RatMatrix::from_fn(m, n + 1, |r, c| {
        if c < n {
            a[(r, c)].clone()
        } else {
            b[r].clone()
        }
    });
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return Ok(SolveOutcome::Inconsistent);
    }
    let mut particular = vec![Rat::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        particular[p] = aug[(r, n)].clone();
    }
    Ok(SolveOutcome::Solvable {
        particular,
        kernel: rat_kernel(a),
    })
}
