//! Smith normal form and integer linear systems.
//!
//! The decomposition U A V = D with unimodular U, V and a divisibility chain
//! on the diagonal drives every quotient-group computation in this crate:
//! abelianizations, finite quotients, integer kernels and torsion checks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

#[derive(Debug, Clone)]
pub struct SnfResult {
    /// Diagonal matrix with d1 | d2 | ... and every di >= 0.
    pub d: IntMatrix,
    /// Unimodular row transform.
    pub u: IntMatrix,
    /// Unimodular column transform.
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let r = self.d.rows().min(self.d.cols());
        (0..r).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Count of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for c in 0..m.cols() {
        let t = m[(a, c)].clone();
        m[(a, c)] = m[(b, c)].clone();
        m[(b, c)] = t;
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for r in 0..m.rows() {
        let t = m[(r, a)].clone();
        m[(r, a)] = m[(r, b)].clone();
        m[(r, b)] = t;
    }
}

/// row[dst] += q * row[src]
fn add_row(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for c in 0..m.cols() {
        let t = q * &m[(src, c)];
        m[(dst, c)] += t;
    }
}

fn add_col(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for r in 0..m.rows() {
        let t = q * &m[(r, src)];
        m[(r, dst)] += t;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for c in 0..m.cols() {
        let t = -m[(r, c)].clone();
        m[(r, c)] = t;
    }
}

/// Smith normal form by elementary row/column operations. Coefficient growth
/// is absorbed by arbitrary-precision integers.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    let rank_bound = m.min(n);
    for k in 0..rank_bound {
        'pivot: loop {
            // smallest nonzero entry of the trailing submatrix into (k, k)
            let mut best: Option<(usize, usize)> = None;
            for i in k..m {
                for j in k..n {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    let replace = match &best {
                        None => true,
                        Some((bi, bj)) => d[(i, j)].abs() < d[(*bi, *bj)].abs(),
                    };
                    if replace {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                // trailing submatrix is zero: done with the whole matrix
                return finish(d, u, v, k);
            };
            swap_rows(&mut d, k, pi);
            swap_rows(&mut u, k, pi);
            swap_cols(&mut d, k, pj);
            swap_cols(&mut v, k, pj);

            // clear below and to the right of the pivot
            let mut dirty = false;
            for i in k + 1..m {
                if d[(i, k)].is_zero() {
                    continue;
                }
                let q = -d[(i, k)].div_floor(&d[(k, k)]);
                add_row(&mut d, i, k, &q);
                add_row(&mut u, i, k, &q);
                if !d[(i, k)].is_zero() {
                    dirty = true; // remainder left; re-pivot on a smaller entry
                }
            }
            for j in k + 1..n {
                if d[(k, j)].is_zero() {
                    continue;
                }
                let q = -d[(k, j)].div_floor(&d[(k, k)]);
                add_col(&mut d, j, k, &q);
                add_col(&mut v, j, k, &q);
                if !d[(k, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }

            // enforce the divisibility chain: any non-multiple below-right
            // gets folded into row k so the next pass shrinks the pivot
            let pivot = d[(k, k)].clone();
            for i in k + 1..m {
                for j in k + 1..n {
                    if !(&d[(i, j)] % &pivot).is_zero() {
                        let one = BigInt::from(1);
                        add_row(&mut d, k, i, &one);
                        add_row(&mut u, k, i, &one);
                        continue 'pivot;
                    }
                }
            }
            break;
        }
    }
    finish(d, u, v, rank_bound)
}

fn finish(mut d: IntMatrix, mut u: IntMatrix, v: IntMatrix, upto: usize) -> SnfResult {
    for k in 0..upto.min(d.rows()).min(d.cols()) {
        if d[(k, k)].is_negative() {
            negate_row(&mut d, k);
            negate_row(&mut u, k);
        }
    }
    SnfResult { d, u, v }
}

/// Outcome of solving A x = b over the integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntSolveOutcome {
    Solvable {
        particular: Vec<BigInt>,
        /// Basis of the kernel lattice {x : A x = 0}; primitive because the
        /// vectors are columns of a unimodular matrix.
        kernel: Vec<Vec<BigInt>>,
    },
    NoSolution,
}

impl IntSolveOutcome {
    pub fn particular(&self) -> Option<&Vec<BigInt>> {
        match self {
            IntSolveOutcome::Solvable { particular, .. } => Some(particular),
            IntSolveOutcome::NoSolution => None,
        }
    }
}

fn kernel_from_snf(snf: &SnfResult) -> Vec<Vec<BigInt>> {
    let n = snf.v.cols();
    let r = snf.d.rows().min(n);
    (0..n)
        .filter(|&j| j >= r || snf.d[(j, j)].is_zero())
        .map(|j| snf.v.col(j))
        .collect()
}

pub fn integer_solve(a: &IntMatrix, b: &[BigInt]) -> Result<IntSolveOutcome> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "system has {} rows but right-hand side has {} entries",
            a.rows(),
            b.len()
        )));
    }
    let snf = smith_normal_form(a);
    let c = snf.u.mul_vec(b)?;
    let (m, n) = (a.rows(), a.cols());
    let r = m.min(n);
    let mut y = vec![BigInt::zero(); n];
    for i in 0..m {
        if i < r && !snf.d[(i, i)].is_zero() {
            let (q, rem) = c[i].div_rem(&snf.d[(i, i)]);
            if !rem.is_zero() {
                return Ok(IntSolveOutcome::NoSolution);
            }
            y[i] = q;
        } else if !c[i].is_zero() {
            return Ok(IntSolveOutcome::NoSolution);
        }
    }
    let particular = snf.v.mul_vec(&y)?;
    Ok(IntSolveOutcome::Solvable {
        particular,
        kernel: kernel_from_snf(&snf),
    })
}

/// Primitive basis of {x in Z^n : A x = 0}.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    kernel_from_snf(&smith_normal_form(a))
}
