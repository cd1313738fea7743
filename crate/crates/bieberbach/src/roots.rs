//! Exact root location: Sturm sequences, unit-circle root counting and the
//! Schur-Cohn test. No floating point anywhere on these paths.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{poly_gcd, sign_variations, RatPoly};
use crate::rat::{int, Rat};

/// Canonical Sturm chain of the squarefree part of p.
fn sturm_chain(p: &RatPoly) -> Result<Vec<RatPoly>> {
    let p = p.squarefree_part()?;
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1])?;
        if r.is_zero() {
            break;
        }
        chain.push(r.neg());
    }
    Ok(chain)
}

fn variations_at(chain: &[RatPoly], x: &Rat) -> usize {
    let values: Vec<Rat> = chain.iter().map(|p| p.eval(x)).collect();
    sign_variations(&values)
}

/// Count of distinct real roots of p in the half-open interval (a, b].
pub fn sturm_count(p: &RatPoly, a: &Rat, b: &Rat) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("Sturm count of the zero polynomial".into()));
    }
    if a >= b {
        return Err(Error::EmptyInterval);
    }
    let chain = sturm_chain(p)?;
    let va = variations_at(&chain, a);
    let vb = variations_at(&chain, b);
    Ok(va.saturating_sub(vb))
}

/// Write a monic palindromic polynomial g of even degree 2m as
/// x^m * h(x + 1/x) and return h (degree m). Requires g(0) != 0 and
/// coefficient symmetry, which the caller guarantees.
fn halve_palindromic(g: &RatPoly) -> Result<RatPoly> {
    let deg = g.degree().ok_or_else(|| Error::ZeroPolynomial("palindromic half".into()))?;
    if deg % 2 != 0 {
        return Err(Error::Internal(format!(
            "palindromic factor has odd degree {deg}"
        )));
    }
    let m = deg / 2;
    for i in 0..=deg {
        if g.coeff(i) != g.coeff(deg - i) {
            return Err(Error::Internal("polynomial is not palindromic".into()));
        }
    }
    // basis polynomials c_k(y) with x^k + x^-k = c_k(x + 1/x):
    // c_0 = 2, c_1 = y, c_{k+1} = y*c_k - c_{k-1}
    let y = RatPoly::new(vec![Rat::zero(), Rat::one()]);
    let mut c_prev = RatPoly::constant(int(2));
    let mut c_cur = y.clone();
    let mut h = RatPoly::constant(g.coeff(m));
    for k in 1..=m {
        h = h.add(&c_cur.scale(&g.coeff(m + k)));
        let next = y.mul(&c_cur).sub(&c_prev);
        c_prev = std::mem::replace(&mut c_cur, next);
    }
    Ok(h)
}

/// Exact count of distinct roots of p on the unit circle |x| = 1.
///
/// Conjugate pairs e^{+-i t} count twice; real roots at 1 or -1 count once.
/// The computation runs on the squarefree part, so multiplicities beyond the
/// first are ignored by design: callers only branch on zero vs nonzero.
pub fn unit_circle_root_count(p: &RatPoly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("unit-circle count of the zero polynomial".into()));
    }
    let q = p.squarefree_part()?;
    if q.degree() == Some(0) {
        return Ok(0);
    }
    // every root on the circle is a common root of q and its reciprocal
    let mut g = poly_gcd(&q, &q.reciprocal())?;
    let mut count = 0;
    if g.eval(&int(1)).is_zero() {
        count += 1;
        g = g.div_exact(&RatPoly::linear_root(int(1)))?;
    }
    if g.eval(&int(-1)).is_zero() {
        count += 1;
        g = g.div_exact(&RatPoly::linear_root(int(-1)))?;
    }
    if g.degree() == Some(0) {
        return Ok(count);
    }
    // remaining roots come in inverse pairs {r, 1/r} with r != +-1, so g is
    // monic palindromic of even degree; y = x + 1/x folds each pair to one
    // root, real and inside (-2, 2) exactly for the circle pairs
    let h = halve_palindromic(&g)?;
    count += 2 * sturm_count(&h, &int(-2), &int(2))?;
    Ok(count)
}

/// True iff every root of p lies strictly inside the unit circle.
///
/// Classical Schur-Cohn reduction over Q. A boundary equality
/// |constant| = |leading| certifies the answer false outright: the product of
/// the root moduli equals |constant/leading|, which is < 1 whenever all roots
/// are strictly inside.
pub fn schur_cohn_all_inside(p: &RatPoly) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial("Schur-Cohn test of the zero polynomial".into()));
    }
    let mut cur = p.clone();
    loop {
        let deg = cur.degree().expect("reduction keeps the polynomial nonzero");
        if deg == 0 {
            return Ok(true);
        }
        let a0 = cur.coeff(0);
        let an = cur.leading().unwrap().clone();
        if a0.abs() >= an.abs() {
            return Ok(false);
        }
        // T(p) = (an*p - a0*reciprocal(p)) / x, degree exactly deg-1
        let t = cur.scale(&an).sub(&cur.reciprocal().scale(&a0));
        debug_assert!(t.coeff(0).is_zero());
        let mut coeffs = t.coeffs().to_vec();
        if coeffs.is_empty() {
            return Err(Error::Internal("Schur-Cohn transform vanished".into()));
        }
        coeffs.remove(0);
        cur = RatPoly::new(coeffs);
        debug_assert_eq!(cur.degree(), Some(deg - 1));
    }
}
