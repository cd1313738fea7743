//! Univariate polynomials over the rationals, constant term first.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;

#[derive(Clone, PartialEq, Eq)]
pub struct RatPoly {
    /// coeffs[i] multiplies x^i; empty means the zero polynomial, otherwise
    /// the last coefficient is nonzero.
    coeffs: Vec<Rat>,
}

impl std::fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", crate::rat::format_rat(c))?,
                1 => write!(f, "{}*x", crate::rat::format_rat(c))?,
                _ => write!(f, "{}*x^{}", crate::rat::format_rat(c), i)?,
            }
        }
        Ok(())
    }
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map(Rat::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| crate::rat::int(c)).collect())
    }

    /// x - r
    pub fn linear_root(r: Rat) -> Self {
        Self::new(vec![-r, Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division; divisor must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial("division by the zero polynomial".into()));
        }
        let d = divisor.coeffs.len() - 1;
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rat::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / &lead;
            quot[i - d] = q.clone();
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let t = &q * b;
                rem[i - d + j] -= t;
            }
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Internal(format!(
                "inexact polynomial division: remainder {r:?}"
            )));
        }
        Ok(q)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * crate::rat::int(i as i64 + 1))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => {
                let inv = Rat::one() / l;
                self.scale(&inv)
            }
        }
    }

    /// Coefficient reversal x^deg * p(1/x). Roots map to their inverses;
    /// zero roots drop out.
    pub fn reciprocal(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(coeffs)
    }

    /// p / gcd(p, p'), the radical: same roots, all simple.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("squarefree part of zero".into()));
        }
        if self.coeffs.len() == 1 {
            return Ok(Self::one());
        }
        let g = poly_gcd(self, &self.derivative())?;
        Ok(self.div_exact(&g)?.monic())
    }
}

/// Monic greatest common divisor over Q.
pub fn poly_gcd(p: &RatPoly, q: &RatPoly) -> Result<RatPoly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroPolynomial("gcd of two zero polynomials".into()));
    }
    let mut a = p.clone();
    let mut b = q.clone();
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b)?;
        a = b;
        b = r;
    }
    Ok(a.monic())
}

/// Count of sign changes in a sequence, skipping zeros.
pub(crate) fn sign_variations(values: &[Rat]) -> usize {
    let signs: Vec<i8> = values
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| if v.is_positive() { 1 } else { -1 })
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn gcd_shared_linear_factor() {
        let p = RatPoly::from_i64(&[-1, 0, 1]); // x^2 - 1
        let q = RatPoly::from_i64(&[-1, 1]); // x - 1
        assert_eq!(poly_gcd(&p, &q).unwrap(), q);
    }

    #[test]
    fn gcd_of_palindromic_with_its_reciprocal() {
        let p = RatPoly::from_i64(&[1, -18, 1]);
        let g = poly_gcd(&p, &p.reciprocal()).unwrap();
        assert_eq!(g, p.monic());
    }

    #[test]
    fn gcd_coprime() {
        let p = RatPoly::from_i64(&[-2, 1]);
        let q = RatPoly::from_i64(&[-3, 1]);
        assert_eq!(poly_gcd(&p, &q).unwrap(), RatPoly::one());
    }

    #[test]
    fn gcd_of_zero_pair_is_an_error() {
        assert!(poly_gcd(&RatPoly::zero(), &RatPoly::zero()).is_err());
    }

    #[test]
    fn div_rem_reconstructs() {
        let p = RatPoly::from_i64(&[3, -2, 0, 5, 1]);
        let d = RatPoly::from_i64(&[1, 2, 1]);
        let (q, r) = p.div_rem(&d).unwrap();
        assert_eq!(d.mul(&q).add(&r), p);
        assert!(r.degree() < d.degree());
    }

    #[test]
    fn squarefree_part_drops_multiplicity() {
        // (x-1)^2 (x+2)
        let p = RatPoly::linear_root(int(1))
            .mul(&RatPoly::linear_root(int(1)))
            .mul(&RatPoly::linear_root(int(-2)));
        let sf = p.squarefree_part().unwrap();
        let expect = RatPoly::linear_root(int(1)).mul(&RatPoly::linear_root(int(-2)));
        assert_eq!(sf, expect.monic());
    }

    #[test]
    fn eval_horner() {
        let p = RatPoly::from_i64(&[1, 0, 1]); // x^2 + 1
        assert_eq!(p.eval(&rat(1, 2)), rat(5, 4));
    }
}
