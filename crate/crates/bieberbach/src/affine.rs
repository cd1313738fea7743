//! Affine maps x -> d + D x with invertible rational linear part.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::rat::Rat;

/// An element of the affine group of R^n: translation part plus invertible
/// linear part. Acts on points by applying the linear part first.
#[derive(Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub translation: Vec<Rat>,
    pub linear: RatMatrix,
}

impl std::fmt::Debug for AffineMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Affine(d = [{}], D = {:?})",
            self.translation
                .iter()
                .map(crate::rat::format_rat)
                .collect::<Vec<_>>()
                .join(", "),
            self.linear
        )
    }
}

impl AffineMap {
    pub fn new(translation: Vec<Rat>, linear: RatMatrix) -> Result<Self> {
        if !linear.is_square() || translation.len() != linear.rows() {
            return Err(Error::DimensionMismatch(format!(
                "affine map with translation of length {} and {}x{} linear part",
                translation.len(),
                linear.rows(),
                linear.cols()
            )));
        }
        if !linear.is_invertible() {
            return Err(Error::Singular("affine map needs an invertible linear part".into()));
        }
        Ok(Self { translation, linear })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            translation: vec![Rat::zero(); dim],
            linear: RatMatrix::identity(dim),
        }
    }

    pub fn translation_by(v: Vec<Rat>) -> Self {
        let n = v.len();
        Self {
            translation: v,
            linear: RatMatrix::identity(n),
        }
    }

    pub fn pure_linear(m: RatMatrix) -> Result<Self> {
        let n = m.rows();
        Self::new(vec![Rat::zero(); n], m)
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn is_pure_translation(&self) -> bool {
        self.linear == RatMatrix::identity(self.dim())
    }

    pub fn has_zero_translation(&self) -> bool {
        self.translation.iter().all(Rat::is_zero)
    }

    /// (d1, D1) o (d2, D2) = (d1 + D1 d2, D1 D2)
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch("composition of affine maps".into()));
        }
        let shifted = self.linear.mul_vec(&other.translation)?;
        let translation = self
            .translation
            .iter()
            .zip(&shifted)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            translation,
            linear: self.linear.mul(&other.linear)?,
        })
    }

    /// (d, D)^-1 = (-D^-1 d, D^-1)
    pub fn inverse(&self) -> Result<Self> {
        let inv = self.linear.inverse()?;
        let translation = inv.mul_vec(&self.translation)?.iter().map(|x| -x).collect();
        Ok(Self { translation, linear: inv })
    }

    /// conjugate g -> self o g o self^-1
    pub fn conjugate(&self, g: &Self) -> Result<Self> {
        self.compose(g)?.compose(&self.inverse()?)
    }

    pub fn apply(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch("applying affine map to point".into()));
        }
        let lx = self.linear.mul_vec(x)?;
        Ok(self
            .translation
            .iter()
            .zip(&lx)
            .map(|(d, y)| d + y)
            .collect())
    }
}
