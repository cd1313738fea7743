//! Abelianizations, finite quotients and the maps that endomorphisms induce
//! on them.
//!
//! A group built from lattice generators t1..tn and holonomy representatives
//! g1..g_{f-1} presents its abelianization by the relation rows
//! (M_mu - I) e_i (the holonomy action on the lattice) and
//! g_i + g_j - g_{ij} = c(i, j) (the cocycle products). Smith normal form of
//! the relation matrix yields invariant factors and canonical coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::affine::AffineMap;
use crate::endo::conjugation_endo;
use crate::error::{Error, Result};
use crate::group::{CrystGroup, GroupElement};
use crate::matrix::IntMatrix;
use crate::snf::{integer_solve, smith_normal_form, IntSolveOutcome};

/// A finitely generated abelian group in invariant-factor form, together
/// with the projection from the source generators onto canonical
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinAbGroup {
    /// Moduli of the canonical coordinates: a divisibility chain of entries
    /// > 1 followed by zeros, where 0 denotes a free summand.
    factors: Vec<BigInt>,
    /// Rows of U giving the kept canonical coordinates.
    kept_rows: Vec<usize>,
    u: IntMatrix,
    u_inv: IntMatrix,
    source_gens: usize,
}

impl FinAbGroup {
    fn from_relations(source_gens: usize, relations: &[Vec<BigInt>]) -> Result<Self> {
        let k = source_gens;
        if relations.is_empty() {
            return Ok(Self {
                factors: vec![BigInt::zero(); k],
                kept_rows: (0..k).collect(),
                u: IntMatrix::identity(k),
                u_inv: IntMatrix::identity(k),
                source_gens: k,
            });
        }
        let m = relations.len();
        let mut a = IntMatrix::zero(k, m);
        for (j, rel) in relations.iter().enumerate() {
            if rel.len() != k {
                return Err(Error::DimensionMismatch("relation row of wrong length".into()));
            }
            for i in 0..k {
                a[(i, j)] = rel[i].clone();
            }
        }
        let snf = smith_normal_form(&a);
        let mut diag = vec![BigInt::zero(); k];
        for (i, d) in snf.diagonal().into_iter().enumerate() {
            diag[i] = d;
        }
        let kept_rows: Vec<usize> = (0..k).filter(|&i| !diag[i].is_one()).collect();
        let factors: Vec<BigInt> = kept_rows.iter().map(|&i| diag[i].clone()).collect();
        let u_inv = snf
            .u
            .to_rat_matrix()
            .inverse()
            .map_err(|_| Error::Internal("SNF row transform not invertible".into()))?
            .to_int_matrix()
            .ok_or_else(|| Error::Internal("unimodular inverse not integral".into()))?;
        Ok(Self {
            factors,
            kept_rows,
            u: snf.u,
            u_inv,
            source_gens: k,
        })
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn source_generator_count(&self) -> usize {
        self.source_gens
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.factors.iter().all(|d| !d.is_zero())
    }

    pub fn order(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(self.factors.iter().fold(BigInt::one(), |acc, d| acc * d))
    }

    fn reduce_entry(&self, row: usize, value: BigInt) -> BigInt {
        let d = &self.factors[row];
        if d.is_zero() {
            value
        } else {
            value.mod_floor(d)
        }
    }

    /// Canonical coordinates of an exponent vector over the source
    /// generators, reduced modulo the factors.
    pub fn project(&self, exponents: &[BigInt]) -> Result<Vec<BigInt>> {
        if exponents.len() != self.source_gens {
            return Err(Error::DimensionMismatch("exponent vector of wrong length".into()));
        }
        let full = self.u.mul_vec(exponents)?;
        Ok(self
            .kept_rows
            .iter()
            .enumerate()
            .map(|(pos, &row)| self.reduce_entry(pos, full[row].clone()))
            .collect())
    }

    /// Images of the source generators in canonical coordinates, one vector
    /// per generator.
    pub fn generator_images(&self) -> Result<Vec<Vec<BigInt>>> {
        (0..self.source_gens)
            .map(|j| {
                let mut e = vec![BigInt::zero(); self.source_gens];
                e[j] = BigInt::one();
                self.project(&e)
            })
            .collect()
    }

    pub fn reduce_vec(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        for (pos, entry) in v.iter_mut().enumerate() {
            let d = &self.factors[pos];
            if !d.is_zero() {
                *entry = entry.mod_floor(d);
            }
        }
        v
    }

    /// Solve C x = v in the quotient, where the columns of C are elements
    /// given in canonical coordinates. Used for subgroup membership.
    pub fn solve_combination(&self, columns: &[Vec<BigInt>], v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        let q = self.num_factors();
        if v.len() != q {
            return Err(Error::DimensionMismatch("target vector of wrong length".into()));
        }
        if columns.is_empty() {
            return Ok(if v.iter().enumerate().all(|(i, x)| self.reduce_entry(i, x.clone()).is_zero()) {
                Some(vec![])
            } else {
                None
            });
        }
        // augmented system [C | diag(factors)] x' = v over the integers
        let m = columns.len();
        let mut a = IntMatrix::zero(q, m + q);
        for (j, col) in columns.iter().enumerate() {
            if col.len() != q {
                return Err(Error::DimensionMismatch("column of wrong length".into()));
            }
            for i in 0..q {
                a[(i, j)] = col[i].clone();
            }
        }
        for i in 0..q {
            a[(i, m + i)] = self.factors[i].clone();
        }
        match integer_solve(&a, v)? {
            IntSolveOutcome::Solvable { particular, .. } => Ok(Some(particular[..m].to_vec())),
            IntSolveOutcome::NoSolution => Ok(None),
        }
    }

    /// Inverse of a square matrix acting on the quotient coordinates, if the
    /// matrix is an automorphism.
    pub fn matrix_inverse(&self, m: &[Vec<BigInt>]) -> Result<Option<Vec<Vec<BigInt>>>> {
        let q = self.num_factors();
        if m.len() != q {
            return Err(Error::DimensionMismatch("matrix of wrong size".into()));
        }
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(q);
        #[allow(clippy::needless_range_loop)]
        for j in 0..q {
            cols.push((0..q).map(|i| m[i][j].clone()).collect());
        }
        let mut inv_cols = Vec::with_capacity(q);
        for i in 0..q {
            let mut e = vec![BigInt::zero(); q];
            e[i] = BigInt::one();
            match self.solve_combination(&cols, &e)? {
                Some(x) => inv_cols.push(x),
                None => return Ok(None),
            }
        }
        // inv_cols[j] is the preimage of e_j: assemble X with X e_j = inv_cols[j]
        let x: Vec<Vec<BigInt>> = (0..q)
            .map(|i| {
                (0..q)
                    .map(|j| self.reduce_entry(i, inv_cols[j][i].clone()))
                    .collect()
            })
            .collect();
        // verify both compositions; one-sided inverses are not enough in
        // mixed-modulus coordinates
        if !self.matrix_eq_identity(&self.matrix_mul(&x, m))
            || !self.matrix_eq_identity(&self.matrix_mul(m, &x))
        {
            return Ok(None);
        }
        Ok(Some(x))
    }

    pub fn matrix_mul(&self, a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let q = self.num_factors();
        (0..q)
            .map(|i| {
                (0..q)
                    .map(|j| {
                        let mut acc = BigInt::zero();
                        for (k, b_row) in b.iter().enumerate() {
                            acc += &a[i][k] * &b_row[j];
                        }
                        self.reduce_entry(i, acc)
                    })
                    .collect()
            })
            .collect()
    }

    pub fn matrix_eq_identity(&self, m: &[Vec<BigInt>]) -> bool {
        let q = self.num_factors();
        (0..q).all(|i| {
            (0..q).all(|j| {
                let want = if i == j { BigInt::one() } else { BigInt::zero() };
                self.reduce_entry(i, m[i][j].clone()) == self.reduce_entry(i, want)
            })
        })
    }

    /// Apply a matrix to an element in canonical coordinates.
    pub fn matrix_apply(&self, m: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
        let q = self.num_factors();
        (0..q)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (k, vk) in v.iter().enumerate() {
                    acc += &m[i][k] * vk;
                }
                self.reduce_entry(i, acc)
            })
            .collect()
    }

    /// Enumerate all elements (finite quotients only), odometer order.
    pub fn elements(&self) -> Result<Vec<Vec<BigInt>>> {
        if !self.is_finite() {
            return Err(Error::QuotientNotFinite);
        }
        let mut out = vec![vec![]];
        for d in &self.factors {
            let mut next = Vec::new();
            for prefix in &out {
                let mut k = BigInt::zero();
                while &k < d {
                    let mut v = prefix.clone();
                    v.push(k.clone());
                    next.push(v);
                    k += 1;
                }
            }
            out = next;
        }
        Ok(out)
    }
}

/// Which quotient of the group to take.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientSpec {
    /// The full abelianization.
    Abelianization,
    /// Abelianization modulo k-th powers: always finite and functorial for
    /// every endomorphism.
    ModK(u64),
    /// Abelianization modulo the image of the center: functorial for
    /// automorphisms; endomorphisms must be checked for invariance.
    Center,
}

impl std::fmt::Display for QuotientSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuotientSpec::Abelianization => write!(f, "ab"),
            QuotientSpec::ModK(k) => write!(f, "mod:{k}"),
            QuotientSpec::Center => write!(f, "center"),
        }
    }
}

/// Exponent vector of a group element over the source generators
/// (t1..tn, g1..g_{f-1}).
pub fn element_exponents(group: &CrystGroup, e: &GroupElement) -> Vec<BigInt> {
    let n = group.dim();
    let f = group.holonomy_order();
    let mut v = Vec::with_capacity(n + f - 1);
    v.extend(e.lattice_part.iter().cloned());
    for idx in 1..f {
        v.push(if e.holonomy_index == idx {
            BigInt::one()
        } else {
            BigInt::zero()
        });
    }
    v
}

fn base_relations(group: &CrystGroup) -> Result<Vec<Vec<BigInt>>> {
    let n = group.dim();
    let f = group.holonomy_order();
    let k = n + f - 1;
    let mut rows = Vec::new();
    for mu in 1..f {
        let m = group.holonomy()[mu].lattice_linear();
        for i in 0..n {
            let mut row = vec![BigInt::zero(); k];
            for r in 0..n {
                row[r] = m[(r, i)].clone() - if r == i { BigInt::one() } else { BigInt::zero() };
            }
            rows.push(row);
        }
    }
    for i in 1..f {
        for j in 1..f {
            let kk = group.multiply_holonomy(i, j);
            let prod = group.rep_map(i).compose(&group.rep_map(j))?;
            let rep_k = group.rep_translation(kk);
            let diff: Vec<crate::rat::Rat> = prod
                .translation
                .iter()
                .zip(&rep_k)
                .map(|(a, b)| a - b)
                .collect();
            let coords = group.lattice_inv().mul_vec(&diff)?;
            let mut row = vec![BigInt::zero(); k];
            for (r, c) in coords.iter().enumerate() {
                debug_assert!(crate::rat::is_integer(c));
                row[r] = -c.to_integer();
            }
            row[n + i - 1] += BigInt::one();
            row[n + j - 1] += BigInt::one();
            if kk != 0 {
                row[n + kk - 1] -= BigInt::one();
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

pub fn abelianization(group: &CrystGroup) -> Result<FinAbGroup> {
    quotient(group, &QuotientSpec::Abelianization)
}

pub fn quotient(group: &CrystGroup, spec: &QuotientSpec) -> Result<FinAbGroup> {
    let n = group.dim();
    let f = group.holonomy_order();
    let k = n + f - 1;
    let mut rows = base_relations(group)?;
    match spec {
        QuotientSpec::Abelianization => {}
        QuotientSpec::ModK(m) => {
            if *m < 2 {
                return Err(Error::InvalidModulus(*m as i64));
            }
            for i in 0..k {
                let mut row = vec![BigInt::zero(); k];
                row[i] = BigInt::from(*m);
                rows.push(row);
            }
        }
        QuotientSpec::Center => {
            for z in group.center_lattice()? {
                let mut row = vec![BigInt::zero(); k];
                row[..n].clone_from_slice(&z);
                rows.push(row);
            }
        }
    }
    FinAbGroup::from_relations(k, &rows)
}

/// A map induced on a quotient, as a matrix on canonical coordinates with
/// entries reduced modulo the respective factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMap {
    pub quotient: FinAbGroup,
    pub matrix: Vec<Vec<BigInt>>,
}

impl QuotientMap {
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.quotient.matrix_apply(&self.matrix, v)
    }
}

pub fn induced_on_quotient(
    group: &CrystGroup,
    alpha: &AffineMap,
    spec: &QuotientSpec,
) -> Result<QuotientMap> {
    let status = conjugation_endo(group, alpha)?;
    if !status.induces {
        return Err(Error::NotAnEndomorphism(
            "the map does not conjugate the group into itself".into(),
        ));
    }
    induced_from_status(group, &status.conjugated_generators, spec)
}

/// Shared path when the generator images are already known.
pub fn induced_from_status(
    group: &CrystGroup,
    images: &[GroupElement],
    spec: &QuotientSpec,
) -> Result<QuotientMap> {
    let q = quotient(group, spec)?;
    let n = group.dim();
    let k = q.source_generator_count();

    if matches!(spec, QuotientSpec::Center) {
        // images of the center must die in the quotient, otherwise the
        // induced map is not defined on it
        for z in group.center_lattice()? {
            let img = apply_on_lattice_vector(group, images, &z)?;
            let mut exp = vec![BigInt::zero(); k];
            exp[..n].clone_from_slice(&img);
            if q.project(&exp)?.iter().any(|c| !c.is_zero()) {
                return Err(Error::CenterNotInvariant);
            }
        }
    }

    // W covers the induced endomorphism on the source generators
    let mut w = IntMatrix::zero(k, k);
    for (j, e) in images.iter().enumerate() {
        let col = element_exponents(group, e);
        for i in 0..k {
            w[(i, j)] = col[i].clone();
        }
    }
    let m_full = q.u.mul(&w)?.mul(&q.u_inv)?;

    // the full matrix must respect every modulus; functoriality guarantees
    // it for genuine endomorphisms, so a failure here is an internal bug
    for (pos_i, &ri) in q.kept_rows.iter().enumerate() {
        let d_i = &q.factors[pos_i];
        for j in 0..k {
            let d_j: BigInt = if let Some(pos_j) = q.kept_rows.iter().position(|&r| r == j) {
                q.factors[pos_j].clone()
            } else {
                BigInt::one()
            };
            let prod = &m_full[(ri, j)] * &d_j;
            let ok = if d_i.is_zero() {
                prod.is_zero()
            } else {
                (&prod % d_i).is_zero()
            };
            if !ok {
                return Err(Error::Internal(
                    "induced matrix does not respect the quotient moduli".into(),
                ));
            }
        }
    }

    let qn = q.num_factors();
    let mut matrix = vec![vec![BigInt::zero(); qn]; qn];
    #[allow(clippy::needless_range_loop)]
    for i in 0..qn {
        for j in 0..qn {
            matrix[i][j] = q.reduce_entry(i, m_full[(q.kept_rows[i], q.kept_rows[j])].clone());
        }
    }
    Ok(QuotientMap {
        quotient: q,
        matrix,
    })
}

/// Image of the lattice vector z under the endomorphism described by the
/// generator images, in lattice coordinates.
fn apply_on_lattice_vector(
    group: &CrystGroup,
    images: &[GroupElement],
    z: &[BigInt],
) -> Result<Vec<BigInt>> {
    let n = group.dim();
    let mut out = vec![BigInt::zero(); n];
    for (i, zi) in z.iter().enumerate() {
        let img = &images[i];
        if img.holonomy_index != 0 {
            return Err(Error::Internal("lattice image with holonomy".into()));
        }
        for (o, c) in out.iter_mut().zip(&img.lattice_part) {
            *o += zi * c;
        }
    }
    Ok(out)
}

/// Rewrite the induced matrix in the basis given by the images of selected
/// source generators, when those images form a basis of the quotient.
pub fn matrix_in_generator_basis(
    qm: &QuotientMap,
    family: &[usize],
) -> Result<Option<Vec<Vec<BigInt>>>> {
    let q = qm.quotient.num_factors();
    if family.len() != q {
        return Ok(None);
    }
    let images = qm.quotient.generator_images()?;
    let c: Vec<Vec<BigInt>> = (0..q)
        .map(|i| family.iter().map(|&j| images[j][i].clone()).collect())
        .collect();
    let Some(c_inv) = qm.quotient.matrix_inverse(&c)? else {
        return Ok(None);
    };
    let m_b = qm
        .quotient
        .matrix_mul(&c_inv, &qm.quotient.matrix_mul(&qm.matrix, &c));
    Ok(Some(m_b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, BuildOptions};
    use crate::matrix::RatMatrix;
    use crate::rat::{int, rat};
    use num_traits::Signed;

    fn klein() -> CrystGroup {
        let a = AffineMap::translation_by(vec![int(1), int(0)]);
        let b = AffineMap::new(
            vec![int(0), rat(1, 2)],
            RatMatrix::from_i64_rows(&[&[-1, 0], &[0, 1]]),
        )
        .unwrap();
        build_group(2, None, &[a, b], &BuildOptions::default()).unwrap()
    }

    fn klein_alpha() -> AffineMap {
        AffineMap::new(
            vec![rat(1, 2), int(0)],
            RatMatrix::from_i64_rows(&[&[3, 0], &[0, 3]]),
        )
        .unwrap()
    }

    fn factors_i64(q: &FinAbGroup) -> Vec<i64> {
        q.invariant_factors()
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn klein_abelianization_is_z2_plus_z() {
        let g = klein();
        let ab = abelianization(&g).unwrap();
        assert_eq!(factors_i64(&ab), vec![2, 0]);
        // the torsion class is generated by the image of t1 = a
        let images = ab.generator_images().unwrap();
        let a_bar = &images[0];
        assert_eq!(a_bar[0], BigInt::one(), "a generates the Z2 part");
        assert!(a_bar[1].is_zero());
        // t2 = b^2: twice the generator of the free part
        let b2_bar = &images[1];
        assert!(b2_bar[0].is_zero());
        assert_eq!(b2_bar[1].clone().abs(), BigInt::from(2));
    }

    #[test]
    fn trivial_holonomy_abelianization_is_free() {
        let g = build_group(
            2,
            None,
            &[AffineMap::translation_by(vec![int(1), int(0)])],
            &BuildOptions::default(),
        )
        .unwrap();
        let ab = abelianization(&g).unwrap();
        assert_eq!(factors_i64(&ab), vec![0, 0]);
    }

    #[test]
    fn klein_mod_four_quotient() {
        let g = klein();
        let q = quotient(&g, &QuotientSpec::ModK(4)).unwrap();
        assert_eq!(factors_i64(&q), vec![2, 4]);
        assert_eq!(q.order(), Some(BigInt::from(8)));
    }

    #[test]
    fn mod_one_is_rejected() {
        let g = klein();
        assert!(matches!(
            quotient(&g, &QuotientSpec::ModK(1)),
            Err(Error::InvalidModulus(1))
        ));
    }

    #[test]
    fn klein_induced_on_abelianization() {
        let g = klein();
        let qm = induced_on_quotient(&g, &klein_alpha(), &QuotientSpec::Abelianization).unwrap();
        let images = qm.quotient.generator_images().unwrap();
        let (a_bar, b_bar) = (&images[0], &images[2]);
        // alpha_*(a) = a
        assert_eq!(qm.apply(a_bar), qm.quotient.reduce_vec(a_bar.clone()));
        // alpha_*(b) = a + 3 b
        let mut want = vec![BigInt::zero(); 2];
        for i in 0..2 {
            want[i] = &a_bar[i] + BigInt::from(3) * &b_bar[i];
        }
        assert_eq!(qm.apply(b_bar), qm.quotient.reduce_vec(want));
    }

    #[test]
    fn identity_induces_identity_matrix() {
        let g = klein();
        let qm =
            induced_on_quotient(&g, &AffineMap::identity(2), &QuotientSpec::ModK(4)).unwrap();
        assert!(qm.quotient.matrix_eq_identity(&qm.matrix));
    }

    #[test]
    fn generator_basis_rewrite_round_trips() {
        let g = klein();
        let qm = induced_on_quotient(&g, &klein_alpha(), &QuotientSpec::ModK(4)).unwrap();
        // source generators t1 = a and g1 = b form a basis of Z2 + Z4
        let m = matrix_in_generator_basis(&qm, &[0, 2]).unwrap().expect("basis");
        // a -> a, b -> a b^3
        assert_eq!(m[0], vec![BigInt::one(), BigInt::one()]);
        assert_eq!(m[1], vec![BigInt::zero(), BigInt::from(3)]);
    }

    #[test]
    fn elements_enumeration_counts_order() {
        let g = klein();
        let q = quotient(&g, &QuotientSpec::ModK(2)).unwrap();
        let elems = q.elements().unwrap();
        assert_eq!(BigInt::from(elems.len()), q.order().unwrap());
    }

    fn dim4() -> CrystGroup {
        let mut gens: Vec<AffineMap> = (0..4)
            .map(|i| {
                AffineMap::translation_by(
                    (0..4).map(|j| if i == j { int(1) } else { int(0) }).collect(),
                )
            })
            .collect();
        gens.push(
            AffineMap::new(
                vec![int(0), int(0), rat(1, 2), rat(1, 2)],
                RatMatrix::from_i64_rows(&[
                    &[-1, 0, 0, 0],
                    &[0, -1, 0, 0],
                    &[0, 0, 1, 0],
                    &[0, 0, 0, 1],
                ]),
            )
            .unwrap(),
        );
        build_group(4, None, &gens, &BuildOptions::default()).unwrap()
    }

    fn dim4_alpha() -> AffineMap {
        AffineMap::new(
            vec![rat(1, 2), rat(1, 2), int(0), int(0)],
            RatMatrix::from_i64_rows(&[
                &[13, 8, 0, 0],
                &[8, 5, 0, 0],
                &[0, 0, 13, 8],
                &[0, 0, 8, 5],
            ]),
        )
        .unwrap()
    }

    #[test]
    fn dim4_abelianization_and_center_quotient() {
        let g = dim4();
        let ab = abelianization(&g).unwrap();
        assert_eq!(factors_i64(&ab), vec![2, 2, 0, 0]);

        let q = quotient(&g, &QuotientSpec::Center).unwrap();
        assert_eq!(factors_i64(&q), vec![2, 2, 2]);
        assert_eq!(q.order(), Some(BigInt::from(8)));
    }

    #[test]
    fn dim4_induced_matrix_on_the_center_quotient() {
        let g = dim4();
        let qm = induced_on_quotient(&g, &dim4_alpha(), &QuotientSpec::Center).unwrap();
        // in the basis of the images of a, b, f the matrix is the upper
        // unitriangular one with last column (1, 1, 1)
        let m = matrix_in_generator_basis(&qm, &[0, 1, 4]).unwrap().expect("basis");
        let want: Vec<Vec<BigInt>> = vec![
            vec![1.into(), 0.into(), 1.into()],
            vec![0.into(), 1.into(), 1.into()],
            vec![0.into(), 0.into(), 1.into()],
        ];
        assert_eq!(m, want);
    }

    #[test]
    fn hantzsche_wendt_homology() {
        let a = AffineMap::new(
            vec![rat(1, 2), int(0), int(0)],
            RatMatrix::from_i64_rows(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
        )
        .unwrap();
        let b = AffineMap::new(
            vec![int(0), rat(1, 2), rat(1, 2)],
            RatMatrix::from_i64_rows(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, -1]]),
        )
        .unwrap();
        let g = build_group(3, None, &[a, b], &BuildOptions::default()).unwrap();
        let ab = abelianization(&g).unwrap();
        assert_eq!(factors_i64(&ab), vec![4, 4]);
    }

    #[test]
    fn center_quotient_functorial_for_the_dim4_automorphism() {
        let g = dim4();
        let alpha = dim4_alpha();
        let qm = induced_on_quotient(&g, &alpha, &QuotientSpec::Center).unwrap();
        // composing with itself matches the square of the matrix
        let squared = alpha.compose(&alpha).unwrap();
        let qm2 = induced_on_quotient(&g, &squared, &QuotientSpec::Center).unwrap();
        assert_eq!(qm2.matrix, qm.quotient.matrix_mul(&qm.matrix, &qm.matrix));
    }
}
