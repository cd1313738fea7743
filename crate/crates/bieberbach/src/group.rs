//! Crystallographic groups: a full-rank translation lattice L together with a
//! finite holonomy group F and one coset-representative translation per
//! holonomy element. Elements decompose uniquely as (a_mu + z, mu) with z in L.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::affine::AffineMap;
use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::rat::{fract, is_integer, Rat};
use crate::snf::{integer_kernel, integer_solve, IntSolveOutcome};

/// One holonomy element: finite-order linear part plus the translation of a
/// chosen coset representative, reduced into the half-open unit box in
/// lattice coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolonomyElement {
    linear: RatMatrix,
    /// a_mu in lattice coordinates, every entry in [0, 1)
    rep_coords: Vec<Rat>,
    /// L^-1 * linear * L, integral because the linear part preserves L
    lattice_linear: IntMatrix,
}

impl HolonomyElement {
    pub fn linear(&self) -> &RatMatrix {
        &self.linear
    }

    pub fn lattice_linear(&self) -> &IntMatrix {
        &self.lattice_linear
    }
}

/// Element of the group, in its unique normal form relative to the holonomy
/// table: denotes (a_mu + L z, mu).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub lattice_part: Vec<BigInt>,
    pub holonomy_index: usize,
}

impl GroupElement {
    pub fn identity(dim: usize) -> Self {
        Self {
            lattice_part: vec![BigInt::zero(); dim],
            holonomy_index: 0,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    /// The holonomy closure aborts once it exceeds this many elements,
    /// turning non-crystallographic input into a clean error.
    pub holonomy_cap: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self { holonomy_cap: 1024 }
    }
}

/// A crystallographic group in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrystGroup {
    dim: usize,
    lattice: RatMatrix,
    lattice_inv: RatMatrix,
    /// identity first, remaining elements sorted by (rep translation, linear)
    holonomy: Vec<HolonomyElement>,
    /// table[i][j] = index of holonomy[i].linear * holonomy[j].linear
    table: Vec<Vec<usize>>,
    inverse_idx: Vec<usize>,
}

struct ClosureItem {
    linear: RatMatrix,
    rep_coords: Vec<Rat>, // lattice coordinates, reduced into [0,1)^n
}

impl CrystGroup {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lattice(&self) -> &RatMatrix {
        &self.lattice
    }

    pub fn lattice_inv(&self) -> &RatMatrix {
        &self.lattice_inv
    }

    pub fn holonomy_order(&self) -> usize {
        self.holonomy.len()
    }

    pub fn holonomy(&self) -> &[HolonomyElement] {
        &self.holonomy
    }

    pub fn multiply_holonomy(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn holonomy_inverse(&self, i: usize) -> usize {
        self.inverse_idx[i]
    }

    pub fn holonomy_table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Order of the i-th holonomy element in F.
    pub fn holonomy_element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut cur = i;
        while cur != 0 {
            cur = self.table[cur][i];
            k += 1;
        }
        k
    }

    /// Coset representative translation of mu, in ambient coordinates.
    pub fn rep_translation(&self, i: usize) -> Vec<Rat> {
        self.lattice
            .mul_vec(&self.holonomy[i].rep_coords)
            .expect("dimensions agree by construction")
    }

    /// The representative (a_mu, mu) itself as an affine map.
    pub fn rep_map(&self, i: usize) -> AffineMap {
        AffineMap {
            translation: self.rep_translation(i),
            linear: self.holonomy[i].linear.clone(),
        }
    }

    /// Canonical generating set: the lattice basis translations, then the
    /// coset representative of every non-identity holonomy element.
    pub fn generating_maps(&self) -> Vec<AffineMap> {
        let mut gens: Vec<AffineMap> =
            (0..self.dim).map(|i| AffineMap::translation_by(self.lattice.col(i))).collect();
        for i in 1..self.holonomy.len() {
            gens.push(self.rep_map(i));
        }
        gens
    }

    /// Short names aligned with `generating_maps`: t1..tn for the lattice
    /// basis, then g1.. for holonomy representatives.
    pub fn generator_names(&self) -> Vec<String> {
        let mut names: Vec<String> = (1..=self.dim).map(|i| format!("t{i}")).collect();
        for i in 1..self.holonomy.len() {
            names.push(format!("g{i}"));
        }
        names
    }

    pub fn generator_count(&self) -> usize {
        self.dim + self.holonomy.len() - 1
    }

    /// Rebuild the affine map denoted by a group element.
    pub fn element_to_map(&self, e: &GroupElement) -> Result<AffineMap> {
        if e.holonomy_index >= self.holonomy.len() || e.lattice_part.len() != self.dim {
            return Err(Error::DimensionMismatch("group element does not fit this group".into()));
        }
        let h = &self.holonomy[e.holonomy_index];
        let coords: Vec<Rat> = h
            .rep_coords
            .iter()
            .zip(&e.lattice_part)
            .map(|(c, z)| c + Rat::from_integer(z.clone()))
            .collect();
        Ok(AffineMap {
            translation: self.lattice.mul_vec(&coords)?,
            linear: h.linear.clone(),
        })
    }

    /// Decide membership: the linear part must equal a holonomy element
    /// exactly and the translation must differ from its representative by a
    /// lattice vector.
    pub fn member(&self, f: &AffineMap) -> Result<Option<GroupElement>> {
        if f.dim() != self.dim {
            return Err(Error::DimensionMismatch("membership test in wrong dimension".into()));
        }
        let Some(idx) = self.holonomy.iter().position(|h| h.linear == f.linear) else {
            return Ok(None);
        };
        let coords = self.lattice_inv.mul_vec(&f.translation)?;
        let mut z = Vec::with_capacity(self.dim);
        for (c, rep) in coords.iter().zip(&self.holonomy[idx].rep_coords) {
            let diff = c - rep;
            if !is_integer(&diff) {
                return Ok(None);
            }
            z.push(diff.to_integer());
        }
        Ok(Some(GroupElement {
            lattice_part: z,
            holonomy_index: idx,
        }))
    }

    /// Same orbit test: is x = gamma . y for some gamma in the group? The
    /// witness, when present, is the first such gamma in holonomy order.
    pub fn orbit_equal(&self, x: &[Rat], y: &[Rat]) -> Result<Option<GroupElement>> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::DimensionMismatch("orbit test in wrong dimension".into()));
        }
        for (idx, h) in self.holonomy.iter().enumerate() {
            let muy = h.linear.mul_vec(y)?;
            let diff: Vec<Rat> = x.iter().zip(&muy).map(|(a, b)| a - b).collect();
            let coords = self.lattice_inv.mul_vec(&diff)?;
            let mut z = Vec::with_capacity(self.dim);
            let mut ok = true;
            for (c, rep) in coords.iter().zip(&h.rep_coords) {
                let d = c - rep;
                if !is_integer(&d) {
                    ok = false;
                    break;
                }
                z.push(d.to_integer());
            }
            if ok {
                return Ok(Some(GroupElement {
                    lattice_part: z,
                    holonomy_index: idx,
                }));
            }
        }
        Ok(None)
    }

    /// Holonomy projection of an element.
    pub fn holonomy_project(&self, e: &GroupElement) -> usize {
        e.holonomy_index
    }

    /// Search for a torsion element. For mu of order k and
    /// S = I + mu + ... + mu^{k-1}, the element (a_mu + z, mu) has finite
    /// order exactly when S (a_mu + z) = 0, an integer linear system in z.
    pub fn torsion_witness(&self) -> Result<Option<GroupElement>> {
        for idx in 1..self.holonomy.len() {
            let k = self.holonomy_element_order(idx);
            let m = &self.holonomy[idx].lattice_linear;
            let mut s = IntMatrix::identity(self.dim);
            let mut power = IntMatrix::identity(self.dim);
            for _ in 1..k {
                power = m.mul(&power)?;
                for r in 0..self.dim {
                    for c in 0..self.dim {
                        let t = power[(r, c)].clone();
                        s[(r, c)] += t;
                    }
                }
            }
            // S z = -S a_mu in lattice coordinates; the left side is always
            // integral, so a non-integral right side rules this mu out
            let rhs_rat = s.to_rat_matrix().mul_vec(&self.holonomy[idx].rep_coords)?;
            if rhs_rat.iter().any(|x| !is_integer(x)) {
                continue;
            }
            let rhs: Vec<BigInt> = rhs_rat.iter().map(|x| -x.to_integer()).collect();
            if let IntSolveOutcome::Solvable { particular, .. } = integer_solve(&s, &rhs)? {
                return Ok(Some(GroupElement {
                    lattice_part: particular,
                    holonomy_index: idx,
                }));
            }
        }
        Ok(None)
    }

    /// Basis of the sublattice of translations fixed by every holonomy
    /// element, in lattice coordinates.
    pub fn center_lattice(&self) -> Result<Vec<Vec<BigInt>>> {
        if self.holonomy.len() == 1 {
            return Ok((0..self.dim)
                .map(|i| {
                    (0..self.dim)
                        .map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() })
                        .collect()
                })
                .collect());
        }
        let mut stacked: Option<IntMatrix> = None;
        for idx in 1..self.holonomy.len() {
            let m = &self.holonomy[idx].lattice_linear;
            let mut block = m.clone();
            for i in 0..self.dim {
                block[(i, i)] -= BigInt::from(1);
            }
            stacked = Some(match stacked {
                None => block,
                Some(s) => s.vstack(&block)?,
            });
        }
        Ok(integer_kernel(&stacked.expect("non-identity holonomy exists")))
    }

    /// All distinct group elements expressible as words of length <= depth in
    /// the canonical generators and their inverses, in breadth-first order.
    pub fn elements_up_to_depth(&self, depth: usize) -> Result<Vec<GroupElement>> {
        let mut gens = Vec::new();
        for g in self.generating_maps() {
            let inv = g.inverse()?;
            gens.push(g);
            gens.push(inv);
        }
        let mut seen: HashMap<GroupElement, ()> = HashMap::new();
        let identity = GroupElement::identity(self.dim);
        let mut order = vec![identity.clone()];
        seen.insert(identity, ());
        let mut frontier = vec![AffineMap::identity(self.dim)];
        for _ in 0..depth {
            let mut next = Vec::new();
            for w in &frontier {
                for g in &gens {
                    let f = w.compose(g)?;
                    let e = self
                        .member(&f)?
                        .ok_or_else(|| Error::Internal("generator word left the group".into()))?;
                    if seen.insert(e.clone(), ()).is_none() {
                        order.push(e);
                        next.push(f);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        Ok(order)
    }

    /// Check every structural invariant; used by validation and tests.
    pub fn verify_invariants(&self) -> Result<()> {
        if !self.lattice.is_invertible() {
            return Err(Error::Singular("lattice basis is singular".into()));
        }
        if self.holonomy[0].linear != RatMatrix::identity(self.dim) {
            return Err(Error::Internal("identity is not first in the holonomy table".into()));
        }
        if self.holonomy[0].rep_coords.iter().any(|c| !c.is_zero()) {
            return Err(Error::Internal("identity representative is not zero".into()));
        }
        for (i, h) in self.holonomy.iter().enumerate() {
            // lattice preservation with unimodular lattice action
            let m = self
                .lattice_inv
                .mul(&h.linear)?
                .mul(&self.lattice)?;
            if !m.is_integral() {
                return Err(Error::LatticeNotPreserved(format!("holonomy element {i}")));
            }
            if !m.to_int_matrix().expect("just checked").is_unimodular() {
                return Err(Error::LatticeNotPreserved(format!(
                    "holonomy element {i} does not act unimodularly"
                )));
            }
            for c in &h.rep_coords {
                if c.is_negative() || c >= &Rat::from_integer(BigInt::from(1)) {
                    return Err(Error::Internal("representative not reduced to the unit box".into()));
                }
            }
        }
        // closure, inverses and the cocycle condition
        for i in 0..self.holonomy.len() {
            if self.table[self.inverse_idx[i]][i] != 0 {
                return Err(Error::Internal("holonomy inverse table is wrong".into()));
            }
            for j in 0..self.holonomy.len() {
                let k = self.table[i][j];
                let prod = self.holonomy[i].linear.mul(&self.holonomy[j].linear)?;
                if prod != self.holonomy[k].linear {
                    return Err(Error::Internal("holonomy table does not match products".into()));
                }
                // a_i + mu_i a_j - a_k must lie in L
                let muj = self
                    .holonomy[i]
                    .lattice_linear
                    .to_rat_matrix()
                    .mul_vec(&self.holonomy[j].rep_coords)?;
                for ((ai, mj), ak) in self.holonomy[i]
                    .rep_coords
                    .iter()
                    .zip(&muj)
                    .zip(&self.holonomy[k].rep_coords)
                {
                    if !is_integer(&(ai + mj - ak)) {
                        return Err(Error::Internal(format!(
                            "cocycle condition fails for pair ({i}, {j})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Build the canonical crystallographic group generated by the lattice and
/// the given affine maps.
pub fn build_group(
    dim: usize,
    lattice: Option<RatMatrix>,
    generators: &[AffineMap],
    opts: &BuildOptions,
) -> Result<CrystGroup> {
    let lattice = lattice.unwrap_or_else(|| RatMatrix::identity(dim));
    if !lattice.is_square() || lattice.rows() != dim {
        return Err(Error::DimensionMismatch("lattice basis must be n x n".into()));
    }
    let lattice_inv = lattice
        .inverse()
        .map_err(|_| Error::Singular("lattice basis is singular".into()))?;
    for g in generators {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch("generator dimension mismatch".into()));
        }
        if !g.linear.is_invertible() {
            return Err(Error::SingularGenerator);
        }
    }

    // close the holonomy, deriving one reduced representative per element and
    // checking that different words agree modulo the lattice
    let mut items: Vec<ClosureItem> = vec![ClosureItem {
        linear: RatMatrix::identity(dim),
        rep_coords: vec![Rat::zero(); dim],
    }];
    let mut index: HashMap<RatMatrix, usize> = HashMap::new();
    index.insert(items[0].linear.clone(), 0);

    let mut cursor = 0;
    while cursor < items.len() {
        for g in generators {
            let linear = items[cursor].linear.mul(&g.linear)?;
            // translation of (rep word) o g, in lattice coordinates
            let rep_real = lattice.mul_vec(&items[cursor].rep_coords)?;
            let shifted = items[cursor].linear.mul_vec(&g.translation)?;
            let total: Vec<Rat> = rep_real.iter().zip(&shifted).map(|(a, b)| a + b).collect();
            let coords = lattice_inv.mul_vec(&total)?;
            let reduced: Vec<Rat> = coords.iter().map(fract).collect();
            match index.get(&linear) {
                Some(&i) => {
                    if items[i].rep_coords != reduced {
                        let diff: Vec<String> = coords
                            .iter()
                            .zip(&items[i].rep_coords)
                            .map(|(c, r)| crate::rat::format_rat(&(c - r)))
                            .collect();
                        return Err(Error::InconsistentReps(format!("({})", diff.join(", "))));
                    }
                }
                None => {
                    let m = lattice_inv.mul(&linear)?.mul(&lattice)?;
                    if !m.is_integral() {
                        return Err(Error::LatticeNotPreserved(format!("{linear:?}")));
                    }
                    if items.len() + 1 > opts.holonomy_cap {
                        return Err(Error::HolonomyClosureExceeded {
                            cap: opts.holonomy_cap,
                        });
                    }
                    index.insert(linear.clone(), items.len());
                    items.push(ClosureItem {
                        linear,
                        rep_coords: reduced,
                    });
                }
            }
        }
        cursor += 1;
    }

    // canonical order: identity first, the rest sorted by the entries of the
    // serialized representative (translation, then linear part)
    let mut rest: Vec<ClosureItem> = items.drain(1..).collect();
    rest.sort_by(|a, b| {
        let ta = lattice.mul_vec(&a.rep_coords).expect("dim");
        let tb = lattice.mul_vec(&b.rep_coords).expect("dim");
        ta.cmp(&tb).then_with(|| a.linear.cmp_entries(&b.linear))
    });
    let identity_item = items.pop().expect("identity present");
    let ordered: Vec<ClosureItem> = std::iter::once(identity_item).chain(rest).collect();

    let mut holonomy = Vec::with_capacity(ordered.len());
    for item in &ordered {
        let lattice_linear = lattice_inv
            .mul(&item.linear)?
            .mul(&lattice)?
            .to_int_matrix()
            .ok_or_else(|| Error::LatticeNotPreserved(format!("{:?}", item.linear)))?;
        holonomy.push(HolonomyElement {
            linear: item.linear.clone(),
            rep_coords: item.rep_coords.clone(),
            lattice_linear,
        });
    }

    let lookup: HashMap<RatMatrix, usize> = holonomy
        .iter()
        .enumerate()
        .map(|(i, h)| (h.linear.clone(), i))
        .collect();
    let n = holonomy.len();
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            let prod = holonomy[i].linear.mul(&holonomy[j].linear)?;
            let k = *lookup
                .get(&prod)
                .ok_or_else(|| Error::Internal("holonomy closure is not closed".into()))?;
            table[i][j] = k;
        }
    }
    let mut inverse_idx = vec![0usize; n];
    for i in 0..n {
        let j = (0..n)
            .find(|&j| table[i][j] == 0)
            .ok_or_else(|| Error::Internal("holonomy element without inverse".into()))?;
        inverse_idx[i] = j;
    }

    let group = CrystGroup {
        dim,
        lattice,
        lattice_inv,
        holonomy,
        table,
        inverse_idx,
    };
    group.verify_invariants()?;
    Ok(group)
}
