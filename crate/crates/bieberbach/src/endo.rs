//! Judgments about affine self-maps of a flat manifold: which affine maps
//! descend to the quotient, spectral classification, fixed points,
//! realization of abstract endomorphisms as conjugations, and the
//! linearization move that replaces an affine endomorphism by a conjugated
//! pure-linear one.

use num_traits::Zero;

use crate::affine::AffineMap;
use crate::error::{Error, Result};
use crate::group::{CrystGroup, GroupElement};
use crate::matrix::RatMatrix;
use crate::poly::RatPoly;
use crate::rat::{int, Rat};
use crate::roots::{schur_cohn_all_inside, unit_circle_root_count};
use crate::solve::{solve_exact, SolveOutcome};

/// Result of testing whether conjugation by an affine map sends the group
/// into itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoStatus {
    /// alpha Gamma alpha^-1 is contained in Gamma, so the map descends.
    pub induces: bool,
    /// Containment holds in both directions, so conjugation is bijective.
    pub is_automorphism: bool,
    /// The lift is a pure automorphism: zero translation part and a linear
    /// part that normalizes the holonomy group setwise.
    pub is_hirsch: bool,
    /// Images of the canonical generators, present exactly when `induces`.
    pub conjugated_generators: Vec<GroupElement>,
}

pub fn conjugation_endo(group: &CrystGroup, alpha: &AffineMap) -> Result<EndoStatus> {
    if alpha.dim() != group.dim() {
        return Err(Error::DimensionMismatch("map dimension differs from group dimension".into()));
    }
    let gens = group.generating_maps();
    let mut images = Vec::with_capacity(gens.len());
    let mut induces = true;
    for g in &gens {
        match group.member(&alpha.conjugate(g)?)? {
            Some(e) => images.push(e),
            None => {
                induces = false;
                break;
            }
        }
    }
    if !induces {
        images.clear();
    }

    let mut is_automorphism = induces;
    if induces {
        let inv = alpha.inverse()?;
        for g in &gens {
            if group.member(&inv.conjugate(g)?)?.is_none() {
                is_automorphism = false;
                break;
            }
        }
    }

    let is_hirsch =
        induces && alpha.has_zero_translation() && normalizes_holonomy(group, &alpha.linear)?;

    Ok(EndoStatus {
        induces,
        is_automorphism,
        is_hirsch,
        conjugated_generators: images,
    })
}

/// Does phi F phi^-1 = F hold setwise?
fn normalizes_holonomy(group: &CrystGroup, phi: &RatMatrix) -> Result<bool> {
    let inv = phi.inverse()?;
    let mut hit = vec![false; group.holonomy_order()];
    for h in group.holonomy() {
        let conj = phi.mul(h.linear())?.mul(&inv)?;
        match group.holonomy().iter().position(|k| k.linear() == &conj) {
            Some(i) => hit[i] = true,
            None => return Ok(false),
        }
    }
    Ok(hit.iter().all(|&b| b))
}

/// Outcome of the infra-nilmanifold-endomorphism test for a pure linear map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HirschCheck {
    pub passes: bool,
    /// conjugation by phi keeps every generator inside the group
    pub conjugates_into_group: bool,
    /// phi F phi^-1 = F
    pub normalizes_holonomy: bool,
    /// first generator (by canonical index) whose conjugate leaves the group
    pub failing_generator: Option<usize>,
}

pub fn hirsch_check(group: &CrystGroup, phi: &RatMatrix) -> Result<HirschCheck> {
    if !phi.is_square() || phi.rows() != group.dim() {
        return Err(Error::DimensionMismatch("linear map dimension differs from group".into()));
    }
    if !phi.is_invertible() {
        return Err(Error::Singular("Hirsch check needs an invertible linear map".into()));
    }
    let map = AffineMap::pure_linear(phi.clone())?;
    let mut conjugates = true;
    let mut failing = None;
    for (i, g) in group.generating_maps().iter().enumerate() {
        if group.member(&map.conjugate(g)?)?.is_none() {
            conjugates = false;
            failing = Some(i);
            break;
        }
    }
    let normalizes = normalizes_holonomy(group, phi)?;
    Ok(HirschCheck {
        passes: conjugates && normalizes,
        conjugates_into_group: conjugates,
        normalizes_holonomy: normalizes,
        failing_generator: failing,
    })
}

/// A verified failure of well-definedness: the candidate point map sends two
/// points of one orbit to different orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub point: Vec<Rat>,
    pub gamma: GroupElement,
    pub moved_point: Vec<Rat>,
    pub image_of_point: Vec<Rat>,
    pub image_of_moved: Vec<Rat>,
}

/// Search the sample points against all group elements of word length at
/// most `depth`; return the first pair whose images land in different
/// orbits. Every returned witness is re-verified through `orbit_equal`.
pub fn well_defined_witness(
    group: &CrystGroup,
    phi: &AffineMap,
    samples: &[Vec<Rat>],
    depth: usize,
) -> Result<Option<Witness>> {
    if phi.dim() != group.dim() {
        return Err(Error::DimensionMismatch("map dimension differs from group dimension".into()));
    }
    let elements = group.elements_up_to_depth(depth)?;
    let maps: Vec<AffineMap> = elements
        .iter()
        .map(|e| group.element_to_map(e))
        .collect::<Result<_>>()?;
    for point in samples {
        let image_of_point = phi.apply(point)?;
        for (e, m) in elements.iter().zip(&maps) {
            let moved = m.apply(point)?;
            let image_of_moved = phi.apply(&moved)?;
            if group.orbit_equal(&image_of_moved, &image_of_point)?.is_none() {
                return Ok(Some(Witness {
                    point: point.clone(),
                    gamma: e.clone(),
                    moved_point: moved,
                    image_of_point,
                    image_of_moved,
                }));
            }
        }
    }
    Ok(None)
}

/// Exact spectral classification of an affine map through the characteristic
/// polynomial of its linear part. Translations never matter: conjugation by
/// an affine map and its linear part share eigenvalues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralClass {
    pub has_eigenvalue_one: bool,
    pub unit_circle_count: usize,
    pub expanding: bool,
    pub hyperbolic: bool,
    pub char_poly: RatPoly,
}

pub fn classify_spectrum(alpha: &AffineMap) -> Result<SpectralClass> {
    let p = alpha.linear.char_poly()?;
    let has_eigenvalue_one = p.eval(&int(1)).is_zero();
    let unit_circle_count = unit_circle_root_count(&p)?;
    // all eigenvalues strictly outside the unit circle iff all roots of the
    // reciprocal polynomial sit strictly inside
    let expanding = schur_cohn_all_inside(&p.reciprocal())?;
    let hyperbolic = unit_circle_count == 0;
    debug_assert!(!expanding || hyperbolic);
    debug_assert!(!has_eigenvalue_one || !hyperbolic);
    Ok(SpectralClass {
        has_eigenvalue_one,
        unit_circle_count,
        expanding,
        hyperbolic,
        char_poly: p,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixedPointOutcome {
    /// 1 is not an eigenvalue, so (I - D) x = d has exactly one solution.
    Unique(Vec<Rat>),
    /// 1 is an eigenvalue; the fixed set is an affine subspace or empty.
    EigenvalueOne {
        solution: Option<(Vec<Rat>, Vec<Vec<Rat>>)>,
    },
}

pub fn fixed_point(alpha: &AffineMap) -> Result<FixedPointOutcome> {
    let n = alpha.dim();
    let system = RatMatrix::identity(n).sub(&alpha.linear)?;
    let outcome = solve_exact(&system, &alpha.translation)?;
    let unique = !alpha
        .linear
        .char_poly()?
        .eval(&int(1))
        .is_zero();
    match outcome {
        SolveOutcome::Solvable { particular, kernel } => {
            if unique {
                debug_assert!(kernel.is_empty());
                debug_assert_eq!(alpha.apply(&particular)?, particular);
                Ok(FixedPointOutcome::Unique(particular))
            } else {
                Ok(FixedPointOutcome::EigenvalueOne {
                    solution: Some((particular, kernel)),
                })
            }
        }
        SolveOutcome::Inconsistent => Ok(FixedPointOutcome::EigenvalueOne { solution: None }),
    }
}

/// Conjugate the whole picture by the translation moving the unique fixed
/// point to the origin: returns the conjugated group and the now pure-linear
/// map, verified to conjugate the new group into itself.
pub fn linearize_at_fixed_point(
    group: &CrystGroup,
    alpha: &AffineMap,
) -> Result<(CrystGroup, RatMatrix)> {
    let status = conjugation_endo(group, alpha)?;
    if !status.induces {
        return Err(Error::NotAnEndomorphism(
            "the map does not conjugate the group into itself".into(),
        ));
    }
    let FixedPointOutcome::Unique(x0) = fixed_point(alpha)? else {
        return Err(Error::NoUniqueFixedPoint);
    };
    let shift = AffineMap::translation_by(x0.iter().map(|c| -c).collect());
    let moved: Vec<AffineMap> = group
        .generating_maps()
        .iter()
        .map(|g| shift.conjugate(g))
        .collect::<Result<_>>()?;
    let conjugated = crate::group::build_group(
        group.dim(),
        Some(group.lattice().clone()),
        &moved,
        &crate::group::BuildOptions::default(),
    )?;
    let delta = alpha.linear.clone();
    let delta_map = AffineMap::pure_linear(delta.clone())?;
    for g in conjugated.generating_maps() {
        if conjugated.member(&delta_map.conjugate(&g)?)?.is_none() {
            return Err(Error::Internal(
                "linear part fails to conjugate the shifted group into itself".into(),
            ));
        }
    }
    Ok((conjugated, delta))
}

/// Does the holonomy of the conjugated generators still generate all of F?
/// For genuine endomorphisms this is a theorem, so a `false` signals a bug.
pub fn holonomy_image_check(group: &CrystGroup, alpha: &AffineMap) -> Result<bool> {
    let status = conjugation_endo(group, alpha)?;
    if !status.induces {
        return Err(Error::NotAnEndomorphism(
            "holonomy image check needs a map that induces an endomorphism".into(),
        ));
    }
    let mut reached = vec![false; group.holonomy_order()];
    reached[0] = true;
    let mut frontier: Vec<usize> = vec![0];
    let seeds: Vec<usize> = status
        .conjugated_generators
        .iter()
        .map(|e| e.holonomy_index)
        .collect();
    while let Some(i) = frontier.pop() {
        for &s in &seeds {
            let j = group.multiply_holonomy(i, s);
            if !reached[j] {
                reached[j] = true;
                frontier.push(j);
            }
        }
    }
    Ok(reached.iter().all(|&b| b))
}

/// Realize a homomorphism given by generator images as conjugation by an
/// affine map: find alpha with alpha g alpha^-1 = psi(g) for every canonical
/// generator g, or explain why none exists.
pub fn realize_endo(group: &CrystGroup, images: &[GroupElement]) -> Result<AffineMap> {
    let n = group.dim();
    let gen_count = group.generator_count();
    if images.len() != gen_count {
        return Err(Error::DimensionMismatch(format!(
            "need images for all {gen_count} canonical generators, got {}",
            images.len()
        )));
    }

    // the linear part is forced by the images of the lattice basis, which
    // must be pure translations
    for (i, e) in images.iter().take(n).enumerate() {
        if e.holonomy_index != 0 {
            return Err(Error::NotRealizable(format!(
                "image of lattice generator t{} is not a pure translation",
                i + 1
            )));
        }
    }
    let z_cols = RatMatrix::from_fn(n, n, |r, c| {
        Rat::from_integer(images[c].lattice_part[r].clone())
    });
    // delta * L = L * Z
    let delta = group
        .lattice()
        .mul(&z_cols)?
        .mul(group.lattice_inv())?;
    if !delta.is_invertible() {
        return Err(Error::NotRealizable(
            "lattice images are linearly dependent; the map is not injective".into(),
        ));
    }

    verify_on_relations(group, images)?;

    // holonomy compatibility: delta mu delta^-1 must be the holonomy of the
    // image of each representative
    let delta_inv = delta.inverse()?;
    for (k, e) in images.iter().enumerate().skip(n) {
        let mu = group.holonomy()[k - n + 1].linear();
        let conj = delta.mul(mu)?.mul(&delta_inv)?;
        let target = group.holonomy()[e.holonomy_index].linear();
        if &conj != target {
            return Err(Error::NotRealizable(format!(
                "holonomy mismatch at generator g{}",
                k - n + 1
            )));
        }
    }

    // translation part: stack (I - mu') d = trans(psi(g)) - delta trans(g)
    // over all generators
    let gens = group.generating_maps();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (g, e) in gens.iter().zip(images) {
        let image_map = group.element_to_map(e)?;
        let mu_prime = &image_map.linear;
        let block = RatMatrix::identity(n).sub(mu_prime)?;
        let delta_t = delta.mul_vec(&g.translation)?;
        #[allow(clippy::needless_range_loop)]
        for r in 0..n {
            rows.push(block.row(r).to_vec());
            rhs.push(&image_map.translation[r] - &delta_t[r]);
        }
    }
    let system = RatMatrix::from_fn(rows.len(), n, |r, c| rows[r][c].clone());
    let outcome = solve_exact(&system, &rhs)?;
    let SolveOutcome::Solvable { particular, .. } = outcome else {
        return Err(Error::NotRealizable(
            "translation system is inconsistent; the input is not a homomorphism realizable by conjugation".into(),
        ));
    };
    let alpha = AffineMap::new(particular, delta)?;

    // exact round trip before returning
    for (g, e) in gens.iter().zip(images) {
        let image = group.member(&alpha.conjugate(g)?)?;
        if image.as_ref() != Some(e) {
            return Err(Error::Internal(
                "realized map does not reproduce the requested generator images".into(),
            ));
        }
    }
    Ok(alpha)
}

/// Check that the images satisfy the defining relations of the group:
/// commuting lattice translations, the holonomy action on the lattice, and
/// the cocycle products of coset representatives.
fn verify_on_relations(group: &CrystGroup, images: &[GroupElement]) -> Result<()> {
    let n = group.dim();
    let f = group.holonomy_order();
    let image_maps: Vec<AffineMap> = images
        .iter()
        .map(|e| group.element_to_map(e))
        .collect::<Result<_>>()?;

    // psi extended to arbitrary lattice vectors: translations map linearly
    let psi_translation = |z: &[num_bigint::BigInt]| -> Result<AffineMap> {
        let mut t = vec![Rat::zero(); n];
        for (i, zi) in z.iter().enumerate() {
            let zi = Rat::from_integer(zi.clone());
            for (tr, base) in t.iter_mut().zip(&image_maps[i].translation) {
                *tr += &zi * base;
            }
        }
        Ok(AffineMap::translation_by(t))
    };

    // g_mu t_i g_mu^-1 = t^{M_mu e_i}
    #[allow(clippy::needless_range_loop)]
    for mu in 1..f {
        let m = group.holonomy()[mu].lattice_linear();
        let g_img = &image_maps[n + mu - 1];
        for i in 0..n {
            let lhs = g_img.conjugate(&image_maps[i])?;
            let rhs = psi_translation(&m.col(i))?;
            if lhs != rhs {
                return Err(Error::NotRealizable(format!(
                    "images break the lattice conjugation relation for (g{mu}, t{})",
                    i + 1
                )));
            }
        }
    }

    // g_i g_j = t^{c(i,j)} g_{ij}
    for i in 1..f {
        for j in 1..f {
            let k = group.multiply_holonomy(i, j);
            let gi = group.rep_map(i);
            let gj = group.rep_map(j);
            let prod = gi.compose(&gj)?;
            // c(i,j) in lattice coordinates
            let c = {
                let rep_k = group.rep_translation(k);
                let diff: Vec<Rat> = prod
                    .translation
                    .iter()
                    .zip(&rep_k)
                    .map(|(a, b)| a - b)
                    .collect();
                let coords = group.lattice_inv().mul_vec(&diff)?;
                coords
                    .iter()
                    .map(|x| {
                        debug_assert!(crate::rat::is_integer(x));
                        x.to_integer()
                    })
                    .collect::<Vec<_>>()
            };
            let lhs = image_maps[n + i - 1].compose(&image_maps[n + j - 1])?;
            let mut rhs = psi_translation(&c)?;
            if k != 0 {
                rhs = rhs.compose(&image_maps[n + k - 1])?;
            }
            if lhs != rhs {
                return Err(Error::NotRealizable(format!(
                    "images break the representative product relation for (g{i}, g{j})"
                )));
            }
        }
    }
    Ok(())
}
