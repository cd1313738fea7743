//! Bounded searches: linear maps passing the infra-nilmanifold-endomorphism
//! test, and conjugacy obstructions on finite quotients.
//!
//! A "none found" result certifies only the stated bounds; every report
//! records them.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::affine::AffineMap;
use crate::endo::conjugation_endo;
use crate::error::{Error, Result};
use crate::group::{CrystGroup, GroupElement};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::quotient::{induced_from_status, quotient, QuotientMap, QuotientSpec};
use crate::rat::{is_integer, Rat};
use crate::snf::integer_kernel;

/// All automorphisms of the holonomy group, found by backtracking over the
/// multiplication table. Each entry is the image list sigma with sigma[0] = 0.
pub fn holonomy_automorphisms(group: &CrystGroup) -> Vec<Vec<usize>> {
    let f = group.holonomy_order();
    let table = group.holonomy_table();
    let mut out = Vec::new();
    let mut sigma = vec![usize::MAX; f];
    let mut used = vec![false; f];
    sigma[0] = 0;
    used[0] = true;

    // positions 0..=upto are assigned; check every product whose result is
    // also assigned
    fn consistent(table: &[Vec<usize>], sigma: &[usize], upto: usize) -> bool {
        for i in 0..=upto {
            for j in 0..=upto {
                let k = table[i][j];
                if k <= upto && table[sigma[i]][sigma[j]] != sigma[k] {
                    return false;
                }
            }
        }
        true
    }

    fn backtrack(
        table: &[Vec<usize>],
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
        pos: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let f = sigma.len();
        if pos == f {
            out.push(sigma.clone());
            return;
        }
        for img in 1..f {
            if used[img] {
                continue;
            }
            sigma[pos] = img;
            used[img] = true;
            if consistent(table, sigma, pos) {
                backtrack(table, sigma, used, pos + 1, out);
            }
            sigma[pos] = usize::MAX;
            used[img] = false;
        }
    }

    if f == 1 {
        return vec![vec![0]];
    }
    backtrack(table, &mut sigma, &mut used, 1, &mut out);
    out
}

/// Integer determinant by cofactor expansion; fine for the small dimensions
/// used here.
fn int_det(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    match n {
        1 => m[(0, 0)].clone(),
        2 => &m[(0, 0)] * &m[(1, 1)] - &m[(0, 1)] * &m[(1, 0)],
        _ => {
            let mut det = BigInt::zero();
            for j in 0..n {
                if m[(0, j)].is_zero() {
                    continue;
                }
                let minor = IntMatrix::new(
                    n - 1,
                    n - 1,
                    (1..n)
                        .flat_map(|r| {
                            (0..n).filter(|&c| c != j).map(move |c| m[(r, c)].clone())
                        })
                        .collect(),
                )
                .expect("minor dimensions");
                let term = &m[(0, j)] * int_det(&minor);
                if j % 2 == 0 {
                    det += term;
                } else {
                    det -= term;
                }
            }
            det
        }
    }
}

/// A linear candidate in both coordinate systems, plus the holonomy
/// permutation it realizes and the generator images of the conjugation.
#[derive(Debug, Clone)]
pub struct LinearCandidate {
    pub ambient: RatMatrix,
    pub lattice: IntMatrix,
    pub sigma: Vec<usize>,
    pub images: Vec<GroupElement>,
}

fn rep_coords(group: &CrystGroup, mu: usize) -> Vec<Rat> {
    group
        .lattice_inv()
        .mul_vec(&group.rep_translation(mu))
        .expect("dimensions agree")
}

/// Generator images of the conjugation, directly in lattice coordinates:
/// t_i maps to the translation by column i of the candidate, and the
/// representative of mu lands on the representative of sigma(mu) shifted by
/// the lattice vector X c_mu - c_{sigma(mu)}; `None` when some shift is not
/// integral, i.e. the candidate fails the representative condition.
fn candidate_images(
    xr: &RatMatrix,
    x: &IntMatrix,
    sigma: &[usize],
    reps: &[Vec<Rat>],
) -> Result<Option<Vec<GroupElement>>> {
    let n = x.rows();
    let mut images = Vec::with_capacity(n + reps.len() - 1);
    for i in 0..n {
        images.push(GroupElement {
            lattice_part: x.col(i),
            holonomy_index: 0,
        });
    }
    for mu in 1..reps.len() {
        let moved = xr.mul_vec(&reps[mu])?;
        let target = &reps[sigma[mu]];
        let mut z = Vec::with_capacity(n);
        for (a, b) in moved.iter().zip(target) {
            let d = a - b;
            if !is_integer(&d) {
                return Ok(None);
            }
            z.push(d.to_integer());
        }
        images.push(GroupElement {
            lattice_part: z,
            holonomy_index: sigma[mu],
        });
    }
    Ok(Some(images))
}

/// Enumerate linear maps that pass the infra-nilmanifold-endomorphism test,
/// by integer coefficient vectors of max-norm <= bound over a kernel basis
/// of the holonomy-intertwining constraints. Deterministic: the result is
/// sorted by ambient matrix entries and deduplicated.
pub fn enumerate_candidates_full(
    group: &CrystGroup,
    bound: u32,
) -> Result<Vec<LinearCandidate>> {
    if bound == 0 {
        return Err(Error::InvalidInput("candidate bound must be at least 1".into()));
    }
    let n = group.dim();
    let f = group.holonomy_order();
    let mut found: Vec<LinearCandidate> = Vec::new();

    for sigma in holonomy_automorphisms(group) {
        // constraint system: X M_mu = M_{sigma(mu)} X for every mu
        let basis: Vec<Vec<BigInt>> = if f == 1 {
            (0..n * n)
                .map(|i| {
                    let mut v = vec![BigInt::zero(); n * n];
                    v[i] = BigInt::one();
                    v
                })
                .collect()
        } else {
            let mut a = IntMatrix::zero((f - 1) * n * n, n * n);
            #[allow(clippy::needless_range_loop)]
            for mu in 1..f {
                let m_mu = group.holonomy()[mu].lattice_linear();
                let m_tgt = group.holonomy()[sigma[mu]].lattice_linear();
                for r in 0..n {
                    for c in 0..n {
                        let row = (mu - 1) * n * n + r * n + c;
                        for k in 0..n {
                            let t = m_mu[(k, c)].clone();
                            a[(row, r * n + k)] += t;
                            let t = m_tgt[(r, k)].clone();
                            a[(row, k * n + c)] -= t;
                        }
                    }
                }
            }
            integer_kernel(&a)
        };
        let rank = basis.len();
        if rank == 0 {
            continue;
        }
        let width = 2u64 * bound as u64 + 1;
        let total = width.checked_pow(rank as u32);
        if total.is_none() || total.unwrap() > 100_000_000 {
            return Err(Error::SearchSpaceTooLarge(format!(
                "coefficient space {width}^{rank} is beyond enumeration"
            )));
        }

        let reps: Vec<Vec<Rat>> = (0..f).map(|mu| rep_coords(group, mu)).collect();
        let mut coeff = vec![-(bound as i64); rank];
        'odometer: loop {
            // X = sum of coeff_i * basis_i
            let mut entries = vec![BigInt::zero(); n * n];
            for (c, b) in coeff.iter().zip(&basis) {
                if *c == 0 {
                    continue;
                }
                let c = BigInt::from(*c);
                for (e, bv) in entries.iter_mut().zip(b) {
                    *e += &c * bv;
                }
            }
            let x = IntMatrix::new(n, n, entries)?;
            if !int_det(&x).is_zero() {
                let xr = x.to_rat_matrix();
                if let Some(images) = candidate_images(&xr, &x, &sigma, &reps)? {
                    let ambient = group.lattice().mul(&xr)?.mul(group.lattice_inv())?;
                    found.push(LinearCandidate {
                        ambient,
                        lattice: x,
                        sigma: sigma.clone(),
                        images,
                    });
                }
            }
            // advance
            #[allow(clippy::needless_range_loop)]
            for i in 0..rank {
                if coeff[i] < bound as i64 {
                    coeff[i] += 1;
                    continue 'odometer;
                }
                coeff[i] = -(bound as i64);
            }
            break;
        }
    }

    found.sort_by(|a, b| a.ambient.cmp_entries(&b.ambient));
    found.dedup_by(|a, b| a.ambient == b.ambient);
    Ok(found)
}

/// Public surface: just the ambient matrices.
pub fn enumerate_candidates(group: &CrystGroup, bound: u32) -> Result<Vec<RatMatrix>> {
    Ok(enumerate_candidates_full(group, bound)?
        .into_iter()
        .map(|c| c.ambient)
        .collect())
}

#[derive(Debug, Clone)]
pub struct ObstructionCaps {
    pub max_quotient_order: u64,
    pub max_endomorphism_matrices: u64,
}

impl Default for ObstructionCaps {
    fn default() -> Self {
        Self {
            max_quotient_order: 1 << 16,
            max_endomorphism_matrices: 1 << 24,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchBounds {
    pub candidate_bound: u32,
    pub quotient_spec: String,
    pub quotient_factors: Vec<BigInt>,
    pub quotient_order: BigInt,
    pub automorphisms_searched: usize,
    pub candidates_enumerated: usize,
}

#[derive(Debug, Clone)]
pub struct Intertwiner {
    pub candidate: RatMatrix,
    pub quotient_automorphism: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone)]
pub struct ObstructionReport {
    pub candidates_tested: usize,
    pub intertwiner_found: Option<Intertwiner>,
    pub search_bounds: SearchBounds,
}

/// Search for a pair (phi, h): phi a linear candidate within the coefficient
/// bound, h an automorphism of the chosen finite quotient preserving the
/// image of the lattice subgroup, with h o alpha_Q = phi_Q o h. Exhausts the
/// stated bounds; "none" certifies exactly that search.
pub fn obstruction_search(
    group: &CrystGroup,
    alpha: &AffineMap,
    spec: &QuotientSpec,
    bound: u32,
    caps: &ObstructionCaps,
) -> Result<ObstructionReport> {
    let status = conjugation_endo(group, alpha)?;
    if !status.induces {
        return Err(Error::NotAnEndomorphism(
            "obstruction search needs a map that induces an endomorphism".into(),
        ));
    }
    let q = quotient(group, spec)?;
    if !q.is_finite() {
        return Err(Error::QuotientNotFinite);
    }
    let order = q.order().expect("finite");
    if order > BigInt::from(caps.max_quotient_order) {
        return Err(Error::QuotientTooLarge {
            size: u64::try_from(&order).unwrap_or(u64::MAX),
            cap: caps.max_quotient_order,
        });
    }
    let alpha_q = induced_from_status(group, &status.conjugated_generators, spec)?;

    let automorphisms = quotient_automorphisms_preserving_lattice(group, &alpha_q, caps)?;
    let candidates = enumerate_candidates_full(group, bound)?;

    // the quotient action of a candidate is determined by the projections of
    // its generator images, so memoize the automorphism scan on those
    enum Memo {
        Undefined,
        NoHit,
        Hit(usize),
    }
    let mut memo: HashMap<Vec<Vec<BigInt>>, Memo> = HashMap::new();
    let mut intertwiner = None;
    for cand in &candidates {
        let key: Vec<Vec<BigInt>> = cand
            .images
            .iter()
            .map(|e| q.project(&crate::quotient::element_exponents(group, e)))
            .collect::<Result<_>>()?;
        let entry = match memo.get(&key) {
            Some(m) => m,
            None => {
                let value = match induced_from_status(group, &cand.images, spec) {
                    Ok(phi_q) => {
                        match automorphisms.iter().position(|h| {
                            q.matrix_mul(h, &alpha_q.matrix) == q.matrix_mul(&phi_q.matrix, h)
                        }) {
                            Some(i) => Memo::Hit(i),
                            None => Memo::NoHit,
                        }
                    }
                    // a strict endomorphism candidate may fail to act on the
                    // center quotient; it can then never intertwine on it
                    Err(Error::CenterNotInvariant) => Memo::Undefined,
                    Err(e) => return Err(e),
                };
                memo.entry(key).or_insert(value)
            }
        };
        if let Memo::Hit(h_idx) = entry {
            intertwiner = Some(Intertwiner {
                candidate: cand.ambient.clone(),
                quotient_automorphism: automorphisms[*h_idx].clone(),
            });
            break;
        }
    }

    Ok(ObstructionReport {
        candidates_tested: candidates.len(),
        intertwiner_found: intertwiner,
        search_bounds: SearchBounds {
            candidate_bound: bound,
            quotient_spec: spec.to_string(),
            quotient_factors: q.invariant_factors().to_vec(),
            quotient_order: order,
            automorphisms_searched: automorphisms.len(),
            candidates_enumerated: candidates.len(),
        },
    })
}

/// Brute force over all endomorphism matrices of the finite quotient, kept
/// when bijective and when they preserve the subgroup generated by the
/// images of the lattice generators. The lattice subgroup is preserved by
/// every automorphism of the group, being its unique maximal normal abelian
/// subgroup, so this restriction is sound.
fn quotient_automorphisms_preserving_lattice(
    group: &CrystGroup,
    alpha_q: &QuotientMap,
    caps: &ObstructionCaps,
) -> Result<Vec<Vec<Vec<BigInt>>>> {
    let q = &alpha_q.quotient;
    let qn = q.num_factors();
    let factors = q.invariant_factors();
    let n = group.dim();
    let images = q.generator_images()?;
    let lattice_cols: Vec<Vec<BigInt>> = images[..n].to_vec();

    // allowed residues per entry: h[i][j] must kill the order of source j
    let mut choices: Vec<Vec<BigInt>> = Vec::with_capacity(qn * qn);
    let mut total: u64 = 1;
    for i in 0..qn {
        for j in 0..qn {
            let di = &factors[i];
            let dj = &factors[j];
            let g = di.gcd(dj);
            let step = di / &g;
            let count = u64::try_from(&g).map_err(|_| Error::QuotientTooLarge {
                size: u64::MAX,
                cap: caps.max_endomorphism_matrices,
            })?;
            total = total.saturating_mul(count.max(1));
            let mut vals = Vec::new();
            let mut k = BigInt::zero();
            while k < g {
                vals.push(&k * &step);
                k += 1;
            }
            choices.push(vals);
        }
    }
    if total > caps.max_endomorphism_matrices {
        return Err(Error::QuotientTooLarge {
            size: total,
            cap: caps.max_endomorphism_matrices,
        });
    }

    let mut out = Vec::new();
    let mut idx = vec![0usize; qn * qn];
    'odometer: loop {
        let h: Vec<Vec<BigInt>> = (0..qn)
            .map(|i| (0..qn).map(|j| choices[i * qn + j][idx[i * qn + j]].clone()).collect())
            .collect();
        let bijective = q.matrix_inverse(&h)?.is_some();
        if bijective {
            let preserves = lattice_cols.iter().try_fold(true, |acc, v| -> Result<bool> {
                if !acc {
                    return Ok(false);
                }
                let hv = q.matrix_apply(&h, v);
                Ok(q.solve_combination(&lattice_cols, &hv)?.is_some())
            })?;
            if preserves {
                out.push(h);
            }
        }
        for p in 0..qn * qn {
            if idx[p] + 1 < choices[p].len() {
                idx[p] += 1;
                continue 'odometer;
            }
            idx[p] = 0;
        }
        break;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, BuildOptions};
    use crate::rat::{int, rat};

    fn klein() -> CrystGroup {
        let a = AffineMap::translation_by(vec![int(1), int(0)]);
        let b = AffineMap::new(
            vec![int(0), rat(1, 2)],
            RatMatrix::from_i64_rows(&[&[-1, 0], &[0, 1]]),
        )
        .unwrap();
        build_group(2, None, &[a, b], &BuildOptions::default()).unwrap()
    }

    #[test]
    fn klein_holonomy_has_only_the_identity_automorphism() {
        let g = klein();
        assert_eq!(holonomy_automorphisms(&g), vec![vec![0, 1]]);
    }

    #[test]
    fn klein_candidates_bound_three() {
        let g = klein();
        let cands = enumerate_candidates(&g, 3).unwrap();
        // diag(k, l) with k in +-1..3 and l odd, |l| <= 3
        let mut expected = Vec::new();
        for k in [-3i64, -2, -1, 1, 2, 3] {
            for l in [-3i64, -1, 1, 3] {
                expected.push(RatMatrix::from_i64_rows(&[&[k, 0], &[0, l]]));
            }
        }
        assert_eq!(cands.len(), expected.len());
        for e in &expected {
            assert!(cands.contains(e), "missing candidate {e:?}");
        }
        // every candidate passes the full check
        for c in &cands {
            assert!(crate::endo::hirsch_check(&g, c).unwrap().passes);
        }
        // identity is always present
        assert!(cands.contains(&RatMatrix::identity(2)));
    }

    #[test]
    fn zero_bound_is_rejected() {
        assert!(matches!(
            enumerate_candidates(&klein(), 0),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn identity_map_intertwines_immediately() {
        let g = klein();
        let spec = QuotientSpec::ModK(4);
        let report = obstruction_search(
            &g,
            &AffineMap::identity(2),
            &spec,
            2,
            &ObstructionCaps::default(),
        )
        .unwrap();
        let found = report.intertwiner_found.expect("identity intertwines with itself");
        // re-verify the returned pair: h o alpha_Q = phi_Q o h on the quotient
        let alpha_q =
            crate::quotient::induced_on_quotient(&g, &AffineMap::identity(2), &spec).unwrap();
        let phi = AffineMap::pure_linear(found.candidate.clone()).unwrap();
        let phi_q = crate::quotient::induced_on_quotient(&g, &phi, &spec).unwrap();
        let h = &found.quotient_automorphism;
        let q = &alpha_q.quotient;
        assert_eq!(q.matrix_mul(h, &alpha_q.matrix), q.matrix_mul(&phi_q.matrix, h));
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

    #[test]
    fn dim4_candidates_are_block_diagonal() {
        let g = dim4();
        let cands = enumerate_candidates(&g, 1).unwrap();
        assert!(cands.contains(&RatMatrix::identity(4)));
        for c in &cands {
            // commuting with the holonomy forces two 2x2 blocks
            for (r, col) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
                assert!(c[(r, col)].is_zero() && c[(col, r)].is_zero(), "{c:?}");
            }
            assert!(!c.det().unwrap().is_zero());
            // the image of the holonomy representative must land back in the
            // group: the lower block must fix (1/2, 1/2) modulo Z^2
            let b_sum_row2 = &c[(2, 2)] + &c[(2, 3)];
            let b_sum_row3 = &c[(3, 2)] + &c[(3, 3)];
            for s in [b_sum_row2, b_sum_row3] {
                assert!(crate::rat::is_integer(&s));
                assert!(!(s.to_integer() % 2i64).is_zero(), "odd row sums");
            }
        }
    }

    #[test]
    fn klein_expanding_map_has_no_intertwiner_mod_four() {
        let g = klein();
        let alpha = AffineMap::new(
            vec![rat(1, 2), int(0)],
            RatMatrix::from_i64_rows(&[&[3, 0], &[0, 3]]),
        )
        .unwrap();
        let report = obstruction_search(
            &g,
            &alpha,
            &QuotientSpec::ModK(4),
            5,
            &ObstructionCaps::default(),
        )
        .unwrap();
        assert!(report.intertwiner_found.is_none());
        // diag(k, l), k in +-1..5, l odd |l| <= 5: 10 * 6 candidates
        assert_eq!(report.candidates_tested, 60);
        assert!(report.search_bounds.automorphisms_searched > 0);
    }

    #[test]
    fn dim4_anosov_has_no_intertwiner_on_the_center_quotient() {
        let g = dim4();
        let alpha = AffineMap::new(
            vec![rat(1, 2), rat(1, 2), int(0), int(0)],
            RatMatrix::from_i64_rows(&[
                &[13, 8, 0, 0],
                &[8, 5, 0, 0],
                &[0, 0, 13, 8],
                &[0, 0, 8, 5],
            ]),
        )
        .unwrap();
        let report = obstruction_search(
            &g,
            &alpha,
            &QuotientSpec::Center,
            2,
            &ObstructionCaps::default(),
        )
        .unwrap();
        assert!(report.intertwiner_found.is_none());
        assert!(report.candidates_tested > 10_000);
        assert_eq!(report.search_bounds.quotient_factors, vec![BigInt::from(2); 3]);
    }

    #[test]
    fn caps_turn_oversized_searches_into_errors() {
        let g = klein();
        let alpha = AffineMap::new(
            vec![rat(1, 2), int(0)],
            RatMatrix::from_i64_rows(&[&[3, 0], &[0, 3]]),
        )
        .unwrap();
        let tiny = ObstructionCaps {
            max_quotient_order: 4,
            max_endomorphism_matrices: 1 << 24,
        };
        assert!(matches!(
            obstruction_search(&g, &alpha, &QuotientSpec::ModK(4), 2, &tiny),
            Err(Error::QuotientTooLarge { .. })
        ));
        // an infinite quotient is rejected outright
        assert!(matches!(
            obstruction_search(
                &g,
                &alpha,
                &QuotientSpec::Abelianization,
                2,
                &ObstructionCaps::default()
            ),
            Err(Error::QuotientNotFinite)
        ));
    }
}
