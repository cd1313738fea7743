//! The bundled verification battery: every expectation recorded for the
//! corpus groups and maps, checked exactly. Each check carries a short locus
//! label; a failure prints the label together with both values.

use bieberbach::endo::{
    classify_spectrum, conjugation_endo, fixed_point, hirsch_check, holonomy_image_check,
    linearize_at_fixed_point, realize_endo, well_defined_witness, FixedPointOutcome,
};
use bieberbach::group::{build_group, BuildOptions, CrystGroup};
use bieberbach::io;
use bieberbach::quotient::{
    abelianization, element_exponents, induced_on_quotient, matrix_in_generator_basis, quotient,
    QuotientSpec,
};
use bieberbach::rat::{format_rat, int, rat, Rat};
use bieberbach::search::{enumerate_candidates, obstruction_search, ObstructionCaps};
use bieberbach::{AffineMap, RatMatrix};
use num_bigint::BigInt;
use num_traits::Zero;

pub const KLEIN_JSON: &str = include_str!("../corpus/klein.json");
pub const KLEIN_ALPHA_JSON: &str = include_str!("../corpus/klein_alpha.json");
pub const KLEIN_TWIST_JSON: &str = include_str!("../corpus/klein_twist_images.json");
pub const HW_JSON: &str = include_str!("../corpus/hantzsche_wendt.json");
pub const HW_CONJUGATOR_JSON: &str = include_str!("../corpus/hw_conjugator.json");
pub const HW_POINT_MAP_JSON: &str = include_str!("../corpus/hw_point_map.json");
pub const DIM4_JSON: &str = include_str!("../corpus/dim4_anosov.json");
pub const DIM4_ALPHA_JSON: &str = include_str!("../corpus/dim4_alpha.json");

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: Option<String>,
}

fn err<T>(msg: String) -> Result<T, String> {
    Err(msg)
}

pub fn corpus_group(json: &str) -> Result<CrystGroup, String> {
    let data = io::group_data_from_json(json).map_err(|e| e.to_string())?;
    build_group(
        data.dimension,
        data.lattice,
        &data.generators,
        &BuildOptions::default(),
    )
    .map_err(|e| e.to_string())
}

pub fn corpus_map(json: &str) -> Result<AffineMap, String> {
    io::affine_map_from_json(json).map_err(|e| e.to_string())
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        err(format!("{what}: expected {want:?}, got {got:?}"))
    }
}

fn pt(coords: &[(i64, i64)]) -> Vec<Rat> {
    coords.iter().map(|&(n, d)| rat(n, d)).collect()
}

fn fmt_pt(v: &[Rat]) -> String {
    let inner: Vec<String> = v.iter().map(format_rat).collect();
    format!("({})", inner.join(", "))
}

/// The failed extension of a lattice automorphism to the isometry group:
/// conjugating the flip by [[2,1],[1,1]] leaves the orthogonal group.
pub fn check_extension_counterexample() -> Result<(), String> {
    let a = RatMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
    let b = RatMatrix::from_i64_rows(&[&[-1, 0], &[0, 1]]);
    let b_prime = a
        .mul(&b)
        .and_then(|m| m.mul(&a.inverse()?))
        .map_err(|e| e.to_string())?;
    expect_eq(
        "B' = A B A^-1",
        b_prime.clone(),
        RatMatrix::from_i64_rows(&[&[-3, 4], &[-2, 3]]),
    )?;
    let gram = b_prime
        .transpose()
        .mul(&b_prime)
        .map_err(|e| e.to_string())?;
    if gram == RatMatrix::identity(2) {
        return err("B' unexpectedly orthogonal".into());
    }
    Ok(())
}

/// Conjugation by the quarter-shift swap sends the Hantzsche-Wendt group
/// into itself, with the recorded generator images.
pub fn check_hw_conjugation() -> Result<(), String> {
    let g = corpus_group(HW_JSON)?;
    expect_eq("holonomy order", g.holonomy_order(), 4)?;
    if g.torsion_witness().map_err(|e| e.to_string())?.is_some() {
        return err("group unexpectedly has torsion".into());
    }
    let d = corpus_map(HW_CONJUGATOR_JSON)?;
    let st = conjugation_endo(&g, &d).map_err(|e| e.to_string())?;
    if !st.induces {
        return err("conjugator fails to send the group into itself".into());
    }

    let gen_a = AffineMap::new(
        vec![rat(1, 2), int(0), int(0)],
        RatMatrix::from_i64_rows(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
    )
    .map_err(|e| e.to_string())?;
    let gen_b = AffineMap::new(
        vec![int(0), rat(1, 2), rat(1, 2)],
        RatMatrix::from_i64_rows(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, -1]]),
    )
    .map_err(|e| e.to_string())?;

    // images of the lattice stay in the lattice
    for i in 0..3 {
        let t = AffineMap::translation_by(
            (0..3).map(|j| if i == j { int(1) } else { int(0) }).collect(),
        );
        let img = d.conjugate(&t).map_err(|e| e.to_string())?;
        if g.member(&img).map_err(|e| e.to_string())?.map(|e| e.holonomy_index) != Some(0) {
            return err(format!("image of lattice generator {i} is not a translation"));
        }
    }
    let img_a = d.conjugate(&gen_a).map_err(|e| e.to_string())?;
    expect_eq("conjugate of the first generator", img_a, gen_a.clone())?;

    let img_b = d.conjugate(&gen_b).map_err(|e| e.to_string())?;
    let shift = AffineMap::translation_by(vec![int(0), int(1), int(1)]);
    let want = shift
        .compose(&gen_a.compose(&gen_b).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    expect_eq("conjugate of the second generator", img_b, want)?;

    if !holonomy_image_check(&g, &d).map_err(|e| e.to_string())? {
        return err("holonomy images fail to generate the full holonomy group".into());
    }
    Ok(())
}

/// The candidate point map of that conjugation is not well defined on
/// orbits; the recorded witness point and all four coset forms reproduce.
pub fn check_hw_witness(point: &[Rat]) -> Result<(), String> {
    let g = corpus_group(HW_JSON)?;
    let phi = corpus_map(HW_POINT_MAP_JSON)?;
    let witness = well_defined_witness(&g, &phi, &[point.to_vec()], 2)
        .map_err(|e| e.to_string())?
        .ok_or_else(|| format!("no witness found at {}", fmt_pt(point)))?;

    expect_eq("witness gamma holonomy", witness.gamma.holonomy_index, 1)?;
    if witness.gamma.lattice_part.iter().any(|z| !z.is_zero()) {
        return err("witness gamma has an unexpected lattice part".into());
    }
    expect_eq(
        "gamma . n",
        witness.moved_point.clone(),
        pt(&[(-1, 3), (5, 6), (1, 6)]),
    )?;
    expect_eq(
        "phi(n)",
        witness.image_of_point.clone(),
        pt(&[(1, 3), (1, 3), (1, 3)]),
    )?;
    expect_eq(
        "phi(gamma . n)",
        witness.image_of_moved.clone(),
        pt(&[(-1, 3), (1, 6), (5, 6)]),
    )?;

    // the four coset forms of gamma' . phi(n), modulo the lattice
    let expected_forms = [
        pt(&[(1, 3), (1, 3), (1, 3)]),
        pt(&[(5, 6), (-1, 3), (-1, 3)]),
        pt(&[(-1, 3), (5, 6), (1, 6)]),
        pt(&[(1, 6), (-5, 6), (-1, 6)]),
    ];
    let phi_n = &witness.image_of_point;
    let mut forms: Vec<Vec<Rat>> = Vec::new();
    for idx in 0..g.holonomy_order() {
        let rep = g.rep_map(idx);
        forms.push(rep.apply(phi_n).map_err(|e| e.to_string())?);
    }
    for want in &expected_forms {
        let hit = forms.iter().any(|got| {
            got.iter()
                .zip(want)
                .all(|(a, b)| bieberbach::rat::is_integer(&(a - b)))
        });
        if !hit {
            return err(format!(
                "coset form {} not realized by any holonomy class",
                fmt_pt(want)
            ));
        }
    }
    // and none of them matches phi(gamma . n) modulo the lattice
    if g.orbit_equal(&witness.image_of_moved, phi_n)
        .map_err(|e| e.to_string())?
        .is_some()
    {
        return err("images unexpectedly lie in one orbit".into());
    }
    Ok(())
}

/// Klein bottle: the conjugation relations of the expanding map.
pub fn check_klein_conjugation() -> Result<(), String> {
    let g = corpus_group(KLEIN_JSON)?;
    expect_eq("holonomy order", g.holonomy_order(), 2)?;
    if g.torsion_witness().map_err(|e| e.to_string())?.is_some() {
        return err("group unexpectedly has torsion".into());
    }
    let alpha = corpus_map(KLEIN_ALPHA_JSON)?;
    let st = conjugation_endo(&g, &alpha).map_err(|e| e.to_string())?;
    if !st.induces {
        return err("expanding map fails to conjugate the group into itself".into());
    }
    if st.is_automorphism {
        return err("expanding map is wrongly reported bijective".into());
    }
    if st.is_hirsch {
        return err("map with a translation part reported as a pure automorphism".into());
    }

    let a = AffineMap::translation_by(vec![int(1), int(0)]);
    let b = AffineMap::new(
        vec![int(0), rat(1, 2)],
        RatMatrix::from_i64_rows(&[&[-1, 0], &[0, 1]]),
    )
    .map_err(|e| e.to_string())?;

    // b^2 is the vertical lattice translation
    expect_eq(
        "b composed with b",
        b.compose(&b).map_err(|e| e.to_string())?,
        AffineMap::translation_by(vec![int(0), int(1)]),
    )?;

    // alpha a alpha^-1 = a^3
    let img_a = alpha.conjugate(&a).map_err(|e| e.to_string())?;
    expect_eq(
        "conjugate of a",
        img_a,
        AffineMap::translation_by(vec![int(3), int(0)]),
    )?;
    // alpha b alpha^-1 = a b^3
    let img_b = alpha.conjugate(&b).map_err(|e| e.to_string())?;
    let b3 = b
        .compose(&b)
        .and_then(|b2| b2.compose(&b))
        .map_err(|e| e.to_string())?;
    let want = a.compose(&b3).map_err(|e| e.to_string())?;
    expect_eq("conjugate of b", img_b, want)?;
    Ok(())
}

/// Klein bottle: spectral data and the fixed point of the expanding map.
pub fn check_klein_spectrum_and_fixed_point() -> Result<(), String> {
    let alpha = corpus_map(KLEIN_ALPHA_JSON)?;
    let s = classify_spectrum(&alpha).map_err(|e| e.to_string())?;
    if !s.expanding || !s.hyperbolic || s.has_eigenvalue_one {
        return err(format!("expected an expanding classification, got {s:?}"));
    }
    match fixed_point(&alpha).map_err(|e| e.to_string())? {
        FixedPointOutcome::Unique(x) => expect_eq("fixed point", x, pt(&[(-1, 4), (0, 1)]))?,
        other => return err(format!("expected a unique fixed point, got {other:?}")),
    }
    Ok(())
}

/// Klein bottle: homology and the induced map on it.
pub fn check_klein_abelianization() -> Result<(), String> {
    let g = corpus_group(KLEIN_JSON)?;
    let alpha = corpus_map(KLEIN_ALPHA_JSON)?;
    let ab = abelianization(&g).map_err(|e| e.to_string())?;
    expect_eq(
        "invariant factors",
        ab.invariant_factors().to_vec(),
        vec![BigInt::from(2), BigInt::zero()],
    )?;
    let st = conjugation_endo(&g, &alpha).map_err(|e| e.to_string())?;
    let images = ab.generator_images().map_err(|e| e.to_string())?;
    let proj = |e: &bieberbach::GroupElement| -> Result<Vec<BigInt>, String> {
        ab.project(&element_exponents(&g, e)).map_err(|e| e.to_string())
    };
    // induced map sends the class of a to itself
    let a_bar = &images[0];
    expect_eq(
        "image of the class of a",
        proj(&st.conjugated_generators[0])?,
        ab.reduce_vec(a_bar.clone()),
    )?;
    // and the class of b to a + 3b
    let b_bar = &images[2];
    let want: Vec<BigInt> = a_bar
        .iter()
        .zip(b_bar)
        .map(|(x, y)| x + BigInt::from(3) * y)
        .collect();
    expect_eq(
        "image of the class of b",
        proj(&st.conjugated_generators[2])?,
        ab.reduce_vec(want),
    )?;
    Ok(())
}

/// Klein bottle: linear candidates are the integer-by-odd diagonals, and
/// none of them is homotopy-equivalent to the expanding map on the mod-4
/// quotient.
pub fn check_klein_candidates_and_obstruction() -> Result<(), String> {
    let g = corpus_group(KLEIN_JSON)?;
    let cands = enumerate_candidates(&g, 3).map_err(|e| e.to_string())?;
    let mut want = Vec::new();
    for k in [-3i64, -2, -1, 1, 2, 3] {
        for l in [-3i64, -1, 1, 3] {
            want.push(RatMatrix::from_i64_rows(&[&[k, 0], &[0, l]]));
        }
    }
    expect_eq("candidate count at bound 3", cands.len(), want.len())?;
    for w in &want {
        if !cands.contains(w) {
            return err(format!("missing diagonal candidate {w:?}"));
        }
    }
    let hc = hirsch_check(&g, &RatMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]))
        .map_err(|e| e.to_string())?;
    if !hc.passes {
        return err("diag(2, 3) should pass the pure-automorphism test".into());
    }

    let alpha = corpus_map(KLEIN_ALPHA_JSON)?;
    let report = obstruction_search(
        &g,
        &alpha,
        &QuotientSpec::ModK(4),
        5,
        &ObstructionCaps::default(),
    )
    .map_err(|e| e.to_string())?;
    if let Some(found) = report.intertwiner_found {
        return err(format!(
            "unexpected intertwiner through candidate {:?}",
            found.candidate
        ));
    }
    Ok(())
}

/// Klein bottle: the twist a -> a, b -> ab is a conjugation by an affine map
/// with linear part I and translation (1/2, 0); no pure-linear map within
/// coefficient bound 10 realizes it.
pub fn check_klein_realization() -> Result<(), String> {
    let g = corpus_group(KLEIN_JSON)?;
    let images = io::images_from_json(KLEIN_TWIST_JSON).map_err(|e| e.to_string())?;
    let alpha = realize_endo(&g, &images).map_err(|e| e.to_string())?;
    expect_eq("linear part", alpha.linear.clone(), RatMatrix::identity(2))?;
    expect_eq("translation", alpha.translation.clone(), pt(&[(1, 2), (0, 1)]))?;

    for cand in enumerate_candidates(&g, 10).map_err(|e| e.to_string())? {
        let cand_map = AffineMap::pure_linear(cand.clone()).map_err(|e| e.to_string())?;
        let st = conjugation_endo(&g, &cand_map).map_err(|e| e.to_string())?;
        if st.conjugated_generators == images {
            return err(format!(
                "pure linear map {cand:?} unexpectedly realizes the twist"
            ));
        }
    }

    // realizing the expanding relations a -> a^3, b -> a b^3 recovers a map
    // with the same conjugation action as the expanding map itself
    let alpha = corpus_map(KLEIN_ALPHA_JSON)?;
    let target = conjugation_endo(&g, &alpha).map_err(|e| e.to_string())?;
    let recovered =
        realize_endo(&g, &target.conjugated_generators).map_err(|e| e.to_string())?;
    let recovered_st = conjugation_endo(&g, &recovered).map_err(|e| e.to_string())?;
    expect_eq(
        "generator images of the recovered realization",
        recovered_st.conjugated_generators,
        target.conjugated_generators,
    )?;
    Ok(())
}

/// Klein bottle: conjugating by the translation to the fixed point turns the
/// expanding map into a pure linear one that still acts on the moved group.
pub fn check_klein_linearization() -> Result<(), String> {
    let g = corpus_group(KLEIN_JSON)?;
    let alpha = corpus_map(KLEIN_ALPHA_JSON)?;
    let (shifted, delta) = linearize_at_fixed_point(&g, &alpha).map_err(|e| e.to_string())?;
    expect_eq(
        "linear part",
        delta.clone(),
        RatMatrix::from_i64_rows(&[&[3, 0], &[0, 3]]),
    )?;
    let hc = hirsch_check(&shifted, &delta).map_err(|e| e.to_string())?;
    if !hc.passes {
        return err("linearized map fails the pure-automorphism test on the moved group".into());
    }
    Ok(())
}

/// Four-dimensional example: full conjugation relations of the hyperbolic
/// map, including the image of the holonomy representative.
pub fn check_dim4_conjugation() -> Result<(), String> {
    let g = corpus_group(DIM4_JSON)?;
    expect_eq("holonomy order", g.holonomy_order(), 2)?;
    if g.torsion_witness().map_err(|e| e.to_string())?.is_some() {
        return err("group unexpectedly has torsion".into());
    }
    let alpha = corpus_map(DIM4_ALPHA_JSON)?;
    let st = conjugation_endo(&g, &alpha).map_err(|e| e.to_string())?;
    if !st.induces || !st.is_automorphism {
        return err("hyperbolic map should conjugate the group onto itself".into());
    }
    let z = |v: &[i64]| -> Vec<BigInt> { v.iter().map(|&x| BigInt::from(x)).collect() };
    let want: Vec<(Vec<BigInt>, usize)> = vec![
        (z(&[13, 8, 0, 0]), 0),
        (z(&[8, 5, 0, 0]), 0),
        (z(&[0, 0, 13, 8]), 0),
        (z(&[0, 0, 8, 5]), 0),
        (z(&[1, 1, 10, 6]), 1),
    ];
    for (i, (lat, hol)) in want.iter().enumerate() {
        let got = &st.conjugated_generators[i];
        if &got.lattice_part != lat || got.holonomy_index != *hol {
            return err(format!(
                "generator {i}: expected ({lat:?}, holonomy {hol}), got ({:?}, holonomy {})",
                got.lattice_part, got.holonomy_index
            ));
        }
    }
    Ok(())
}

/// Four-dimensional example: spectrum, center, center quotient and the
/// induced matrix on it.
pub fn check_dim4_quotient_data() -> Result<(), String> {
    let g = corpus_group(DIM4_JSON)?;
    let alpha = corpus_map(DIM4_ALPHA_JSON)?;

    let s = classify_spectrum(&alpha).map_err(|e| e.to_string())?;
    if !s.hyperbolic || s.expanding || s.has_eigenvalue_one {
        return err(format!("expected hyperbolic and not expanding, got {s:?}"));
    }
    let factor = bieberbach::RatPoly::from_i64(&[1, -18, 1]);
    let (_, rem) = s.char_poly.div_rem(&factor).map_err(|e| e.to_string())?;
    if !rem.is_zero() {
        return err("characteristic polynomial misses the x^2 - 18x + 1 factor".into());
    }

    let center = g.center_lattice().map_err(|e| e.to_string())?;
    expect_eq("center rank", center.len(), 2)?;
    for v in &center {
        if !v[0].is_zero() || !v[1].is_zero() {
            return err(format!("center vector {v:?} touches the rotated plane"));
        }
    }
    let det = &center[0][2] * &center[1][3] - &center[0][3] * &center[1][2];
    if det != BigInt::from(1) && det != BigInt::from(-1) {
        return err("center basis does not span the last two coordinates".into());
    }

    let q = quotient(&g, &QuotientSpec::Center).map_err(|e| e.to_string())?;
    expect_eq(
        "center-quotient factors",
        q.invariant_factors().to_vec(),
        vec![BigInt::from(2), BigInt::from(2), BigInt::from(2)],
    )?;

    let qm = induced_on_quotient(&g, &alpha, &QuotientSpec::Center).map_err(|e| e.to_string())?;
    let m = matrix_in_generator_basis(&qm, &[0, 1, 4])
        .map_err(|e| e.to_string())?
        .ok_or("images of a, b, f do not form a basis of the quotient")?;
    let want: Vec<Vec<BigInt>> = vec![
        vec![1.into(), 0.into(), 1.into()],
        vec![0.into(), 1.into(), 1.into()],
        vec![0.into(), 0.into(), 1.into()],
    ];
    expect_eq("induced matrix in the a, b, f basis", m, want)?;
    Ok(())
}

/// Four-dimensional example: bounded obstruction search finds no intertwiner
/// between the hyperbolic map and any linear candidate.
pub fn check_dim4_obstruction() -> Result<(), String> {
    let g = corpus_group(DIM4_JSON)?;
    let alpha = corpus_map(DIM4_ALPHA_JSON)?;
    let report = obstruction_search(
        &g,
        &alpha,
        &QuotientSpec::Center,
        2,
        &ObstructionCaps::default(),
    )
    .map_err(|e| e.to_string())?;
    if let Some(found) = report.intertwiner_found {
        return err(format!(
            "unexpected intertwiner through candidate {:?}",
            found.candidate
        ));
    }
    if report.candidates_tested == 0 {
        return err("candidate enumeration came back empty".into());
    }

    // every admissible linear candidate is block diagonal with two 2x2
    // integer blocks (it must commute with the holonomy flip)
    for cand in enumerate_candidates(&g, 1).map_err(|e| e.to_string())? {
        for (r, c) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
            if !cand[(r, c)].is_zero() || !cand[(c, r)].is_zero() {
                return err(format!("candidate {cand:?} is not block diagonal"));
            }
        }
    }
    Ok(())
}

type Check = Box<dyn Fn() -> Result<(), String>>;

pub fn run_all() -> Vec<CheckResult> {
    let paper_point = pt(&[(1, 3), (1, 3), (1, 3)]);
    let checks: Vec<(&str, Check)> = vec![
        (
            "extension counterexample: B' = A B A^-1 leaves O(2)",
            Box::new(check_extension_counterexample),
        ),
        (
            "hantzsche-wendt: conjugation images",
            Box::new(check_hw_conjugation),
        ),
        (
            "hantzsche-wendt: orbit-map witness and coset forms",
            Box::new(move || check_hw_witness(&paper_point)),
        ),
        (
            "klein: conjugation relations of the expanding map",
            Box::new(check_klein_conjugation),
        ),
        (
            "klein: expanding spectrum and fixed point",
            Box::new(check_klein_spectrum_and_fixed_point),
        ),
        (
            "klein: homology and induced map",
            Box::new(check_klein_abelianization),
        ),
        (
            "klein: linear candidates and mod-4 obstruction",
            Box::new(check_klein_candidates_and_obstruction),
        ),
        (
            "klein: affine realization of the twist",
            Box::new(check_klein_realization),
        ),
        (
            "klein: linearization at the fixed point",
            Box::new(check_klein_linearization),
        ),
        (
            "dim4: conjugation relations of the hyperbolic map",
            Box::new(check_dim4_conjugation),
        ),
        (
            "dim4: spectrum, center and induced matrix",
            Box::new(check_dim4_quotient_data),
        ),
        (
            "dim4: center-quotient obstruction",
            Box::new(check_dim4_obstruction),
        ),
    ];
    checks
        .into_iter()
        .map(|(name, f)| match f() {
            Ok(()) => CheckResult {
                name: name.to_string(),
                pass: true,
                detail: None,
            },
            Err(detail) => CheckResult {
                name: name.to_string(),
                pass: false,
                detail: Some(detail),
            },
        })
        .collect()
}
