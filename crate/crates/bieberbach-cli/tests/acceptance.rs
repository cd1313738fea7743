//! Acceptance suite: one test per acceptance criterion, each printing a
//! pass/fail line with its runtime. Every expected value is exact; runtime
//! bounds are asserted with the stated budgets.

use std::time::{Duration, Instant};

use bieberbach::endo::{
    classify_spectrum, conjugation_endo, fixed_point, hirsch_check, holonomy_image_check,
    linearize_at_fixed_point, realize_endo, well_defined_witness, FixedPointOutcome,
};
use bieberbach::quotient::{
    abelianization, element_exponents, induced_on_quotient, matrix_in_generator_basis, quotient,
    QuotientSpec,
};
use bieberbach::rat::{int, rat, Rat};
use bieberbach::roots::{schur_cohn_all_inside, sturm_count, unit_circle_root_count};
use bieberbach::search::{enumerate_candidates, obstruction_search, ObstructionCaps};
use bieberbach::snf::smith_normal_form;
use bieberbach::{AffineMap, GroupElement, IntMatrix, RatMatrix, RatPoly};
use bieberbach_cli::verify;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn finish(name: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!("{name}: PASS ({elapsed:.2?}, budget {budget:.0?})");
    assert!(
        elapsed <= budget,
        "{name} exceeded its runtime budget: {elapsed:?} > {budget:?}"
    );
}

fn z(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Criterion 1: the conjugated flip leaves the orthogonal group, exactly.
#[test]
fn acceptance_1_extension_counterexample() {
    // warm up the allocator outside the timed region
    let _ = RatMatrix::identity(2).mul(&RatMatrix::identity(2)).unwrap();
    let started = Instant::now();
    let a = RatMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
    let b = RatMatrix::from_i64_rows(&[&[-1, 0], &[0, 1]]);
    let b_prime = a.mul(&b).unwrap().mul(&a.inverse().unwrap()).unwrap();
    assert_eq!(b_prime, RatMatrix::from_i64_rows(&[&[-3, 4], &[-2, 3]]));
    let gram = b_prime.transpose().mul(&b_prime).unwrap();
    assert_ne!(gram, RatMatrix::identity(2));
    finish(
        "acceptance 1 (extension counterexample)",
        started,
        Duration::from_millis(1),
    );
}

/// Criterion 2: the orbit map of the Hantzsche-Wendt conjugation is not well
/// defined; the recorded witness and all four coset forms reproduce exactly.
#[test]
fn acceptance_2_well_definedness_failure() {
    let started = Instant::now();
    let g = verify::corpus_group(verify::HW_JSON).unwrap();
    let d = verify::corpus_map(verify::HW_CONJUGATOR_JSON).unwrap();
    let st = conjugation_endo(&g, &d).unwrap();
    assert!(st.induces, "conjugation sends the group into itself");

    // phi(B) = (0,1,1) A B as affine maps
    verify::check_hw_conjugation().unwrap();

    // the witness search over the recorded point plus the default grid
    // returns the recorded pair (n, gamma = B) with the exact vectors
    let phi = verify::corpus_map(verify::HW_POINT_MAP_JSON).unwrap();
    let paper_point = vec![rat(1, 3), rat(1, 3), rat(1, 3)];
    let mut samples = vec![paper_point.clone()];
    samples.extend(default_grid(3));
    let w = well_defined_witness(&g, &phi, &samples, 2)
        .unwrap()
        .expect("witness exists");
    assert_eq!(w.point, paper_point);
    assert_eq!(w.gamma.holonomy_index, 1);
    assert!(w.gamma.lattice_part.iter().all(|c| c.is_zero()));
    assert_eq!(g.rep_translation(1), vec![int(0), rat(1, 2), rat(1, 2)]);
    assert_eq!(w.image_of_moved, vec![rat(-1, 3), rat(1, 6), rat(5, 6)]);
    assert!(g
        .orbit_equal(&w.image_of_moved, &w.image_of_point)
        .unwrap()
        .is_none());

    // four coset forms, checked inside the battery helper
    verify::check_hw_witness(&paper_point).unwrap();

    // the default grid alone also certifies failure
    let on_default = well_defined_witness(&g, &phi, &default_grid(3), 2)
        .unwrap()
        .expect("default grid contains witnesses");
    assert!(g
        .orbit_equal(&on_default.image_of_moved, &on_default.image_of_point)
        .unwrap()
        .is_none());

    finish(
        "acceptance 2 (well-definedness failure)",
        started,
        Duration::from_secs(1),
    );
}

fn default_grid(dim: usize) -> Vec<Vec<Rat>> {
    let values: Vec<Rat> = vec![
        int(0),
        rat(1, 2),
        rat(1, 3),
        rat(2, 3),
        rat(1, 4),
        rat(3, 4),
        rat(1, 6),
        rat(5, 6),
    ];
    let mut points: Vec<Vec<Rat>> = vec![vec![]];
    for _ in 0..dim {
        let mut next = Vec::with_capacity(points.len() * values.len());
        for p in &points {
            for v in &values {
                let mut q = p.clone();
                q.push(v.clone());
                next.push(q);
            }
        }
        points = next;
    }
    points
}

/// Criterion 3: the Klein twist a -> a, b -> ab is realized by an affine map
/// with identity linear part and translation (1/2, *); no pure-linear
/// candidate within coefficient bound 10 produces those generator images.
#[test]
fn acceptance_3_twist_realization() {
    let started = Instant::now();
    let g = verify::corpus_group(verify::KLEIN_JSON).unwrap();
    let images = vec![
        GroupElement { lattice_part: z(&[1, 0]), holonomy_index: 0 },
        GroupElement { lattice_part: z(&[0, 1]), holonomy_index: 0 },
        GroupElement { lattice_part: z(&[1, 0]), holonomy_index: 1 },
    ];
    let alpha = realize_endo(&g, &images).unwrap();
    assert_eq!(alpha.linear, RatMatrix::identity(2));
    assert_eq!(alpha.translation[0], rat(1, 2));

    let mut rejected = 0;
    for cand in enumerate_candidates(&g, 10).unwrap() {
        assert!(hirsch_check(&g, &cand).unwrap().passes);
        let cand_map = AffineMap::pure_linear(cand).unwrap();
        let st = conjugation_endo(&g, &cand_map).unwrap();
        assert_ne!(
            st.conjugated_generators, images,
            "a pure-linear map must not realize the twist"
        );
        rejected += 1;
    }
    assert!(rejected > 0);
    finish(
        "acceptance 3 (twist realization)",
        started,
        Duration::from_secs(1),
    );
}

/// Criterion 4: the expanding Klein-bottle example end to end.
#[test]
fn acceptance_4_expanding_klein_example() {
    let started = Instant::now();
    let g = verify::corpus_group(verify::KLEIN_JSON).unwrap();
    let alpha = verify::corpus_map(verify::KLEIN_ALPHA_JSON).unwrap();

    let st = conjugation_endo(&g, &alpha).unwrap();
    assert!(st.induces);
    assert_eq!(
        st.conjugated_generators,
        vec![
            GroupElement { lattice_part: z(&[3, 0]), holonomy_index: 0 },
            GroupElement { lattice_part: z(&[0, 3]), holonomy_index: 0 },
            GroupElement { lattice_part: z(&[1, 1]), holonomy_index: 1 },
        ],
        "images a^3, b^6 and a b^3"
    );
    assert!(holonomy_image_check(&g, &alpha).unwrap());

    let s = classify_spectrum(&alpha).unwrap();
    assert!(s.expanding && s.hyperbolic);

    let ab = abelianization(&g).unwrap();
    assert_eq!(ab.invariant_factors(), &[BigInt::from(2), BigInt::zero()]);
    let gen_images = ab.generator_images().unwrap();
    let proj =
        |e: &GroupElement| -> Vec<BigInt> { ab.project(&element_exponents(&g, e)).unwrap() };
    let a_bar = &gen_images[0];
    let b_bar = &gen_images[2];
    assert_eq!(proj(&st.conjugated_generators[0]), ab.reduce_vec(a_bar.clone()));
    let expected_b: Vec<BigInt> = a_bar
        .iter()
        .zip(b_bar)
        .map(|(x, y)| x + BigInt::from(3) * y)
        .collect();
    assert_eq!(proj(&st.conjugated_generators[2]), ab.reduce_vec(expected_b));

    let report = obstruction_search(
        &g,
        &alpha,
        &QuotientSpec::ModK(4),
        5,
        &ObstructionCaps::default(),
    )
    .unwrap();
    assert!(report.intertwiner_found.is_none());
    assert_eq!(
        report.search_bounds.quotient_factors,
        vec![BigInt::from(2), BigInt::from(4)]
    );

    finish(
        "acceptance 4 (expanding Klein example)",
        started,
        Duration::from_secs(10),
    );
}

/// Criterion 5: the four-dimensional hyperbolic example end to end.
#[test]
fn acceptance_5_anosov_example() {
    let started = Instant::now();
    let g = verify::corpus_group(verify::DIM4_JSON).unwrap();
    let alpha = verify::corpus_map(verify::DIM4_ALPHA_JSON).unwrap();

    let st = conjugation_endo(&g, &alpha).unwrap();
    assert!(st.induces && st.is_automorphism);
    let f_image = &st.conjugated_generators[4];
    assert_eq!(f_image.lattice_part, z(&[1, 1, 10, 6]), "a b c^10 d^6 f");
    assert_eq!(f_image.holonomy_index, 1);

    let s = classify_spectrum(&alpha).unwrap();
    assert!(s.hyperbolic && !s.expanding);
    let factor = RatPoly::from_i64(&[1, -18, 1]);
    assert!(s.char_poly.div_rem(&factor).unwrap().1.is_zero());

    let center = g.center_lattice().unwrap();
    let expect: Vec<Vec<BigInt>> = vec![z(&[0, 0, 1, 0]), z(&[0, 0, 0, 1])];
    let mut sorted = center.clone();
    sorted.sort();
    let mut expect_sorted = expect;
    expect_sorted.sort();
    assert_eq!(sorted, expect_sorted, "center is spanned by e3 and e4");

    let q = quotient(&g, &QuotientSpec::Center).unwrap();
    assert_eq!(q.invariant_factors(), &[BigInt::from(2), BigInt::from(2), BigInt::from(2)]);

    let qm = induced_on_quotient(&g, &alpha, &QuotientSpec::Center).unwrap();
    let m = matrix_in_generator_basis(&qm, &[0, 1, 4]).unwrap().unwrap();
    assert_eq!(
        m,
        vec![
            z(&[1, 0, 1]),
            z(&[0, 1, 1]),
            z(&[0, 0, 1]),
        ]
    );

    let report = obstruction_search(
        &g,
        &alpha,
        &QuotientSpec::Center,
        2,
        &ObstructionCaps::default(),
    )
    .unwrap();
    assert!(report.intertwiner_found.is_none());

    finish(
        "acceptance 5 (hyperbolic dim-4 example)",
        started,
        Duration::from_secs(60),
    );
}

/// Criterion 6: linearization at the fixed point.
#[test]
fn acceptance_6_linearization() {
    let started = Instant::now();
    let g = verify::corpus_group(verify::KLEIN_JSON).unwrap();
    let alpha = verify::corpus_map(verify::KLEIN_ALPHA_JSON).unwrap();
    match fixed_point(&alpha).unwrap() {
        FixedPointOutcome::Unique(x) => assert_eq!(x, vec![rat(-1, 4), int(0)]),
        other => panic!("expected unique fixed point, got {other:?}"),
    }
    let (shifted, delta) = linearize_at_fixed_point(&g, &alpha).unwrap();
    assert_eq!(delta, RatMatrix::from_i64_rows(&[&[3, 0], &[0, 3]]));
    assert!(hirsch_check(&shifted, &delta).unwrap().passes);
    finish(
        "acceptance 6 (linearization)",
        started,
        Duration::from_secs(1),
    );
}

// ----- criterion 7: property suites with a floating-point cross oracle -----

#[derive(Clone, Copy)]
struct Cx {
    re: f64,
    im: f64,
}

impl Cx {
    fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
    fn sub(self, o: Cx) -> Cx {
        Cx { re: self.re - o.re, im: self.im - o.im }
    }
    fn mul(self, o: Cx) -> Cx {
        Cx {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
    fn div(self, o: Cx) -> Cx {
        let d = o.re * o.re + o.im * o.im;
        Cx {
            re: (self.re * o.re + self.im * o.im) / d,
            im: (self.im * o.re - self.re * o.im) / d,
        }
    }
}

fn eval_cx(coeffs: &[f64], x: Cx) -> Cx {
    let mut acc = Cx { re: 0.0, im: 0.0 };
    for &c in coeffs.iter().rev() {
        acc = acc.mul(x);
        acc.re += c;
    }
    acc
}

/// Durand-Kerner root finder for monic polynomials; None when the iteration
/// fails to converge tightly enough to trust.
fn numeric_roots(coeffs: &[f64]) -> Option<Vec<Cx>> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Some(vec![]);
    }
    let seed = Cx { re: 0.4, im: 0.9 };
    let mut roots = Vec::with_capacity(n);
    let mut acc = Cx { re: 1.0, im: 0.0 };
    for _ in 0..n {
        acc = acc.mul(seed);
        roots.push(acc);
    }
    for _ in 0..2000 {
        let mut largest = 0.0f64;
        for k in 0..n {
            let mut denom = Cx { re: 1.0, im: 0.0 };
            for j in 0..n {
                if j != k {
                    denom = denom.mul(roots[k].sub(roots[j]));
                }
            }
            let step = eval_cx(coeffs, roots[k]).div(denom);
            roots[k] = roots[k].sub(step);
            largest = largest.max(step.abs());
        }
        if largest < 1e-13 {
            break;
        }
    }
    let scale = coeffs.iter().fold(1.0f64, |m, c| m.max(c.abs()));
    for r in &roots {
        if eval_cx(coeffs, *r).abs() > 1e-7 * scale {
            return None;
        }
    }
    Some(roots)
}

fn rat_to_f64(x: &Rat) -> f64 {
    let num: f64 = x.numer().to_string().parse().unwrap();
    let den: f64 = x.denom().to_string().parse().unwrap();
    num / den
}

fn poly_at_matrix(p: &RatPoly, m: &RatMatrix) -> RatMatrix {
    let n = m.rows();
    let mut acc = RatMatrix::zero(n, n);
    let mut power = RatMatrix::identity(n);
    for c in p.coeffs() {
        acc = acc.add(&power.scale(c)).unwrap();
        power = power.mul(m).unwrap();
    }
    acc
}

#[test]
fn acceptance_7_property_suites() {
    let started = Instant::now();

    // Cayley-Hamilton on random small integer matrices
    let mut rng = StdRng::seed_from_u64(7001);
    for _ in 0..200 {
        let n = rng.gen_range(1..=4usize);
        let m = RatMatrix::from_fn(n, n, |_, _| int(rng.gen_range(-5..=5)));
        let p = m.char_poly().unwrap();
        assert_eq!(poly_at_matrix(&p, &m), RatMatrix::zero(n, n), "Cayley-Hamilton");
    }

    // Smith normal form identities
    let mut rng = StdRng::seed_from_u64(7002);
    for _ in 0..200 {
        let rows = rng.gen_range(1..=4usize);
        let cols = rng.gen_range(1..=5usize);
        let entries: Vec<BigInt> = (0..rows * cols)
            .map(|_| BigInt::from(rng.gen_range(-9i64..=9)))
            .collect();
        let a = IntMatrix::new(rows, cols, entries).unwrap();
        let snf = smith_normal_form(&a);
        assert_eq!(snf.u.mul(&a).unwrap().mul(&snf.v).unwrap(), snf.d);
        assert_eq!(snf.u.det().unwrap().abs(), BigInt::from(1));
        assert_eq!(snf.v.det().unwrap().abs(), BigInt::from(1));
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative() && !w[1].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    // Sturm counts against constructed integer roots
    let mut rng = StdRng::seed_from_u64(7003);
    for _ in 0..300 {
        let count = rng.gen_range(1..=5usize);
        let roots: Vec<i64> = (0..count).map(|_| rng.gen_range(-6i64..=6)).collect();
        let mut p = RatPoly::one();
        for &r in &roots {
            p = p.mul(&RatPoly::linear_root(int(r)));
        }
        let a = rng.gen_range(-8i64..=6);
        let b = rng.gen_range(a + 1..=8);
        let expected = {
            let mut distinct: Vec<i64> = roots.clone();
            distinct.sort_unstable();
            distinct.dedup();
            distinct.into_iter().filter(|r| a < *r && *r <= b).count()
        };
        assert_eq!(
            sturm_count(&p, &int(a), &int(b)).unwrap(),
            expected,
            "roots {roots:?} in ({a}, {b}]"
        );
    }

    // spectral classifier against the numeric companion oracle
    let mut rng = StdRng::seed_from_u64(7004);
    let mut used = 0;
    let mut attempts = 0;
    while used < 500 {
        attempts += 1;
        assert!(attempts < 100_000, "oracle sampling starved");
        let n = rng.gen_range(1..=4usize);
        let m = RatMatrix::from_fn(n, n, |_, _| int(rng.gen_range(-5..=5)));
        if !m.is_invertible() {
            continue;
        }
        let p = m.char_poly().unwrap();
        let coeffs: Vec<f64> = p.coeffs().iter().map(rat_to_f64).collect();
        let Some(roots) = numeric_roots(&coeffs) else {
            continue;
        };
        let moduli: Vec<f64> = roots.iter().map(|r| r.abs()).collect();
        if moduli.iter().any(|m| (m - 1.0).abs() < 1e-6) {
            continue;
        }
        let all_outside = moduli.iter().all(|&m| m > 1.0);
        assert_eq!(
            schur_cohn_all_inside(&p.reciprocal()).unwrap(),
            all_outside,
            "matrix {m:?}"
        );
        assert_eq!(unit_circle_root_count(&p).unwrap(), 0, "matrix {m:?}");
        let map = AffineMap::pure_linear(m).unwrap();
        let s = classify_spectrum(&map).unwrap();
        assert!(s.hyperbolic);
        assert_eq!(s.expanding, all_outside);
        used += 1;
    }

    // orbit-equivalence relation laws on a rational sample
    let g = verify::corpus_group(verify::KLEIN_JSON).unwrap();
    let mut rng = StdRng::seed_from_u64(7005);
    let mut points: Vec<Vec<Rat>> = Vec::new();
    for _ in 0..8 {
        let p = vec![
            rat(rng.gen_range(-8..8), rng.gen_range(1..5)),
            rat(rng.gen_range(-8..8), rng.gen_range(1..5)),
        ];
        let mover = g
            .element_to_map(&GroupElement {
                lattice_part: z(&[rng.gen_range(-2..=2), rng.gen_range(-2..=2)]),
                holonomy_index: rng.gen_range(0..2),
            })
            .unwrap();
        points.push(mover.apply(&p).unwrap());
        points.push(p);
    }
    for x in &points {
        assert!(g.orbit_equal(x, x).unwrap().is_some());
        for y in &points {
            assert_eq!(
                g.orbit_equal(x, y).unwrap().is_some(),
                g.orbit_equal(y, x).unwrap().is_some()
            );
            for zz in &points {
                if g.orbit_equal(x, y).unwrap().is_some() && g.orbit_equal(y, zz).unwrap().is_some()
                {
                    assert!(g.orbit_equal(x, zz).unwrap().is_some());
                }
            }
        }
    }

    // translation invariance of the classifier
    let mut rng = StdRng::seed_from_u64(7006);
    for _ in 0..100 {
        let n = rng.gen_range(1..=3usize);
        let m = RatMatrix::from_fn(n, n, |_, _| int(rng.gen_range(-4..=4)));
        if !m.is_invertible() {
            continue;
        }
        let t: Vec<Rat> = (0..n).map(|_| rat(rng.gen_range(-9..9), rng.gen_range(1..6))).collect();
        let plain = AffineMap::pure_linear(m.clone()).unwrap();
        let moved = AffineMap::new(t, m).unwrap();
        assert_eq!(
            classify_spectrum(&plain).unwrap(),
            classify_spectrum(&moved).unwrap()
        );
    }

    // holonomy image check on 100 random conjugation endomorphisms
    let mut rng = StdRng::seed_from_u64(7007);
    let groups = [
        (verify::corpus_group(verify::KLEIN_JSON).unwrap(), verify::corpus_map(verify::KLEIN_ALPHA_JSON).unwrap()),
        (verify::corpus_group(verify::DIM4_JSON).unwrap(), verify::corpus_map(verify::DIM4_ALPHA_JSON).unwrap()),
    ];
    let mut done = 0;
    while done < 100 {
        for (group, base) in &groups {
            let mut word = AffineMap::identity(group.dim());
            let gens = group.generating_maps();
            for _ in 0..rng.gen_range(1..=4) {
                let pick = &gens[rng.gen_range(0..gens.len())];
                word = if rng.gen_bool(0.5) {
                    word.compose(pick).unwrap()
                } else {
                    word.compose(&pick.inverse().unwrap()).unwrap()
                };
            }
            let alpha = if rng.gen_bool(0.5) {
                word.compose(base).unwrap()
            } else {
                word
            };
            assert!(conjugation_endo(group, &alpha).unwrap().induces);
            assert!(holonomy_image_check(group, &alpha).unwrap());
            done += 1;
        }
    }

    finish(
        "acceptance 7 (property suites)",
        started,
        Duration::from_secs(300),
    );
}
