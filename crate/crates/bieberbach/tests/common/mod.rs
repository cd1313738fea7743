//! Corpus groups and maps shared by the integration suites.

use bieberbach::group::{build_group, BuildOptions, CrystGroup};
use bieberbach::rat::{int, rat};
use bieberbach::{AffineMap, RatMatrix};

pub fn klein() -> CrystGroup {
    build_group(2, None, &klein_generators(), &BuildOptions::default()).unwrap()
}

pub fn klein_generators() -> Vec<AffineMap> {
    vec![
        AffineMap::translation_by(vec![int(1), int(0)]),
        AffineMap::new(
            vec![int(0), rat(1, 2)],
            RatMatrix::from_i64_rows(&[&[-1, 0], &[0, 1]]),
        )
        .unwrap(),
    ]
}

pub fn klein_alpha() -> AffineMap {
    AffineMap::new(
        vec![rat(1, 2), int(0)],
        RatMatrix::from_i64_rows(&[&[3, 0], &[0, 3]]),
    )
    .unwrap()
}

pub fn hantzsche_wendt() -> CrystGroup {
    build_group(3, None, &hw_generators(), &BuildOptions::default()).unwrap()
}

pub fn hw_generators() -> Vec<AffineMap> {
    vec![
        AffineMap::new(
            vec![rat(1, 2), int(0), int(0)],
            RatMatrix::from_i64_rows(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
        )
        .unwrap(),
        AffineMap::new(
            vec![int(0), rat(1, 2), rat(1, 2)],
            RatMatrix::from_i64_rows(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, -1]]),
        )
        .unwrap(),
    ]
}

pub fn hw_conjugator() -> AffineMap {
    AffineMap::new(
        vec![rat(1, 4), int(0), int(0)],
        RatMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]),
    )
    .unwrap()
}

pub fn dim4() -> CrystGroup {
    build_group(4, None, &dim4_generators(), &BuildOptions::default()).unwrap()
}

pub fn dim4_generators() -> Vec<AffineMap> {
    let mut gens: Vec<AffineMap> = (0..4)
        .map(|i| {
            AffineMap::translation_by((0..4).map(|j| if i == j { int(1) } else { int(0) }).collect())
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
    gens
}

pub fn dim4_alpha() -> AffineMap {
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
