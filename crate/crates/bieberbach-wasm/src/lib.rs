//! Browser bindings for a little flat-manifold playground: paste or pick a
//! crystallographic group and an affine map, then classify the map, test
//! whether it descends to the manifold, and hunt for well-definedness
//! failures of candidate point maps. All arithmetic stays exact.

use serde_json::json;
use wasm_bindgen::prelude::*;

use bieberbach::endo::{classify_spectrum, conjugation_endo, fixed_point, well_defined_witness};
use bieberbach::group::{build_group, BuildOptions, CrystGroup};
use bieberbach::io;
use bieberbach::rat::{int, rat, Rat};

fn parse_group(group_json: &str) -> Result<CrystGroup, bieberbach::Error> {
    let data = io::group_data_from_json(group_json)?;
    build_group(
        data.dimension,
        data.lattice,
        &data.generators,
        &BuildOptions::default(),
    )
}

fn render(result: Result<serde_json::Value, bieberbach::Error>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

/// Spectral classification plus fixed-point data for an affine map given as
/// JSON `{"translation": [...], "linear": [[...]]}`.
#[wasm_bindgen]
pub fn classify_map(map_json: &str) -> String {
    render((|| {
        let m = io::affine_map_from_json(map_json)?;
        let s = classify_spectrum(&m)?;
        let fp = fixed_point(&m)?;
        let mut v = io::spectral_class_to_value(&s);
        v["fixed_point"] = io::fixed_point_to_value(&fp);
        Ok(v)
    })())
}

/// Does conjugation by the map send the group into itself? Reports the
/// status flags and the generator images.
#[wasm_bindgen]
pub fn check_endo(group_json: &str, map_json: &str) -> String {
    render((|| {
        let g = parse_group(group_json)?;
        let m = io::affine_map_from_json(map_json)?;
        let st = conjugation_endo(&g, &m)?;
        let mut v = io::endo_status_to_value(&st);
        v["generator_names"] = json!(g.generator_names());
        v["holonomy_order"] = json!(g.holonomy_order());
        Ok(v)
    })())
}

/// Search a coordinate grid (denominators like "2,3,4,6") for a pair
/// (point, group element) proving that the point map is not well defined on
/// orbits.
#[wasm_bindgen]
pub fn witness_search(
    group_json: &str,
    map_json: &str,
    denominators: &str,
    depth: usize,
) -> String {
    render((|| {
        let g = parse_group(group_json)?;
        let m = io::affine_map_from_json(map_json)?;
        let mut values: Vec<Rat> = vec![int(0)];
        for part in denominators.split(',') {
            let d: i64 = part
                .trim()
                .parse()
                .map_err(|_| bieberbach::Error::Parse(format!("invalid denominator {part:?}")))?;
            if d < 2 {
                return Err(bieberbach::Error::Parse(
                    "denominators must be at least 2".into(),
                ));
            }
            for p in 1..d {
                let v = rat(p, d);
                if !values.contains(&v) {
                    values.push(v);
                }
            }
        }
        let mut samples: Vec<Vec<Rat>> = vec![vec![]];
        for _ in 0..g.dim() {
            let mut next = Vec::with_capacity(samples.len() * values.len());
            for s in &samples {
                for v in &values {
                    let mut q = s.clone();
                    q.push(v.clone());
                    next.push(q);
                }
            }
            samples = next;
        }
        let w = well_defined_witness(&g, &m, &samples, depth)?;
        let mut v = io::witness_to_value(&w);
        v["samples_searched"] = json!(samples.len());
        Ok(v)
    })())
}

/// Bundled presets: the corpus groups and maps, keyed by name.
#[wasm_bindgen]
pub fn presets() -> String {
    json!({
        "klein": {
            "group": include_str!("../../bieberbach-cli/corpus/klein.json"),
            "map": include_str!("../../bieberbach-cli/corpus/klein_alpha.json"),
            "note": "expanding affine map of the Klein bottle",
        },
        "hantzsche_wendt": {
            "group": include_str!("../../bieberbach-cli/corpus/hantzsche_wendt.json"),
            "map": include_str!("../../bieberbach-cli/corpus/hw_point_map.json"),
            "note": "orbit map of a conjugation that is not well defined",
        },
        "dim4_anosov": {
            "group": include_str!("../../bieberbach-cli/corpus/dim4_anosov.json"),
            "map": include_str!("../../bieberbach-cli/corpus/dim4_alpha.json"),
            "note": "hyperbolic affine automorphism in dimension four",
        },
    })
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_reports_expanding() {
        let out = classify_map(include_str!("../../bieberbach-cli/corpus/klein_alpha.json"));
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["expanding"], json!(true));
        assert_eq!(v["fixed_point"]["point"], json!(["-1/4", "0"]));
    }

    #[test]
    fn check_endo_round_trips_through_json() {
        let out = check_endo(
            include_str!("../../bieberbach-cli/corpus/klein.json"),
            include_str!("../../bieberbach-cli/corpus/klein_alpha.json"),
        );
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["induces"], json!(true));
        assert_eq!(v["is_hirsch"], json!(false));
    }

    #[test]
    fn witness_search_finds_the_failure() {
        let out = witness_search(
            include_str!("../../bieberbach-cli/corpus/hantzsche_wendt.json"),
            include_str!("../../bieberbach-cli/corpus/hw_point_map.json"),
            "2,3",
            2,
        );
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["witness_found"], json!(true));
    }

    #[test]
    fn errors_come_back_as_json() {
        let out = classify_map("{ not json");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["error"].is_string());
    }
}
