//! JSON formats for groups, affine maps, generator-image lists and reports.
//!
//! Rationals travel as strings "p/q" in lowest terms (or "p" for integers);
//! readers also accept plain JSON integers. Group files look like
//! `{"dimension": n, "lattice": [[..]], "generators": [{"translation": [..],
//! "linear": [[..]]}]}` with the lattice optional.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::affine::AffineMap;
use crate::endo::{EndoStatus, FixedPointOutcome, HirschCheck, SpectralClass, Witness};
use crate::error::{Error, Result};
use crate::group::{CrystGroup, GroupElement};
use crate::matrix::RatMatrix;
use crate::poly::RatPoly;
use crate::quotient::{FinAbGroup, QuotientMap, QuotientSpec};
use crate::rat::{format_rat, parse_rat, Rat};
use crate::search::ObstructionReport;

fn rat_from_value(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(crate::rat::int(i))
            } else {
                Err(Error::Parse(format!(
                    "non-integer number {n}; write rationals as \"p/q\" strings"
                )))
            }
        }
        other => Err(Error::Parse(format!("expected rational, found {other}"))),
    }
}

fn rat_vec_from_value(v: &Value) -> Result<Vec<Rat>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("expected an array of rationals".into()))?
        .iter()
        .map(rat_from_value)
        .collect()
}

fn rat_matrix_from_value(v: &Value) -> Result<RatMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected an array of matrix rows".into()))?;
    if rows.is_empty() {
        return Err(Error::Parse("matrix with no rows".into()));
    }
    let parsed: Vec<Vec<Rat>> = rows.iter().map(rat_vec_from_value).collect::<Result<_>>()?;
    let cols = parsed[0].len();
    if parsed.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse("ragged matrix rows".into()));
    }
    RatMatrix::new(parsed.len(), cols, parsed.into_iter().flatten().collect())
}

fn rat_to_value(x: &Rat) -> Value {
    Value::String(format_rat(x))
}

fn rat_vec_to_value(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_to_value).collect())
}

fn rat_matrix_to_value(m: &RatMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| rat_vec_to_value(m.row(r)))
            .collect(),
    )
}

fn bigint_to_value(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(i) => json!(i),
        Err(_) => Value::String(x.to_string()),
    }
}

fn bigint_from_value(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("non-integer {n}"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid integer {s:?}"))),
        other => Err(Error::Parse(format!("expected integer, found {other}"))),
    }
}

fn int_vec_to_value(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(bigint_to_value).collect())
}

fn int_matrix_rows_to_value(m: &[Vec<BigInt>]) -> Value {
    Value::Array(m.iter().map(|r| int_vec_to_value(r)).collect())
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

pub fn affine_map_from_value(v: &Value) -> Result<AffineMap> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("expected a map object".into()))?;
    let translation = rat_vec_from_value(get(obj, "translation")?)?;
    let linear = rat_matrix_from_value(get(obj, "linear")?)?;
    AffineMap::new(translation, linear)
}

pub fn affine_map_from_json(text: &str) -> Result<AffineMap> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    affine_map_from_value(&v)
}

pub fn affine_map_to_value(m: &AffineMap) -> Value {
    json!({
        "translation": rat_vec_to_value(&m.translation),
        "linear": rat_matrix_to_value(&m.linear),
    })
}

/// Parsed but not yet closed group data.
pub struct GroupData {
    pub dimension: usize,
    pub lattice: Option<RatMatrix>,
    pub generators: Vec<AffineMap>,
}

pub fn group_data_from_json(text: &str) -> Result<GroupData> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("expected a group object".into()))?;
    let dimension = get(obj, "dimension")?
        .as_u64()
        .ok_or_else(|| Error::Parse("dimension must be a positive integer".into()))?
        as usize;
    if dimension == 0 {
        return Err(Error::Parse("dimension must be positive".into()));
    }
    let lattice = match obj.get("lattice") {
        None | Some(Value::Null) => None,
        Some(v) => Some(rat_matrix_from_value(v)?),
    };
    let generators = get(obj, "generators")?
        .as_array()
        .ok_or_else(|| Error::Parse("generators must be an array".into()))?
        .iter()
        .map(affine_map_from_value)
        .collect::<Result<_>>()?;
    Ok(GroupData {
        dimension,
        lattice,
        generators,
    })
}

/// Canonical serialization: the lattice plus the holonomy representatives,
/// which regenerate the group exactly.
pub fn group_to_value(g: &CrystGroup) -> Value {
    let gens: Vec<Value> = (1..g.holonomy_order())
        .map(|i| affine_map_to_value(&g.rep_map(i)))
        .collect();
    json!({
        "dimension": g.dim(),
        "lattice": rat_matrix_to_value(g.lattice()),
        "generators": gens,
    })
}

pub fn group_to_json(g: &CrystGroup) -> String {
    serde_json::to_string_pretty(&group_to_value(g)).expect("serializable")
}

pub fn group_element_to_value(e: &GroupElement) -> Value {
    json!({
        "lattice_part": int_vec_to_value(&e.lattice_part),
        "holonomy_index": e.holonomy_index,
    })
}

pub fn group_element_from_value(v: &Value) -> Result<GroupElement> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("expected a group element object".into()))?;
    let lattice_part = get(obj, "lattice_part")?
        .as_array()
        .ok_or_else(|| Error::Parse("lattice_part must be an array".into()))?
        .iter()
        .map(bigint_from_value)
        .collect::<Result<_>>()?;
    let holonomy_index = get(obj, "holonomy_index")?
        .as_u64()
        .ok_or_else(|| Error::Parse("holonomy_index must be a non-negative integer".into()))?
        as usize;
    Ok(GroupElement {
        lattice_part,
        holonomy_index,
    })
}

/// Generator-image list for realization: `{"images": [element, ...]}` with
/// one element per canonical generator.
pub fn images_from_json(text: &str) -> Result<Vec<GroupElement>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("expected an object with an \"images\" field".into()))?;
    get(obj, "images")?
        .as_array()
        .ok_or_else(|| Error::Parse("images must be an array".into()))?
        .iter()
        .map(group_element_from_value)
        .collect()
}

pub fn poly_to_value(p: &RatPoly) -> Value {
    rat_vec_to_value(p.coeffs())
}

pub fn endo_status_to_value(s: &EndoStatus) -> Value {
    json!({
        "induces": s.induces,
        "is_automorphism": s.is_automorphism,
        "is_hirsch": s.is_hirsch,
        "conjugated_generators": s
            .conjugated_generators
            .iter()
            .map(group_element_to_value)
            .collect::<Vec<_>>(),
    })
}

pub fn hirsch_check_to_value(h: &HirschCheck) -> Value {
    json!({
        "passes": h.passes,
        "conjugates_into_group": h.conjugates_into_group,
        "normalizes_holonomy": h.normalizes_holonomy,
        "failing_generator": h.failing_generator,
    })
}

pub fn spectral_class_to_value(s: &SpectralClass) -> Value {
    json!({
        "has_eigenvalue_one": s.has_eigenvalue_one,
        "unit_circle_count": s.unit_circle_count,
        "expanding": s.expanding,
        "hyperbolic": s.hyperbolic,
        "char_poly": poly_to_value(&s.char_poly),
    })
}

pub fn fixed_point_to_value(f: &FixedPointOutcome) -> Value {
    match f {
        FixedPointOutcome::Unique(x) => json!({
            "unique": true,
            "point": rat_vec_to_value(x),
        }),
        FixedPointOutcome::EigenvalueOne { solution } => match solution {
            Some((particular, kernel)) => json!({
                "unique": false,
                "eigenvalue_one": true,
                "particular": rat_vec_to_value(particular),
                "kernel": kernel.iter().map(|v| rat_vec_to_value(v)).collect::<Vec<_>>(),
            }),
            None => json!({
                "unique": false,
                "eigenvalue_one": true,
                "fixed_points": "none",
            }),
        },
    }
}

pub fn witness_to_value(w: &Option<Witness>) -> Value {
    match w {
        None => json!({ "witness_found": false }),
        Some(w) => json!({
            "witness_found": true,
            "point": rat_vec_to_value(&w.point),
            "gamma": group_element_to_value(&w.gamma),
            "moved_point": rat_vec_to_value(&w.moved_point),
            "image_of_point": rat_vec_to_value(&w.image_of_point),
            "image_of_moved": rat_vec_to_value(&w.image_of_moved),
        }),
    }
}

pub fn fin_ab_group_to_value(q: &FinAbGroup) -> Result<Value> {
    Ok(json!({
        "invariant_factors": int_vec_to_value(q.invariant_factors()),
        "generator_images": q
            .generator_images()?
            .iter()
            .map(|v| int_vec_to_value(v))
            .collect::<Vec<_>>(),
    }))
}

pub fn quotient_map_to_value(m: &QuotientMap) -> Result<Value> {
    Ok(json!({
        "quotient": fin_ab_group_to_value(&m.quotient)?,
        "matrix": int_matrix_rows_to_value(&m.matrix),
    }))
}

pub fn obstruction_report_to_value(r: &ObstructionReport) -> Value {
    json!({
        "candidates_tested": r.candidates_tested,
        "intertwiner_found": r.intertwiner_found.as_ref().map(|i| json!({
            "candidate": rat_matrix_to_value(&i.candidate),
            "quotient_automorphism": int_matrix_rows_to_value(&i.quotient_automorphism),
        })),
        "search_bounds": {
            "candidate_bound": r.search_bounds.candidate_bound,
            "quotient_spec": r.search_bounds.quotient_spec,
            "quotient_factors": int_vec_to_value(&r.search_bounds.quotient_factors),
            "quotient_order": bigint_to_value(&r.search_bounds.quotient_order),
            "automorphisms_searched": r.search_bounds.automorphisms_searched,
            "candidates_enumerated": r.search_bounds.candidates_enumerated,
        },
    })
}

pub fn rat_matrix_to_json_value(m: &RatMatrix) -> Value {
    rat_matrix_to_value(m)
}

pub fn parse_quotient_spec(s: &str) -> Result<QuotientSpec> {
    match s {
        "ab" | "abelianization" => Ok(QuotientSpec::Abelianization),
        "center" | "centre" => Ok(QuotientSpec::Center),
        other => {
            let rest = other
                .strip_prefix("mod:")
                .or_else(|| other.strip_prefix("mod"))
                .ok_or_else(|| {
                    Error::Parse(format!(
                        "unknown quotient {other:?}; use \"mod:k\" or \"center\""
                    ))
                })?;
            let k: u64 = rest
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid modulus in {other:?}")))?;
            Ok(QuotientSpec::ModK(k))
        }
    }
}

/// Points like "1/3,1/3,1/3".
pub fn parse_point(s: &str) -> Result<Vec<Rat>> {
    s.split(',').map(parse_rat).collect()
}
