//! Command-line front end: exact computations with crystallographic groups
//! and affine self-maps of the flat manifolds they define.

use bieberbach_cli::verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_traits::Zero;
use serde_json::{json, Value};

use bieberbach::endo::{
    classify_spectrum, conjugation_endo, fixed_point, holonomy_image_check,
    linearize_at_fixed_point, realize_endo, well_defined_witness,
};
use bieberbach::group::{build_group, BuildOptions, CrystGroup};
use bieberbach::io;
use bieberbach::quotient::{abelianization, induced_on_quotient, quotient};
use bieberbach::rat::{format_rat, Rat};
use bieberbach::search::{obstruction_search, ObstructionCaps};
use bieberbach::{Error, Result};

#[derive(Parser)]
#[command(
    name = "bieberbach",
    version,
    about = "Exact computations with crystallographic groups and affine self-maps of flat manifolds"
)]
struct Cli {
    /// Emit a machine-readable JSON report instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Cap on the holonomy closure when building groups
    #[arg(long, global = true, default_value_t = 1024)]
    holonomy_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group file and report holonomy size, cocycle health and torsion
    Validate { group: PathBuf },
    /// Does conjugation by the map send the group into itself?
    CheckEndo { group: PathBuf, map: PathBuf },
    /// Exact spectral classification of an affine map
    Classify { map: PathBuf },
    /// Fixed points of an affine map
    FixedPoint { map: PathBuf },
    /// Are two points in the same orbit? Points as comma-separated rationals
    OrbitEq {
        group: PathBuf,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Search a sample grid for proof that a point map is not well defined on orbits
    Witness {
        group: PathBuf,
        map: PathBuf,
        /// Denominators of the sample grid coordinates
        #[arg(long, default_value = "2,3,4,6")]
        grid_denominators: String,
        /// Word-length bound for the group elements searched
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Invariant factors of the abelianization, with generator images
    Abelianize { group: PathBuf },
    /// A quotient of the abelianization: "mod:k" or "center"
    Quotient {
        group: PathBuf,
        #[arg(long)]
        quotient: String,
    },
    /// Matrix induced by the map on the chosen quotient
    Induced {
        group: PathBuf,
        map: PathBuf,
        #[arg(long)]
        quotient: String,
    },
    /// Find an affine map realizing given generator images by conjugation
    Realize { group: PathBuf, images: PathBuf },
    /// Move the unique fixed point to the origin, yielding a pure-linear map
    Linearize { group: PathBuf, map: PathBuf },
    /// Bounded search for an intertwiner between the map and linear candidates
    Obstruct {
        group: PathBuf,
        map: PathBuf,
        #[arg(long)]
        quotient: String,
        #[arg(long, default_value_t = 2)]
        bound: u32,
    },
    /// Run every recorded expectation of the bundled corpus
    PaperVerify,
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn load_group(path: &Path, cap: usize) -> Result<CrystGroup> {
    let data = io::group_data_from_json(&read_file(path)?)?;
    build_group(
        data.dimension,
        data.lattice,
        &data.generators,
        &BuildOptions { holonomy_cap: cap },
    )
}

fn load_map(path: &Path) -> Result<bieberbach::AffineMap> {
    io::affine_map_from_json(&read_file(path)?)
}

fn fmt_vec(v: &[Rat]) -> String {
    let inner: Vec<String> = v.iter().map(format_rat).collect();
    format!("({})", inner.join(", "))
}

fn fmt_matrix(m: &bieberbach::RatMatrix) -> String {
    (0..m.rows())
        .map(|r| fmt_vec(m.row(r)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn fmt_factors(factors: &[num_bigint::BigInt]) -> String {
    if factors.is_empty() {
        return "trivial".to_string();
    }
    let free = factors.iter().filter(|d| d.is_zero()).count();
    let mut parts: Vec<String> = factors
        .iter()
        .filter(|d| !d.is_zero())
        .map(|d| format!("Z_{d}"))
        .collect();
    match free {
        0 => {}
        1 => parts.push("Z".into()),
        k => parts.push(format!("Z^{k}")),
    }
    parts.join(" + ")
}

fn fmt_element(_g: &CrystGroup, e: &bieberbach::GroupElement) -> String {
    let zs: Vec<String> = e.lattice_part.iter().map(|z| z.to_string()).collect();
    format!("(z = ({}), holonomy #{})", zs.join(", "), e.holonomy_index)
}

/// Parse "2,3,4,6" into the grid values: zero plus every reduced fraction
/// with one of the listed denominators, in listed order.
fn grid_values(spec: &str) -> Result<Vec<Rat>> {
    let mut values = vec![bieberbach::rat::int(0)];
    for part in spec.split(',') {
        let d: i64 = part
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid grid denominator {part:?}")))?;
        if d < 2 {
            return Err(Error::Parse("grid denominators must be at least 2".into()));
        }
        for p in 1..d {
            let v = bieberbach::rat::rat(p, d);
            if !values.contains(&v) {
                values.push(v);
            }
        }
    }
    Ok(values)
}

fn grid_points(values: &[Rat], dim: usize) -> Vec<Vec<Rat>> {
    let mut points: Vec<Vec<Rat>> = vec![vec![]];
    for _ in 0..dim {
        let mut next = Vec::with_capacity(points.len() * values.len());
        for p in &points {
            for v in values {
                let mut q = p.clone();
                q.push(v.clone());
                next.push(q);
            }
        }
        points = next;
    }
    points
}

struct Report {
    text: String,
    json: Value,
}

fn run(cli: &Cli) -> Result<Report> {
    let cap = cli.holonomy_cap;
    match &cli.command {
        Command::Validate { group } => {
            let g = load_group(group, cap)?;
            g.verify_invariants()?;
            let torsion = g.torsion_witness()?;
            let mut text = format!(
                "dimension {}, holonomy order {}, cocycle checks pass\n",
                g.dim(),
                g.holonomy_order()
            );
            match &torsion {
                None => text.push_str("torsion-free\n"),
                Some(w) => {
                    text.push_str(&format!("torsion element found: {}\n", fmt_element(&g, w)))
                }
            }
            text.push_str("canonical form:\n");
            text.push_str(&io::group_to_json(&g));
            text.push('\n');
            Ok(Report {
                json: json!({
                    "dimension": g.dim(),
                    "holonomy_order": g.holonomy_order(),
                    "torsion_free": torsion.is_none(),
                    "torsion_witness": torsion.as_ref().map(io::group_element_to_value),
                    "canonical": io::group_to_value(&g),
                }),
                text,
            })
        }
        Command::CheckEndo { group, map } => {
            let g = load_group(group, cap)?;
            let m = load_map(map)?;
            let st = conjugation_endo(&g, &m)?;
            let holonomy_onto = if st.induces {
                Some(holonomy_image_check(&g, &m)?)
            } else {
                None
            };
            let mut text = format!(
                "induces endomorphism: {}\nautomorphism: {}\npure automorphism (zero translation, normalizes holonomy): {}\n",
                st.induces, st.is_automorphism, st.is_hirsch
            );
            if st.induces {
                text.push_str("generator images:\n");
                for (name, e) in g.generator_names().iter().zip(&st.conjugated_generators) {
                    text.push_str(&format!("  {name} -> {}\n", fmt_element(&g, e)));
                }
                text.push_str(&format!(
                    "holonomy image generates all of F: {}\n",
                    holonomy_onto.unwrap_or(false)
                ));
            }
            let mut j = io::endo_status_to_value(&st);
            j["holonomy_image_generates"] = json!(holonomy_onto);
            Ok(Report { text, json: j })
        }
        Command::Classify { map } => {
            let m = load_map(map)?;
            let s = classify_spectrum(&m)?;
            let text = format!(
                "characteristic polynomial (constant first): {}\nhas eigenvalue 1: {}\nroots on the unit circle: {}\nexpanding: {}\nhyperbolic: {}\n",
                fmt_vec(s.char_poly.coeffs()),
                s.has_eigenvalue_one,
                s.unit_circle_count,
                s.expanding,
                s.hyperbolic
            );
            Ok(Report {
                json: io::spectral_class_to_value(&s),
                text,
            })
        }
        Command::FixedPoint { map } => {
            let m = load_map(map)?;
            let f = fixed_point(&m)?;
            let text = match &f {
                bieberbach::endo::FixedPointOutcome::Unique(x) => {
                    format!("unique fixed point: {}\n", fmt_vec(x))
                }
                bieberbach::endo::FixedPointOutcome::EigenvalueOne {
                    solution: Some((p, k)),
                } => {
                    format!(
                        "eigenvalue 1 present; fixed set is {} + span of {} vector(s)\n",
                        fmt_vec(p),
                        k.len()
                    )
                }
                bieberbach::endo::FixedPointOutcome::EigenvalueOne { solution: None } => {
                    "eigenvalue 1 present; no fixed points\n".to_string()
                }
            };
            Ok(Report {
                json: io::fixed_point_to_value(&f),
                text,
            })
        }
        Command::OrbitEq { group, x, y } => {
            let g = load_group(group, cap)?;
            let xp = io::parse_point(x)?;
            let yp = io::parse_point(y)?;
            let w = g.orbit_equal(&xp, &yp)?;
            let text = match &w {
                Some(e) => format!("same orbit; witness {}\n", fmt_element(&g, e)),
                None => "different orbits\n".to_string(),
            };
            Ok(Report {
                json: json!({
                    "same_orbit": w.is_some(),
                    "witness": w.as_ref().map(io::group_element_to_value),
                }),
                text,
            })
        }
        Command::Witness {
            group,
            map,
            grid_denominators,
            depth,
        } => {
            let g = load_group(group, cap)?;
            let m = load_map(map)?;
            let values = grid_values(grid_denominators)?;
            let samples = grid_points(&values, g.dim());
            let w = well_defined_witness(&g, &m, &samples, *depth)?;
            let text = match &w {
                None => format!(
                    "no witness found on {} sample points at depth {depth}\n",
                    samples.len()
                ),
                Some(w) => format!(
                    "not well defined: point n = {}, gamma = {}\n  gamma.n = {}\n  phi(n) = {}\n  phi(gamma.n) = {} lies outside the orbit of phi(n)\n",
                    fmt_vec(&w.point),
                    fmt_element(&g, &w.gamma),
                    fmt_vec(&w.moved_point),
                    fmt_vec(&w.image_of_point),
                    fmt_vec(&w.image_of_moved)
                ),
            };
            let mut j = io::witness_to_value(&w);
            j["samples_searched"] = json!(samples.len());
            j["depth"] = json!(depth);
            Ok(Report { text, json: j })
        }
        Command::Abelianize { group } => {
            let g = load_group(group, cap)?;
            let ab = abelianization(&g)?;
            let images = ab.generator_images()?;
            let mut text = format!("abelianization: {}\n", fmt_factors(ab.invariant_factors()));
            for (name, img) in g.generator_names().iter().zip(&images) {
                let coords: Vec<String> = img.iter().map(|c| c.to_string()).collect();
                text.push_str(&format!("  {name} -> ({})\n", coords.join(", ")));
            }
            Ok(Report {
                json: io::fin_ab_group_to_value(&ab)?,
                text,
            })
        }
        Command::Quotient {
            group,
            quotient: spec,
        } => {
            let g = load_group(group, cap)?;
            let spec = io::parse_quotient_spec(spec)?;
            let q = quotient(&g, &spec)?;
            let text = format!(
                "quotient ({spec}): {}\n",
                fmt_factors(q.invariant_factors())
            );
            Ok(Report {
                json: io::fin_ab_group_to_value(&q)?,
                text,
            })
        }
        Command::Induced {
            group,
            map,
            quotient: spec,
        } => {
            let g = load_group(group, cap)?;
            let m = load_map(map)?;
            let spec = io::parse_quotient_spec(spec)?;
            let qm = induced_on_quotient(&g, &m, &spec)?;
            let mut text = format!(
                "quotient ({spec}): {}\ninduced matrix (acting on canonical coordinates):\n",
                fmt_factors(qm.quotient.invariant_factors())
            );
            for row in &qm.matrix {
                let entries: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                text.push_str(&format!("  [{}]\n", entries.join(", ")));
            }
            Ok(Report {
                json: io::quotient_map_to_value(&qm)?,
                text,
            })
        }
        Command::Realize { group, images } => {
            let g = load_group(group, cap)?;
            let imgs = io::images_from_json(&read_file(images)?)?;
            match realize_endo(&g, &imgs) {
                Ok(alpha) => Ok(Report {
                    text: format!(
                        "realized by conjugation with:\n  translation {}\n  linear {}\n",
                        fmt_vec(&alpha.translation),
                        fmt_matrix(&alpha.linear)
                    ),
                    json: json!({
                        "realizable": true,
                        "map": io::affine_map_to_value(&alpha),
                    }),
                }),
                Err(Error::NotRealizable(reason)) => Ok(Report {
                    text: format!("not realizable: {reason}\n"),
                    json: json!({ "realizable": false, "reason": reason }),
                }),
                Err(e) => Err(e),
            }
        }
        Command::Linearize { group, map } => {
            let g = load_group(group, cap)?;
            let m = load_map(map)?;
            let (shifted, delta) = linearize_at_fixed_point(&g, &m)?;
            let text = format!(
                "pure linear part: {}\nconjugated group:\n{}\n",
                fmt_matrix(&delta),
                io::group_to_json(&shifted)
            );
            Ok(Report {
                json: json!({
                    "linear": io::rat_matrix_to_json_value(&delta),
                    "conjugated_group": io::group_to_value(&shifted),
                }),
                text,
            })
        }
        Command::Obstruct {
            group,
            map,
            quotient: spec,
            bound,
        } => {
            let g = load_group(group, cap)?;
            let m = load_map(map)?;
            let spec = io::parse_quotient_spec(spec)?;
            let report = obstruction_search(&g, &m, &spec, *bound, &ObstructionCaps::default())?;
            let b = &report.search_bounds;
            let mut text = format!(
                "searched {} candidates (coefficient bound {}) against {} quotient automorphisms on {} of order {}\n",
                b.candidates_enumerated,
                b.candidate_bound,
                b.automorphisms_searched,
                fmt_factors(&b.quotient_factors),
                b.quotient_order
            );
            match &report.intertwiner_found {
                None => text.push_str(
                    "no intertwiner within these bounds: no searched candidate matches the map on this quotient\n",
                ),
                Some(i) => {
                    text.push_str(&format!(
                        "intertwiner found: candidate {}\n",
                        fmt_matrix(&i.candidate)
                    ));
                }
            }
            Ok(Report {
                json: io::obstruction_report_to_value(&report),
                text,
            })
        }
        Command::PaperVerify => {
            let results = verify::run_all();
            let mut text = String::new();
            let mut all_pass = true;
            for r in &results {
                if r.pass {
                    text.push_str(&format!("PASS  {}\n", r.name));
                } else {
                    all_pass = false;
                    text.push_str(&format!(
                        "FAIL  {}: {}\n",
                        r.name,
                        r.detail.as_deref().unwrap_or("")
                    ));
                }
            }
            text.push_str(&format!(
                "{} of {} checks passed\n",
                results.iter().filter(|r| r.pass).count(),
                results.len()
            ));
            let json = json!({
                "all_pass": all_pass,
                "checks": results.iter().map(|r| json!({
                    "name": r.name,
                    "pass": r.pass,
                    "detail": r.detail,
                })).collect::<Vec<_>>(),
            });
            if !all_pass {
                let rendered = if cli.json {
                    serde_json::to_string_pretty(&json).expect("serializable")
                } else {
                    text
                };
                println!("{rendered}");
                return Err(Error::Internal("verification corpus has failures".into()));
            }
            Ok(Report { text, json })
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Internal(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("serializable")
                );
            } else {
                print!("{}", report.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
