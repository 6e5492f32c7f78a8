//! Command implementations.

use std::fs;
use std::path::{Path, PathBuf};

use bisfan_core::bisector::{cell_count, enumerate_cells, equivalent, genericity};
use bisfan_core::export::cone_polytope_meshes;
use bisfan_core::fanlocate::{locate, same_cone};
use bisfan_core::polytope::UnitBall;
use bisfan_core::sample::{circle_polygon, sample_generic_site, Rng};
use bisfan_core::{QVec, Rat};
use serde_json::{json, Value};

use crate::io::{genericity_json, load_vrep, off_document, signature_json, vec_json};
use crate::{CliError, FamilyOpt, Format};

/// Numerator bound for sampled sites; recorded in output headers.
pub const MAX_NUMERATOR: i64 = 1000;
const SAMPLE_TRIES: usize = 10_000;

pub fn build_ball(
    family: FamilyOpt,
    dim: Option<usize>,
    vertices: Option<&Path>,
) -> Result<UnitBall<Rat>, CliError> {
    let need_dim =
        || dim.ok_or_else(|| CliError::Usage("--dim is required for this family".into()));
    match family {
        FamilyOpt::Polygon => {
            if let Some(path) = vertices {
                let (dim, verts, _) = load_vrep(path)?;
                if dim != 2 {
                    return Err(CliError::Domain("polygon input must have dim 2".into()));
                }
                Ok(UnitBall::polygon(verts)?)
            } else {
                let two_n = need_dim()?;
                if two_n < 4 || two_n % 2 != 0 {
                    return Err(CliError::Usage(
                        "--dim for polygons is the vertex count 2n (even, at least 4)".into(),
                    ));
                }
                Ok(UnitBall::polygon(circle_polygon::<Rat>(two_n / 2, None))?)
            }
        }
        FamilyOpt::Cube => Ok(UnitBall::cube(need_dim()?)?),
        FamilyOpt::L1 => Ok(UnitBall::cross_polytope(need_dim()?)?),
        FamilyOpt::Wasserstein => Ok(UnitBall::root_polytope(need_dim()?)?),
        FamilyOpt::Vrep => {
            let path = vertices.ok_or_else(|| {
                CliError::Usage("--vertices <file> is required for --family vrep".into())
            })?;
            let (dim, verts, facets) = load_vrep(path)?;
            Ok(UnitBall::from_vrep(dim, verts, facets)?)
        }
    }
}

fn emit(out: Option<&Path>, payload: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, payload)
            .map_err(|e| CliError::Domain(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

pub fn cmd_cells(
    ball: &UnitBall<Rat>,
    family: FamilyOpt,
    site: &QVec,
    out: Option<&Path>,
    format: Format,
) -> Result<(), CliError> {
    let cells = enumerate_cells(ball, site)?;
    let report = genericity(ball, site)?;
    let mut warnings = Vec::new();
    if !report.weak_general {
        let msg = "site is not in weak general position; the bisector has full-dimensional cells";
        eprintln!("warning: {msg}");
        warnings.push(msg.to_string());
    }
    let labels = cells.labels(ball);
    let payload = match format {
        Format::Json => {
            let value = json!({
                "command": "cells",
                "family": family.name(),
                "dim": ball.dim(),
                "site": vec_json(site),
                "count": cells.len(),
                "pairs": labels,
                "genericity": genericity_json(&report),
                "indexing": ball.indexing_convention(),
                "warnings": warnings,
            });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&value).expect("serializable")
            )
        }
        Format::Csv => {
            let mut s = String::from("facet_f,facet_g\n");
            for (f, g) in &labels {
                s.push_str(&format!("{f},{g}\n"));
            }
            s
        }
        Format::Off => {
            return Err(CliError::Usage(
                "cells supports --format json or csv".into(),
            ))
        }
    };
    emit(out, &payload)
}

pub fn cmd_equiv(
    ball: &UnitBall<Rat>,
    family: FamilyOpt,
    site_a: &QVec,
    site_b: &QVec,
    out: Option<&Path>,
    format: Format,
) -> Result<(), CliError> {
    if format != Format::Json {
        return Err(CliError::Usage("equiv supports --format json".into()));
    }
    let cells_verdict = equivalent(ball, site_a, site_b)?;
    let report_a = genericity(ball, site_a)?;
    let report_b = genericity(ball, site_b)?;
    let mut notes = Vec::new();
    let both_general = report_a.general == Some(true) && report_b.general == Some(true);
    let (fan_verdict, sig_a, sig_b) = if both_general {
        let sa = locate(ball, site_a)?;
        let sb = locate(ball, site_b)?;
        (
            Some(same_cone(ball, site_a, site_b)?),
            Some(signature_json(&sa)),
            Some(signature_json(&sb)),
        )
    } else {
        notes.push("at least one site is not in general position; fan verdict omitted".to_string());
        (None, None, None)
    };
    let breach = fan_verdict.is_some_and(|f| f != cells_verdict);
    if breach {
        notes.push("INVARIANT BREACH: fan location disagrees with cell enumeration".to_string());
    }
    let value = json!({
        "command": "equiv",
        "family": family.name(),
        "dim": ball.dim(),
        "site": vec_json(site_a),
        "site_b": vec_json(site_b),
        "equivalent_cells": cells_verdict,
        "same_fan_cone": fan_verdict,
        "signature": sig_a,
        "signature_b": sig_b,
        "notes": notes,
    });
    emit(
        out,
        &format!(
            "{}\n",
            serde_json::to_string_pretty(&value).expect("serializable")
        ),
    )?;
    if breach {
        return Err(CliError::Internal(
            "fan location disagrees with cell enumeration on general-position input".into(),
        ));
    }
    Ok(())
}

struct SuiteRow {
    size: usize,
    samples: usize,
    min: usize,
    max: usize,
    mode: usize,
    expected: usize,
    matched: bool,
}

pub fn cmd_count_suite(
    family: FamilyOpt,
    dims: (usize, usize),
    samples: usize,
    seed: u64,
    out: Option<&Path>,
    format: Format,
) -> Result<(), CliError> {
    if format != Format::Csv {
        return Err(CliError::Usage("count-suite supports --format csv".into()));
    }
    if samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let (lo, hi) = dims;
    if lo > hi {
        return Err(CliError::Usage(
            "dimension range must be nondecreasing".into(),
        ));
    }
    let mut rng = Rng::new(seed);
    let mut rows = Vec::new();
    for d in lo..=hi {
        let (ball, size, expected, exact) = match family {
            FamilyOpt::Polygon => {
                let n = d;
                if n < 2 {
                    return Err(CliError::Usage(
                        "polygon sizes are half vertex counts n >= 2".into(),
                    ));
                }
                (
                    UnitBall::polygon(circle_polygon::<Rat>(n, None))?,
                    2 * n,
                    2 * n - 1,
                    true,
                )
            }
            FamilyOpt::Cube => (UnitBall::cube(d)?, d, d * d - d + 1, true),
            FamilyOpt::L1 => (
                UnitBall::cross_polytope(d)?,
                d,
                1usize << d.saturating_sub(2),
                false,
            ),
            FamilyOpt::Wasserstein => (
                UnitBall::root_polytope(d)?,
                d,
                2 * ((1usize << d.saturating_sub(2)) - 1),
                false,
            ),
            FamilyOpt::Vrep => {
                return Err(CliError::Usage(
                    "count-suite runs on the built-in families".into(),
                ))
            }
        };
        let mut counts = Vec::with_capacity(samples);
        for _ in 0..samples {
            let a = sample_generic_site(&ball, MAX_NUMERATOR, &mut rng, SAMPLE_TRIES)?;
            counts.push(cell_count(&ball, &a)?);
        }
        let min = *counts.iter().min().expect("samples > 0");
        let max = *counts.iter().max().expect("samples > 0");
        let mode = {
            let mut freq = std::collections::BTreeMap::new();
            for &c in &counts {
                *freq.entry(c).or_insert(0usize) += 1;
            }
            freq.iter()
                .max_by_key(|(_, &n)| n)
                .map(|(&c, _)| c)
                .expect("samples > 0")
        };
        let matched = if exact {
            min == expected && max == expected
        } else {
            min >= expected
        };
        rows.push(SuiteRow {
            size,
            samples,
            min,
            max,
            mode,
            expected,
            matched,
        });
    }
    let mut s = String::new();
    s.push_str("# bisfan count-suite\n");
    s.push_str(&format!(
        "# family={} dims={}..{} samples={} seed={} max-numerator={}\n",
        family.name(),
        lo,
        hi,
        samples,
        seed,
        MAX_NUMERATOR
    ));
    s.push_str("family,size,samples,min,max,mode,expected,match\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            family.name(),
            r.size,
            r.samples,
            r.min,
            r.max,
            r.mode,
            r.expected,
            r.matched
        ));
    }
    emit(out, &s)
}

pub fn cmd_export_cones(
    vertices_path: &Path,
    out: Option<&Path>,
    format: Format,
) -> Result<(), CliError> {
    let (dim, verts, facets) = load_vrep(vertices_path)?;
    if dim != 3 {
        return Err(CliError::Domain(format!(
            "cone export needs a 3-dimensional input, got dim {dim}"
        )));
    }
    let ball = UnitBall::from_vrep(dim, verts, facets)?;
    let meshes = cone_polytope_meshes(&ball)?;

    let prefix: PathBuf = out.map(Path::to_path_buf).unwrap_or_else(|| "cones".into());
    let off_path = prefix.with_extension("off");
    let json_path = prefix.with_extension("json");

    let with_off = format == Format::Off;
    let geometry: Vec<(Vec<QVec>, Vec<Vec<usize>>)> = meshes
        .iter()
        .map(|m| (m.vertices.clone(), m.faces.clone()))
        .collect();
    let (off_text, offsets) = off_document(&geometry);

    let cones: Vec<Value> = meshes
        .iter()
        .zip(&offsets)
        .map(|(m, &offset)| {
            json!({
                "facetPair": {
                    "f": ball.facet_label(m.pair.0),
                    "g": ball.facet_label(m.pair.1),
                    "fIndex": m.pair.0,
                    "gIndex": m.pair.1,
                },
                "generators": m.generators.iter().map(vec_json).collect::<Vec<_>>(),
                "vertices": m.vertices.iter().map(vec_json).collect::<Vec<_>>(),
                "faces": m.faces,
                "off_vertex_offset": if with_off { Value::from(offset) } else { Value::Null },
            })
        })
        .collect();
    let index = json!({
        "command": "export-cones",
        "family": "vrep",
        "dim": 3,
        "facet_count": ball.num_facets(),
        "indexing": ball.indexing_convention(),
        "off_file": if with_off {
            Value::String(off_path.file_name().unwrap().to_string_lossy().into_owned())
        } else {
            Value::Null
        },
        "cones": cones,
    });

    if with_off {
        fs::write(&off_path, off_text)
            .map_err(|e| CliError::Domain(format!("cannot write {}: {e}", off_path.display())))?;
    }
    fs::write(
        &json_path,
        format!(
            "{}\n",
            serde_json::to_string_pretty(&index).expect("serializable")
        ),
    )
    .map_err(|e| CliError::Domain(format!("cannot write {}: {e}", json_path.display())))?;
    eprintln!(
        "wrote {}{}",
        json_path.display(),
        if with_off {
            format!(" and {}", off_path.display())
        } else {
            String::new()
        }
    );
    Ok(())
}

/// `"lo..hi"` or a single size.
pub fn parse_dims(text: &str) -> Result<(usize, usize), CliError> {
    let parse_one = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("bad dimension {s:?}")))
    };
    match text.split_once("..") {
        Some((lo, hi)) => Ok((parse_one(lo)?, parse_one(hi)?)),
        None => {
            let d = parse_one(text)?;
            Ok((d, d))
        }
    }
}
