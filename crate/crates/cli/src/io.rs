//! File formats: exact-rational JSON, V-representation input, OFF meshes.

use std::fs;
use std::path::Path;

use bisfan_core::{BigInt, QVec, Rat, Scalar};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::CliError;

/// `"p/q"` or `"p"`.
pub fn rat_string(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn vec_json(v: &QVec) -> Value {
    Value::Array(v.iter().map(|c| Value::String(rat_string(c))).collect())
}

/// Comma-separated exact rationals; decimals are rejected, not rounded.
pub fn parse_site(text: &str) -> Result<QVec, CliError> {
    let coords = text
        .split(',')
        .map(|part| {
            Rat::parse(part).ok_or_else(|| {
                CliError::Usage(format!(
                    "cannot parse coordinate {part:?}: expected an integer or fraction p/q"
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if coords.is_empty() {
        return Err(CliError::Usage("empty site".into()));
    }
    Ok(QVec::new(coords))
}

/// `(dim, vertices, optional facet index lists)`.
pub type VrepData = (usize, Vec<QVec>, Option<Vec<Vec<usize>>>);

/// V-representation JSON:
/// `{ "dim": d, "vertices": [["p/q", ...], ...], "facets": [[i, ...], ...] }`
/// with `facets` optional.
pub fn load_vrep(path: &Path) -> Result<VrepData, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{} is not valid JSON: {e}", path.display())))?;
    let dim = value
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| CliError::Usage("missing integer field \"dim\"".into()))?
        as usize;
    let raw_vertices = value
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Usage("missing array field \"vertices\"".into()))?;
    let mut vertices = Vec::with_capacity(raw_vertices.len());
    for (i, row) in raw_vertices.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| CliError::Usage(format!("vertex {i} is not an array")))?;
        let coords = row
            .iter()
            .map(|c| match c {
                Value::String(s) => Rat::parse(s),
                Value::Number(n) => n.as_i64().map(Rat::from_int),
                _ => None,
            })
            .map(|c| {
                c.ok_or_else(|| {
                    CliError::Usage(format!(
                        "vertex {i} holds a non-rational entry (decimals are rejected)"
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        vertices.push(QVec::new(coords));
    }
    let facets = match value.get("facets") {
        None | Some(Value::Null) => None,
        Some(Value::Array(rows)) => {
            let mut lists = Vec::with_capacity(rows.len());
            for (i, row) in rows.iter().enumerate() {
                let row = row
                    .as_array()
                    .ok_or_else(|| CliError::Usage(format!("facet {i} is not an array")))?;
                let list = row
                    .iter()
                    .map(|v| v.as_u64().map(|u| u as usize))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| {
                        CliError::Usage(format!("facet {i} holds a non-integer index"))
                    })?;
                lists.push(list);
            }
            Some(lists)
        }
        Some(_) => return Err(CliError::Usage("field \"facets\" must be an array".into())),
    };
    Ok((dim, vertices, facets))
}

/// Exact decimal expansion of `r` rounded to 12 significant digits.
/// No floating point is involved.
pub fn decimal_sig12(r: &Rat) -> String {
    const DIGITS: i64 = 12;
    if r.is_zero() {
        return "0".into();
    }
    let neg = r.is_negative();
    let num = r.numer().abs();
    let den = r.denom().clone();
    let ten = BigInt::from(10);

    // Exponent e with 10^e <= num/den < 10^{e+1}.
    let pow = |k: i64| -> BigInt { ten.clone().pow(k as u32) };
    let at_least = |e: i64| -> bool {
        if e >= 0 {
            num >= &den * pow(e)
        } else {
            &num * pow(-e) >= den
        }
    };
    let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
    while !at_least(e) {
        e -= 1;
    }
    while at_least(e + 1) {
        e += 1;
    }

    // q = round(num/den * 10^(11-e)), a 12-digit integer (13 on carry).
    let shift = DIGITS - 1 - e;
    let (a, b) = if shift >= 0 {
        (&num * pow(shift), den)
    } else {
        (num, &den * pow(-shift))
    };
    let mut q = (BigInt::from(2) * a + &b) / (BigInt::from(2) * &b);
    if q == pow(DIGITS) {
        q /= &ten;
        e += 1;
    }
    let digits = q.to_string();
    debug_assert_eq!(digits.len() as i64, DIGITS);

    let body = if e < 0 {
        let frac = digits.trim_end_matches('0');
        format!("0.{}{}", "0".repeat((-e - 1) as usize), frac)
    } else if e >= DIGITS - 1 {
        format!("{}{}", digits, "0".repeat((e - (DIGITS - 1)) as usize))
    } else {
        let (int_part, frac_part) = digits.split_at(e as usize + 1);
        let frac = frac_part.trim_end_matches('0');
        if frac.is_empty() {
            int_part.to_string()
        } else {
            format!("{int_part}.{frac}")
        }
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// One OFF model concatenating a list of meshes; returns per-mesh vertex
/// offsets into the global vertex list.
pub fn off_document(meshes: &[(Vec<QVec>, Vec<Vec<usize>>)]) -> (String, Vec<usize>) {
    let total_v: usize = meshes.iter().map(|(v, _)| v.len()).sum();
    let total_f: usize = meshes.iter().map(|(_, f)| f.len()).sum();
    let mut out = String::new();
    out.push_str("OFF\n");
    out.push_str(&format!("{total_v} {total_f} 0\n"));
    let mut offsets = Vec::with_capacity(meshes.len());
    for (vertices, _) in meshes {
        for v in vertices {
            let coords: Vec<String> = v.iter().map(decimal_sig12).collect();
            out.push_str(&coords.join(" "));
            out.push('\n');
        }
    }
    let mut offset = 0;
    for (vertices, faces) in meshes {
        offsets.push(offset);
        for face in faces {
            out.push_str(&face.len().to_string());
            for idx in face {
                out.push_str(&format!(" {}", offset + idx));
            }
            out.push('\n');
        }
        offset += vertices.len();
    }
    (out, offsets)
}

pub fn genericity_json(report: &bisfan_core::bisector::GenericityReport) -> Value {
    json!({
        "weak_general": report.weak_general,
        "general": report.general,
        "violations": report.violations,
    })
}

fn mask_to_indices(mask: u32) -> Vec<usize> {
    (0..32)
        .filter(|k| mask >> k & 1 == 1)
        .map(|k| k + 1)
        .collect()
}

/// Family-tagged fan signature; subsets as sorted 1-based index lists.
pub fn signature_json(sig: &bisfan_core::fanlocate::FanSignature) -> Value {
    use bisfan_core::fanlocate::FanSignature;
    match sig {
        FanSignature::Polygon(s) => json!({
            "family": "polygon",
            "lower_ray": [s.lower.0 + 1, s.lower.1 + 1],
            "upper_ray": [s.upper.0 + 1, s.upper.1 + 1],
        }),
        FanSignature::Cube(s) => json!({
            "family": "cube",
            "signs": s.signs.iter().map(|x| x.symbol().to_string()).collect::<Vec<_>>(),
            "dominant": s.dominant + 1,
        }),
        FanSignature::Cross(s) => {
            let heavy: Vec<Vec<usize>> = s
                .heavy_side
                .iter()
                .enumerate()
                .filter(|(_, &side)| side)
                .map(|(k, _)| mask_to_indices(2 * k as u32 + 1))
                .collect();
            json!({
                "family": "l1",
                "signs": s.signs.iter().map(|x| x.symbol().to_string()).collect::<Vec<_>>(),
                "heavy_canonical": heavy,
            })
        }
        FanSignature::Wasserstein(s) => json!({
            "family": "wasserstein",
            "positive_sums_canonical": s.positive_canonical.iter().map(|&m| mask_to_indices(m)).collect::<Vec<_>>(),
            "heavy_positive": s.heavy_positive.iter().map(|&m| mask_to_indices(m)).collect::<Vec<_>>(),
            "light_negative": s.light_negative.iter().map(|&m| mask_to_indices(m)).collect::<Vec<_>>(),
        }),
    }
}
