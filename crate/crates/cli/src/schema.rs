//! Region file format.
//!
//! A region file is a JSON object with a `type` tag and per-type fields:
//!
//! ```json
//! {"type": "disk"}
//! {"type": "ellipse", "a": 2.0, "b": 0.5}
//! {"type": "polygon", "vertices": [[0.0, 0.0], [1.0, 0.0], [0.5, 1.0]]}
//! {"type": "radial_fourier", "cos": [0.0, 0.0, 1.0], "sin": [], "amplitude": 0.05}
//! {"type": "ball3"}
//! {"type": "perturbed_ball3", "ylm": [[2, 0, 1.0]], "amplitude": 0.03}
//! ```
//!
//! `radial_fourier` describes the boundary `r(θ) = 1 + amplitude · (Σ c_k
//! cos kθ + Σ d_k sin kθ)` with `cos` starting at `c_0` and `sin` at `d_1`.
//! Parsing is strict: unknown fields are rejected, as are missing or
//! mistyped ones.

use acuteprob_core::fourier::FourierSeries;
use acuteprob_core::geom::Point2;
use acuteprob_core::region::ConvexRegion;
use serde_json::Value;

pub fn parse_region(text: &str) -> Result<ConvexRegion, String> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| format!("region file is not valid JSON: {e}"))?;
    let obj = value
        .as_object()
        .ok_or_else(|| "region file must be a JSON object".to_string())?;
    let kind = obj
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| "region file needs a string \"type\" field".to_string())?;

    let allowed: &[&str] = match kind {
        "disk" | "ball3" => &["type"],
        "ellipse" => &["type", "a", "b"],
        "polygon" => &["type", "vertices"],
        "radial_fourier" => &["type", "cos", "sin", "amplitude"],
        "perturbed_ball3" => &["type", "ylm", "amplitude"],
        other => return Err(format!("unknown region type {other:?}")),
    };
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(format!("unknown field {key:?} for region type {kind:?}"));
        }
    }

    let number = |key: &str| -> Result<f64, String> {
        obj.get(key)
            .and_then(Value::as_f64)
            .ok_or_else(|| format!("field {key:?} must be a number"))
    };

    let region = match kind {
        "disk" => ConvexRegion::unit_disk(),
        "ball3" => ConvexRegion::ball3(1.0).map_err(|e| e.to_string())?,
        "ellipse" => {
            ConvexRegion::ellipse(number("a")?, number("b")?).map_err(|e| e.to_string())?
        }
        "polygon" => {
            let raw = obj
                .get("vertices")
                .and_then(Value::as_array)
                .ok_or_else(|| "field \"vertices\" must be an array of [x, y] pairs".to_string())?;
            let mut vertices = Vec::with_capacity(raw.len());
            for entry in raw {
                let pair = entry
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| "each vertex must be a [x, y] pair".to_string())?;
                let x = pair[0]
                    .as_f64()
                    .ok_or_else(|| "vertex coordinates must be numbers".to_string())?;
                let y = pair[1]
                    .as_f64()
                    .ok_or_else(|| "vertex coordinates must be numbers".to_string())?;
                vertices.push(Point2::new(x, y));
            }
            ConvexRegion::polygon(vertices).map_err(|e| e.to_string())?
        }
        "radial_fourier" => {
            let floats = |key: &str| -> Result<Vec<f64>, String> {
                obj.get(key)
                    .and_then(Value::as_array)
                    .ok_or_else(|| format!("field {key:?} must be an array of numbers"))?
                    .iter()
                    .map(|v| {
                        v.as_f64()
                            .ok_or_else(|| format!("field {key:?} must contain numbers"))
                    })
                    .collect()
            };
            let cos = floats("cos")?;
            let sin = floats("sin")?;
            let amplitude = number("amplitude")?;
            if cos.is_empty() && sin.is_empty() {
                return Err("radial_fourier needs at least one coefficient".to_string());
            }
            let mut padded_cos = cos;
            if padded_cos.is_empty() {
                padded_cos.push(0.0);
            }
            let series = FourierSeries::new(padded_cos, sin).map_err(|e| e.to_string())?;
            ConvexRegion::radial_from_deviation(&series.scale(amplitude))
                .map_err(|e| e.to_string())?
        }
        "perturbed_ball3" => {
            let raw = obj
                .get("ylm")
                .and_then(Value::as_array)
                .ok_or_else(|| "field \"ylm\" must be an array of [l, m, coeff]".to_string())?;
            let mut ylm = Vec::with_capacity(raw.len());
            for entry in raw {
                let triple = entry
                    .as_array()
                    .filter(|t| t.len() == 3)
                    .ok_or_else(|| "each ylm entry must be [l, m, coeff]".to_string())?;
                let l = triple[0]
                    .as_u64()
                    .ok_or_else(|| "l must be a nonnegative integer".to_string())?;
                let m = triple[1]
                    .as_i64()
                    .ok_or_else(|| "m must be an integer".to_string())?;
                let coeff = triple[2]
                    .as_f64()
                    .ok_or_else(|| "ylm coefficients must be numbers".to_string())?;
                ylm.push((l as u32, m as i32, coeff));
            }
            let amplitude = number("amplitude")?;
            ConvexRegion::perturbed_ball3(ylm, amplitude).map_err(|e| e.to_string())?
        }
        _ => unreachable!(),
    };
    Ok(region)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_variant() {
        assert!(parse_region(r#"{"type":"disk"}"#).is_ok());
        assert!(parse_region(r#"{"type":"ball3"}"#).is_ok());
        assert!(parse_region(r#"{"type":"ellipse","a":2.0,"b":0.5}"#).is_ok());
        assert!(parse_region(
            r#"{"type":"polygon","vertices":[[0,0],[1,0],[1,1],[0,1]]}"#
        )
        .is_ok());
        assert!(parse_region(
            r#"{"type":"radial_fourier","cos":[0,0,1.0],"sin":[],"amplitude":0.05}"#
        )
        .is_ok());
        assert!(parse_region(r#"{"type":"perturbed_ball3","ylm":[[2,0,1.0]],"amplitude":0.02}"#).is_ok());
    }

    #[test]
    fn rejects_unknown_fields_and_types() {
        assert!(parse_region(r#"{"type":"disk","radius":2.0}"#).is_err());
        assert!(parse_region(r#"{"type":"squircle"}"#).is_err());
        assert!(parse_region(r#"{"type":"ellipse","a":2.0}"#).is_err());
        assert!(parse_region(r#"{"type":"ellipse","a":2.0,"b":"x"}"#).is_err());
        assert!(parse_region(r#"{"type":"polygon","vertices":[[0,0],[1,0]]}"#).is_err());
        assert!(parse_region("not json").is_err());
        assert!(parse_region("[1,2,3]").is_err());
    }

    #[test]
    fn rejects_invalid_geometry() {
        // clockwise polygon
        assert!(parse_region(
            r#"{"type":"polygon","vertices":[[0,1],[1,1],[1,0],[0,0]]}"#
        )
        .is_err());
        // radial boundary that goes nonpositive
        assert!(parse_region(
            r#"{"type":"radial_fourier","cos":[0,2.0],"sin":[],"amplitude":1.0}"#
        )
        .is_err());
    }
}
