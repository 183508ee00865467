//! JSON input specs for measures and harmonic maps, and JSON/CSV output with
//! 17 significant digits.
//!
//! A measure is either a named family
//!
//! ```json
//! {"family": "beta", "a": 1, "c": 3}
//! ```
//!
//! with `family` one of `dirac` (`t`), `lebesgue`, `beta` (`a`, `c`),
//! `loggamma` (`alpha`) or `table` (`grid`, `values`), or a mixture
//!
//! ```json
//! {"atoms": [{"t": 0.5, "w": 0.25}], "densities": [{"family": "lebesgue", "w": 0.75}]}
//! ```
//!
//! A map is `{"h": <measure>, "g": <measure>, "c": 0.2}`; adding
//! `"construction": "convolution"` builds `h + c·conj(h∗g)` instead.
//! Polylogarithm and hypergeometric pairs are written
//! `{"polylog": {"alpha": 4, "beta": 3}, "c": 0.5}` and
//! `{"hypergeom": {"a": 1, "c": 6, "a2": 2, "c2": 6}, "b": 0.3}`.

use crate::gen_func::ShiftedTFunction;
use crate::harmonic_map::{HarmonicError, HarmonicMap};
use crate::measure::{Atom, Density, DensityFamily, Measure, MeasureError, SampledDensity};
use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;
use serde_json::Value;
use std::io;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid spec: {0}")]
    Invalid(String),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
    #[error(transparent)]
    GenFunc(#[from] crate::gen_func::GenFuncError),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase", deny_unknown_fields)]
enum DensitySpec {
    Lebesgue,
    Beta { a: f64, c: f64 },
    Loggamma { alpha: f64 },
    Table { grid: Vec<f64>, values: Vec<f64> },
}

impl DensitySpec {
    fn family(self) -> Result<DensityFamily, MeasureError> {
        Ok(match self {
            DensitySpec::Lebesgue => DensityFamily::Lebesgue,
            DensitySpec::Beta { a, c } => DensityFamily::Beta { a, c },
            DensitySpec::Loggamma { alpha } => DensityFamily::LogGamma { alpha },
            DensitySpec::Table { grid, values } => DensityFamily::Table(SampledDensity::new(grid, values)?),
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct Mixture {
    #[serde(default)]
    atoms: Vec<Atom>,
    #[serde(default)]
    densities: Vec<Value>,
}

/// Builds a measure from its JSON description.
pub fn parse_measure(v: &Value) -> Result<Measure, SpecError> {
    let obj = v
        .as_object()
        .ok_or_else(|| SpecError::Invalid("a measure must be a JSON object".into()))?;
    if let Some(family) = obj.get("family") {
        if family == "dirac" {
            #[derive(Deserialize)]
            #[serde(deny_unknown_fields)]
            #[allow(dead_code)]
            struct Dirac {
                family: String,
                t: f64,
            }
            let d: Dirac = serde_json::from_value(v.clone())?;
            return Ok(Measure::dirac(d.t)?);
        }
        let spec: DensitySpec = serde_json::from_value(v.clone())?;
        return Ok(Measure::density(spec.family()?)?);
    }
    let mix: Mixture = serde_json::from_value(v.clone())?;
    let mut densities = Vec::new();
    for d in mix.densities {
        let mut d = d;
        let w = match d.as_object_mut().and_then(|o| o.remove("w")) {
            Some(w) => w
                .as_f64()
                .ok_or_else(|| SpecError::Invalid("density weight `w` must be a number".into()))?,
            None => 1.0,
        };
        let spec: DensitySpec = serde_json::from_value(d)?;
        densities.push((Density::new(spec.family()?)?, w));
    }
    Ok(Measure::from_parts(mix.atoms, densities)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolylogPair {
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergeomPair {
    pub a: f64,
    pub c: f64,
    pub a2: f64,
    pub c2: f64,
}

/// A parsed map description.
#[derive(Debug, Clone, PartialEq)]
pub enum MapSpec {
    /// `h + c·conj(g)` from two measures.
    Direct { h: Measure, g: Measure, c: f64 },
    /// `h + c·conj(h∗g)`.
    Convolution { h: Measure, g: Measure, c: f64 },
    /// `Li_α + c·conj(Li_β)`.
    Polylog { pair: PolylogPair, c: f64 },
    /// `L_{a,c} + b·conj(L_{a2,c2})`.
    Hypergeom { pair: HypergeomPair, b: f64 },
}

fn number(obj: &serde_json::Map<String, Value>, key: &str) -> Result<f64, SpecError> {
    obj.get(key)
        .and_then(Value::as_f64)
        .ok_or_else(|| SpecError::Invalid(format!("missing numeric field `{key}`")))
}

fn only_keys(obj: &serde_json::Map<String, Value>, allowed: &[&str]) -> Result<(), SpecError> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(SpecError::Invalid(format!("unexpected field `{k}`"))),
        None => Ok(()),
    }
}

pub fn parse_map(v: &Value) -> Result<MapSpec, SpecError> {
    let obj = v
        .as_object()
        .ok_or_else(|| SpecError::Invalid("a map spec must be a JSON object".into()))?;
    if let Some(p) = obj.get("polylog") {
        only_keys(obj, &["polylog", "c"])?;
        return Ok(MapSpec::Polylog {
            pair: serde_json::from_value(p.clone())?,
            c: number(obj, "c")?,
        });
    }
    if let Some(p) = obj.get("hypergeom") {
        only_keys(obj, &["hypergeom", "b"])?;
        return Ok(MapSpec::Hypergeom {
            pair: serde_json::from_value(p.clone())?,
            b: number(obj, "b")?,
        });
    }
    only_keys(obj, &["h", "g", "c", "construction"])?;
    let part = |key: &str| {
        obj.get(key)
            .ok_or_else(|| SpecError::Invalid(format!("missing field `{key}`")))
            .and_then(parse_measure)
    };
    let (h, g, c) = (part("h")?, part("g")?, number(obj, "c")?);
    match obj.get("construction").map(|s| s.as_str()) {
        None | Some(Some("direct")) => Ok(MapSpec::Direct { h, g, c }),
        Some(Some("convolution")) => Ok(MapSpec::Convolution { h, g, c }),
        Some(other) => Err(SpecError::Invalid(format!("unknown construction {other:?}"))),
    }
}

impl MapSpec {
    /// The map with measure-backed parts.
    pub fn build(&self) -> Result<HarmonicMap, SpecError> {
        Ok(match self {
            MapSpec::Direct { h, g, c } => HarmonicMap::from_measures(h.clone(), g.clone(), *c)?,
            MapSpec::Convolution { h, g, c } => HarmonicMap::construct_conv_map(
                ShiftedTFunction::from_measure(h.clone())?,
                &ShiftedTFunction::from_measure(g.clone())?,
                *c,
            )?,
            MapSpec::Polylog { pair, c } => {
                HarmonicMap::from_measures(Measure::loggamma(pair.alpha)?, Measure::loggamma(pair.beta)?, *c)?
            }
            MapSpec::Hypergeom { pair, b } => {
                HarmonicMap::from_measures(Measure::beta(pair.a, pair.c)?, Measure::beta(pair.a2, pair.c2)?, *b)?
            }
        })
    }
}

/// Writes every float in scientific notation with 17 significant digits.
#[derive(Debug, Clone, Copy, Default)]
pub struct FullPrecision;

impl Formatter for FullPrecision {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{}", fmt_f64(value))
        } else {
            writer.write_all(b"null")
        }
    }
}

/// `{:.16e}` formatting: 17 significant digits, enough to round-trip.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Pretty-free JSON with full-precision floats and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FullPrecision);
    value.serialize(&mut ser).expect("serializing to memory cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

/// Flattens a JSON value to `key,value` rows, nested keys joined by dots.
pub fn flatten(value: &Value) -> Vec<(String, String)> {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        let key = |k: &str| {
            if prefix.is_empty() {
                k.to_string()
            } else {
                format!("{prefix}.{k}")
            }
        };
        match v {
            Value::Object(m) => m.iter().for_each(|(k, v)| walk(&key(k), v, out)),
            Value::Array(a) => a
                .iter()
                .enumerate()
                .for_each(|(i, v)| walk(&key(&i.to_string()), v, out)),
            Value::Number(n) => out.push((
                prefix.to_string(),
                n.as_f64().map(fmt_f64).unwrap_or_else(|| n.to_string()),
            )),
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            Value::Bool(b) => out.push((prefix.to_string(), b.to_string())),
            Value::Null => out.push((prefix.to_string(), String::new())),
        }
    }
    let mut out = Vec::new();
    walk("", value, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn named_measures() {
        assert_eq!(
            parse_measure(&json!({"family": "dirac", "t": 1})).unwrap(),
            Measure::dirac(1.0).unwrap()
        );
        assert_eq!(
            parse_measure(&json!({"family": "lebesgue"})).unwrap(),
            Measure::lebesgue()
        );
        assert_eq!(
            parse_measure(&json!({"family": "beta", "a": 1, "c": 3})).unwrap(),
            Measure::beta(1.0, 3.0).unwrap()
        );
        assert!(parse_measure(&json!({"family": "beta", "a": 3, "c": 1})).is_err());
        assert!(parse_measure(&json!({"family": "gauss"})).is_err());
        assert!(parse_measure(&json!({"family": "dirac", "t": 0.5, "w": 2})).is_err());
        assert!(parse_measure(&json!([1, 2])).is_err());
    }

    #[test]
    fn mixtures() {
        let m = parse_measure(&json!({
            "atoms": [{"t": 0.5, "w": 0.25}],
            "densities": [{"family": "lebesgue", "w": 0.75}]
        }))
        .unwrap();
        assert!(m.is_normalized());
        assert_eq!(m.atoms().len(), 1);
        let t = parse_measure(&json!({"densities": [{"family": "table", "grid": [0, 1], "values": [2, 2]}]})).unwrap();
        assert!((t.density_at(0.3) - 1.0).abs() < 1e-15);
        assert!(parse_measure(&json!({"atoms": []})).is_err());
    }

    #[test]
    fn maps() {
        let m =
            parse_map(&json!({"h": {"family": "dirac", "t": 1}, "g": {"family": "dirac", "t": 0}, "c": 0.2})).unwrap();
        assert!(matches!(m, MapSpec::Direct { .. }));
        m.build().unwrap();
        let p = parse_map(&json!({"polylog": {"alpha": 4, "beta": 3}, "c": 0.5})).unwrap();
        assert_eq!(
            p,
            MapSpec::Polylog {
                pair: PolylogPair { alpha: 4.0, beta: 3.0 },
                c: 0.5
            }
        );
        let conv = parse_map(
            &json!({"h": {"family": "lebesgue"}, "g": {"family": "lebesgue"}, "c": 0.1, "construction": "convolution"}),
        )
        .unwrap();
        assert!(matches!(
            conv.build().unwrap().g(),
            crate::harmonic_map::AnalyticPart::Convolution(_)
        ));
        assert!(parse_map(&json!({"h": {"family": "lebesgue"}, "c": 0.1})).is_err());
        assert!(
            parse_map(&json!({"h": {"family": "lebesgue"}, "g": {"family": "lebesgue"}, "c": 0.1, "x": 1})).is_err()
        );
        let bad_c = parse_map(&json!({"h": {"family": "lebesgue"}, "g": {"family": "lebesgue"}, "c": 1.5})).unwrap();
        assert!(bad_c.build().is_err());
    }

    #[test]
    fn full_precision_output() {
        assert_eq!(to_json(&json!({"x": 0.1})), "{\"x\":1.0000000000000001e-1}\n");
        let back: Value = serde_json::from_str(&to_json(&json!([1.0 / 3.0]))).unwrap();
        assert_eq!(back[0].as_f64().unwrap(), 1.0 / 3.0);
        let rows = flatten(&json!({"a": {"b": 2.0}, "c": [true]}));
        assert_eq!(
            rows,
            vec![
                ("a.b".into(), "2.0000000000000000e0".into()),
                ("c.0".into(), "true".into())
            ]
        );
    }
}
