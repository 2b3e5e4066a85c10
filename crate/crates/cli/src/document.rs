//! On-disk JSON format for exponential sums.
//!
//! ```json
//! {
//!   "generators":   [ {"symbol": "g1", "value": "1"},
//!                     {"symbol": "g2", "value": "1.4142135623730951"} ],
//!   "frequencies":  [ ["1", "0"], ["1/2", "0"] ],
//!   "coefficients": [ {"modulus": "1", "phase_turns": "0"},
//!                     {"modulus": "1", "phase_turns": "1/4"} ],
//!   "strip":        {"alpha": "-inf", "beta": "+inf"}
//! }
//! ```
//!
//! Rationals travel as `"p/q"` strings (decimal literals are also accepted)
//! so no value is corrupted by a float round trip; generator values are
//! conventionally decimals. Coefficients are either all exact polar
//! (`modulus`/`phase_turns` rationals, phases in turns) or all numeric
//! (`re`/`im` floats). The optional strip takes decimal bounds or the
//! sentinels `-inf` / `+inf`. Parse failures carry the offending position.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use expsum::exponents::{ExponentSet, GroundGeneratorSet};
use expsum::rational::{format_rat, parse_rat};
use expsum::sums::{Coefficient, ExponentialSum, Strip};
use expsum::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub symbol: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoefficientEntry {
    Exact { modulus: String, phase_turns: String },
    Numeric { re: f64, im: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StripEntry {
    pub alpha: String,
    pub beta: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SumDocument {
    pub generators: Vec<GeneratorEntry>,
    pub frequencies: Vec<Vec<String>>,
    pub coefficients: Vec<CoefficientEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strip: Option<StripEntry>,
}

/// Prefixes a parse error with the document position it came from.
fn at(position: &str, e: Error) -> Error {
    match e {
        Error::Parse(msg) => Error::Parse(format!("{position}: {msg}")),
        other => other,
    }
}

fn parse_strip_bound(s: &str, position: &str) -> Result<f64> {
    match s.trim() {
        "-inf" => Ok(f64::NEG_INFINITY),
        "+inf" | "inf" => Ok(f64::INFINITY),
        t => t
            .parse::<f64>()
            .map_err(|_| ())
            .or_else(|_| parse_rat(t).map(|r| expsum::rational::rat_to_f64(&r)).map_err(|_| ()))
            .map_err(|_| Error::Parse(format!("{position}: bad strip bound {t:?}"))),
    }
}

fn render_strip_bound(v: f64) -> String {
    if v == f64::NEG_INFINITY {
        "-inf".into()
    } else if v == f64::INFINITY {
        "+inf".into()
    } else {
        format!("{v}")
    }
}

/// Renders a rational as an exact decimal when its denominator divides a
/// power of ten, else as "p/q". Used for generator values, which are
/// conventionally decimal in documents.
fn decimal_or_fraction(r: &BigRational) -> String {
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut q = r.denom().clone();
    let (mut twos, mut fives) = (0u32, 0u32);
    while (&q % &two).is_zero() {
        q /= &two;
        twos += 1;
    }
    while (&q % &five).is_zero() {
        q /= &five;
        fives += 1;
    }
    if !q.is_one() {
        return format_rat(r);
    }
    let digits = twos.max(fives) as usize;
    if digits == 0 {
        return r.numer().to_string();
    }
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = r.numer() * &scale / r.denom();
    let sign = if scaled.is_negative() { "-" } else { "" };
    let mut abs = scaled.magnitude().to_string();
    if abs.len() <= digits {
        abs = format!("{}{abs}", "0".repeat(digits + 1 - abs.len()));
    }
    let (int_part, frac_part) = abs.split_at(abs.len() - digits);
    format!("{sign}{int_part}.{frac_part}")
}

impl SumDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialization cannot fail")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Builds the in-memory sum, reporting the first offending position on
    /// failure.
    pub fn to_sum(&self) -> Result<ExponentialSum> {
        let mut gens = Vec::with_capacity(self.generators.len());
        for (i, g) in self.generators.iter().enumerate() {
            let value =
                parse_rat(&g.value).map_err(|e| at(&format!("generators[{i}].value"), e))?;
            gens.push((g.symbol.clone(), value));
        }
        let generators = GroundGeneratorSet::from_rationals(gens)?;

        let m = generators.len();
        let mut rows = Vec::with_capacity(self.frequencies.len());
        for (j, row) in self.frequencies.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Parse(format!(
                    "frequencies[{j}]: expected {m} coordinates, got {}",
                    row.len()
                )));
            }
            let mut coords = Vec::with_capacity(m);
            for (k, entry) in row.iter().enumerate() {
                coords.push(parse_rat(entry).map_err(|e| at(&format!("frequencies[{j}][{k}]"), e))?);
            }
            rows.push(coords);
        }
        let exponents = ExponentSet::new(generators, rows)?;

        let mut coeffs = Vec::with_capacity(self.coefficients.len());
        for (j, c) in self.coefficients.iter().enumerate() {
            let coeff = match c {
                CoefficientEntry::Exact {
                    modulus,
                    phase_turns,
                } => {
                    let md = parse_rat(modulus)
                        .map_err(|e| at(&format!("coefficients[{j}].modulus"), e))?;
                    let ph = parse_rat(phase_turns)
                        .map_err(|e| at(&format!("coefficients[{j}].phase_turns"), e))?;
                    Coefficient::exact_polar(md, ph)?
                }
                CoefficientEntry::Numeric { re, im } => Coefficient::numeric(*re, *im)?,
            };
            coeffs.push(coeff);
        }

        let strip = match &self.strip {
            None => None,
            Some(s) => {
                let alpha = parse_strip_bound(&s.alpha, "strip.alpha")?;
                let beta = parse_strip_bound(&s.beta, "strip.beta")?;
                Some(Strip::new(alpha, beta)?)
            }
        };

        ExponentialSum::new(exponents, coeffs, strip)
    }

    /// Canonical document for a sum: "p/q" rationals, decimal generator
    /// values where exact, normalized field order.
    pub fn from_sum(f: &ExponentialSum) -> Self {
        let generators = f
            .exponents()
            .generators()
            .symbols()
            .iter()
            .zip(f.exponents().generators().values())
            .map(|(symbol, value)| GeneratorEntry {
                symbol: symbol.clone(),
                value: decimal_or_fraction(value),
            })
            .collect();
        let frequencies = f
            .exponents()
            .freqs()
            .iter()
            .map(|freq| freq.coords().iter().map(format_rat).collect())
            .collect();
        let coefficients = f
            .coeffs()
            .iter()
            .map(|c| match c {
                Coefficient::ExactPolar {
                    modulus,
                    phase_turns,
                } => CoefficientEntry::Exact {
                    modulus: format_rat(modulus),
                    phase_turns: format_rat(phase_turns),
                },
                Coefficient::NumericComplex { re, im } => {
                    CoefficientEntry::Numeric { re: *re, im: *im }
                }
            })
            .collect();
        let strip = f.strip().map(|s| StripEntry {
            alpha: render_strip_bound(s.alpha),
            beta: render_strip_bound(s.beta),
        });
        SumDocument {
            generators,
            frequencies,
            coefficients,
            strip,
        }
    }
}

/// Reads and builds a sum in one step.
pub fn load_sum(path: &Path) -> Result<ExponentialSum> {
    SumDocument::load(path)?.to_sum()
}
