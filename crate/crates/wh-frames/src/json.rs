//! JSON and CSV emission for every report type, plus parsing of
//! step-function literals.  Rationals serialize as `"p/q"` strings so exact
//! data survives a round trip; approx values serialize as plain numbers.

use crate::abc::AbcVerdict;
use crate::conditions::{CcReport, FrameStatus, FrameVerdict};
use crate::frameset::CertifiedRange;
use crate::fundamental::SqrtInverseReport;
use crate::gabor::GkTable;
use crate::scalar::{parse_rat, Rat, Scalar};
use crate::stepfn::{PeriodicStepFunction, StepFunction};
use crate::witnesses::DecayRow;
use crate::{Error, Result};
use num_traits::One;
use serde_json::{json, Map, Value};

pub fn rat_json(r: &Rat) -> Value {
    if r.is_integer() {
        Value::String(r.numer().to_string())
    } else {
        Value::String(format!("{}/{}", r.numer(), r.denom()))
    }
}

pub fn scalar_json(s: &Scalar) -> Value {
    match s {
        Scalar::Exact(z) => {
            if z.im == num_traits::Zero::zero() {
                rat_json(&z.re)
            } else {
                json!({ "re": rat_json(&z.re), "im": rat_json(&z.im) })
            }
        }
        Scalar::Approx(z) => {
            if z.im == 0.0 {
                json!(z.re)
            } else {
                json!({ "re": z.re, "im": z.im })
            }
        }
    }
}

pub fn step_json(f: &StepFunction) -> Value {
    Value::Array(
        f.pieces()
            .iter()
            .map(|p| json!([rat_json(&p.lo), rat_json(&p.hi), scalar_json(&p.value)]))
            .collect(),
    )
}

pub fn periodic_json(f: &PeriodicStepFunction) -> Value {
    json!({ "period": rat_json(f.period()), "cell": step_json(f.cell()) })
}

pub fn status_str(s: FrameStatus) -> &'static str {
    match s {
        FrameStatus::Frame => "Frame",
        FrameStatus::NotFrame => "NotFrame",
        FrameStatus::Inconclusive => "Inconclusive",
    }
}

pub fn verdict_json(v: &FrameVerdict) -> Value {
    let mut m = Map::new();
    m.insert("status".into(), json!(status_str(v.status)));
    m.insert("rule".into(), json!(v.rule));
    if let Some((lo, hi)) = &v.bounds {
        m.insert("bounds".into(), json!([scalar_json(lo), scalar_json(hi)]));
    }
    if let Some(w) = &v.witness {
        m.insert("witness".into(), json!(w));
    }
    Value::Object(m)
}

pub fn cc_json(r: &CcReport) -> Value {
    json!({
        "a_raw": scalar_json(&r.a_raw),
        "b_raw": scalar_json(&r.b_raw),
        "frame_lower": scalar_json(&r.frame_lower),
        "frame_upper": scalar_json(&r.frame_upper),
        "nonneg_necessary": r.nonneg_necessary,
        "status": status_str(r.status),
    })
}

pub fn gk_json(t: &GkTable) -> Value {
    let mut entries = Map::new();
    for k in t.krange() {
        if let Some(e) = t.entry(k) {
            entries.insert(k.to_string(), periodic_json(e));
        }
    }
    json!({
        "a": rat_json(t.system().a()),
        "b": rat_json(t.system().b()),
        "entries": Value::Object(entries),
    })
}

pub fn range_json(r: &CertifiedRange) -> Value {
    json!({
        "min_modulus": [r.min_enclosure.0, r.min_enclosure.1],
        "max_modulus": [r.max_enclosure.0, r.max_enclosure.1],
        "certificate": {
            "lipschitz": r.certificate.lipschitz,
            "initial_grid": r.certificate.initial_grid,
            "refinement_rounds": r.certificate.refinement_rounds,
            "zero_certified": r.certificate.zero_certified,
        },
    })
}

pub fn sqrt_inverse_json(r: &SqrtInverseReport) -> Value {
    json!({
        "max_err_beta_gamma": r.max_err_beta_gamma,
        "max_err_identity": r.max_err_identity,
        "trials": r.trials,
    })
}

pub fn abc_json(a: &str, c: &str, v: &AbcVerdict) -> Value {
    json!({
        "a": a,
        "c": c,
        "status": status_str(v.status),
        "rule": v.rule.to_string(),
    })
}

pub fn decay_csv(rows: &[DecayRow]) -> String {
    let mut out = String::from("n,norm_sq,energy,ratio\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.n, r.norm_sq, r.energy, r.ratio));
    }
    out
}

fn parse_scalar_value(v: &Value, allow_float: bool) -> Result<Scalar> {
    match v {
        Value::String(s) => Ok(Scalar::from_rat(parse_rat(s, allow_float)?)),
        Value::Number(n) => {
            let x = n.as_f64().ok_or_else(|| Error::Parse("bad number".into()))?;
            if let Some(r) = n.as_i64() {
                return Ok(Scalar::from_int(r));
            }
            if !allow_float {
                return Err(Error::Parse(format!(
                    "non-integer numeric literal {x}; use \"p/q\" or pass --approx"
                )));
            }
            Ok(Scalar::from_f64(x))
        }
        Value::Object(m) => {
            let part = |key: &str| -> Result<Scalar> {
                match m.get(key) {
                    None => Ok(Scalar::zero()),
                    Some(v) => parse_scalar_value(v, allow_float),
                }
            };
            let re = part("re")?;
            let im = part("im")?;
            Ok(&re + &(&im * &Scalar::from_rat_pair(Rat::from_integer(0.into()), Rat::one())))
        }
        _ => Err(Error::Parse(format!("cannot parse scalar from {v}"))),
    }
}

fn parse_rat_value(v: &Value, allow_float: bool) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s, allow_float),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                return Ok(Rat::from_integer(i.into()));
            }
            if !allow_float {
                return Err(Error::Parse(
                    "non-integer breakpoint; use \"p/q\" or pass --approx".into(),
                ));
            }
            Rat::from_float(n.as_f64().unwrap())
                .ok_or_else(|| Error::Parse("non-finite breakpoint".into()))
        }
        _ => Err(Error::Parse(format!("cannot parse rational from {v}"))),
    }
}

/// Parse a step function from a JSON array of `[lo, hi, value]` triples.
/// Breakpoints and values accept `"p/q"` strings or numbers; non-integer
/// numeric literals require `allow_float`.
pub fn parse_step(v: &Value, allow_float: bool) -> Result<StepFunction> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected an array of [lo, hi, value] triples".into()))?;
    let mut pieces = Vec::with_capacity(arr.len());
    for t in arr {
        let t = t
            .as_array()
            .filter(|t| t.len() == 3)
            .ok_or_else(|| Error::Parse(format!("expected [lo, hi, value], got {t}")))?;
        pieces.push((
            parse_rat_value(&t[0], allow_float)?,
            parse_rat_value(&t[1], allow_float)?,
            parse_scalar_value(&t[2], allow_float)?,
        ));
    }
    StepFunction::make(pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rint};

    #[test]
    fn step_round_trip_exact() {
        let f = StepFunction::make(vec![
            (rint(0), rat(1, 2), Scalar::from_rat(rat(2, 3))),
            (rat(1, 2), rint(2), Scalar::from_rat_pair(rint(-1), rat(1, 4))),
        ])
        .unwrap();
        let j = step_json(&f);
        let back = parse_step(&j, false).unwrap();
        assert_eq!(back, f);
        assert!(back.is_exact());
    }

    #[test]
    fn parse_rejects_floats_without_flag() {
        let v = json!([[0, "1/2", 0.25]]);
        assert!(parse_step(&v, false).is_err());
        let f = parse_step(&v, true).unwrap();
        assert_eq!(f.pieces().len(), 1);
    }

    #[test]
    fn gk_table_serializes() {
        let g = StepFunction::indicator(rint(0), rint(3)).unwrap();
        let sys = crate::gabor::GaborSystem::new(g, Rat::one(), Rat::one()).unwrap();
        let t = crate::gabor::gk_table(&sys);
        let v = gk_json(&t);
        assert_eq!(v["a"], json!("1"));
        assert_eq!(v["entries"]["0"]["cell"][0][2], json!("3"));
    }

    #[test]
    fn decay_csv_shape() {
        let rows = vec![DecayRow {
            n: 2,
            norm_sq: 3.0,
            energy: 2.5,
            ratio: 2.5 / 3.0,
        }];
        let csv = decay_csv(&rows);
        assert!(csv.starts_with("n,norm_sq,energy,ratio\n2,3,2.5,"));
    }
}
