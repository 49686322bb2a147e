//! Canonical JSON encodings of the engine's public types. Objects
//! serialize with sorted keys; readers are strict and reject
//! non-canonical vectors (unsorted words, non-basis modes, zero or
//! duplicate coefficients).

use serde_json::{json, Map, Value};

use crate::algebra::{Gen, Mode};
use crate::character::{CharacterTable, CompareOutcome, Window};
use crate::error::{EngineError, Result};
use crate::lattice::{ExtensionVector, FlowProfile, LatticeElement};
use crate::modules::{BaseLabel, GradedCell, ModuleSpec, ModuleVector, PbwWord, Term};
use crate::scalar::Scalar;
use crate::singular::SingularVector;
use crate::voa::CheckReport;

pub const SCHEMA_VERSION: u32 = 1;

fn bad(msg: impl Into<String>) -> EngineError {
    EngineError::Parse(msg.into())
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    Value::String(s.to_display())
}

pub fn scalar_from_json(v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| bad(format!("not an exact rational: {n}")))?;
            Ok(Scalar::from_int(i))
        }
        _ => Err(bad(format!("not a rational: {v}"))),
    }
}

pub fn mode_to_json(m: &Mode) -> Value {
    match m {
        Mode::K => Value::String("K".into()),
        Mode::H(g, n) => json!([g.letter().to_string(), n]),
    }
}

pub fn mode_from_json(v: &Value) -> Result<Mode> {
    match v {
        Value::String(s) if s == "K" => Ok(Mode::K),
        Value::Array(items) if items.len() == 2 => {
            let gen = items[0]
                .as_str()
                .and_then(|s| {
                    let mut chars = s.chars();
                    let ch = chars.next()?;
                    chars.next().is_none().then_some(ch)
                })
                .and_then(Gen::from_letter)
                .ok_or_else(|| bad(format!("unknown generator in mode: {v}")))?;
            let n = items[1]
                .as_i64()
                .ok_or_else(|| bad(format!("mode index must be an integer: {v}")))?;
            Ok(Mode::H(gen, n))
        }
        _ => Err(bad(format!("not a mode: {v}"))),
    }
}

pub fn base_to_json(b: &BaseLabel) -> Value {
    match b {
        BaseLabel::Hw => Value::String("HW".into()),
        BaseLabel::Idx(j) => json!({ "idx": j }),
    }
}

fn base_from_json(v: &Value) -> Result<BaseLabel> {
    match v {
        Value::String(s) if s == "HW" => Ok(BaseLabel::Hw),
        Value::Object(map) => {
            let j = map
                .get("idx")
                .and_then(Value::as_i64)
                .ok_or_else(|| bad(format!("not a base label: {v}")))?;
            Ok(BaseLabel::Idx(j))
        }
        _ => Err(bad(format!("not a base label: {v}"))),
    }
}

pub fn spec_to_json(spec: &ModuleSpec) -> Value {
    match spec {
        ModuleSpec::H4Verma { c0, d0 } => json!({
            "family": "h4_verma",
            "c": scalar_to_json(c0),
            "d": scalar_to_json(d0),
        }),
        ModuleSpec::H4Intermediate { lambda, mu, nu } => json!({
            "family": "h4_intermediate",
            "lambda": scalar_to_json(lambda),
            "mu": scalar_to_json(mu),
            "nu": scalar_to_json(nu),
        }),
        ModuleSpec::Vacuum { d0 } => json!({
            "family": "vacuum",
            "d": scalar_to_json(d0),
        }),
        ModuleSpec::Gv0 { c0, d0 } => json!({
            "family": "gv0",
            "c": c0,
            "d": scalar_to_json(d0),
        }),
        ModuleSpec::Gv1 { m, c0, d0 } => json!({
            "family": "gv1",
            "m": m,
            "c": scalar_to_json(c0),
            "d": scalar_to_json(d0),
        }),
        ModuleSpec::Third { lambda, mu, nu, m } => json!({
            "family": "third",
            "lambda": scalar_to_json(lambda),
            "mu": scalar_to_json(mu),
            "nu": scalar_to_json(nu),
            "m": m,
        }),
        ModuleSpec::Quotient { inner, generators } => json!({
            "family": "quotient",
            "inner": spec_to_json(inner),
            "generators": generators
                .iter()
                .map(terms_to_json)
                .collect::<Vec<Value>>(),
        }),
    }
}

pub fn spec_from_json(v: &Value) -> Result<ModuleSpec> {
    let map = v
        .as_object()
        .ok_or_else(|| bad(format!("not a family descriptor: {v}")))?;
    let family = map
        .get("family")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("family descriptor lacks a \"family\" tag"))?;
    let scalar_field = |name: &str| -> Result<Scalar> {
        scalar_from_json(
            map.get(name)
                .ok_or_else(|| bad(format!("family {family} needs field {name:?}")))?,
        )
    };
    let int_field = |name: &str| -> Result<i64> {
        map.get(name)
            .and_then(Value::as_i64)
            .ok_or_else(|| bad(format!("family {family} needs integer field {name:?}")))
    };
    let spec = match family {
        "h4_verma" => ModuleSpec::H4Verma {
            c0: scalar_field("c")?,
            d0: scalar_field("d")?,
        },
        "h4_intermediate" => ModuleSpec::H4Intermediate {
            lambda: scalar_field("lambda")?,
            mu: scalar_field("mu")?,
            nu: scalar_field("nu")?,
        },
        "vacuum" => ModuleSpec::Vacuum {
            d0: scalar_field("d")?,
        },
        "gv0" => ModuleSpec::Gv0 {
            c0: int_field("c")?,
            d0: scalar_field("d")?,
        },
        "gv1" => ModuleSpec::Gv1 {
            m: int_field("m")?,
            c0: scalar_field("c")?,
            d0: scalar_field("d")?,
        },
        "third" => ModuleSpec::Third {
            lambda: scalar_field("lambda")?,
            mu: scalar_field("mu")?,
            nu: scalar_field("nu")?,
            m: int_field("m")?,
        },
        "quotient" => {
            let inner = spec_from_json(
                map.get("inner")
                    .ok_or_else(|| bad("quotient needs an \"inner\" family"))?,
            )?;
            let gens = map
                .get("generators")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("quotient needs a \"generators\" array"))?;
            let generators = gens
                .iter()
                .map(|g| terms_from_json(&inner, g))
                .collect::<Result<Vec<_>>>()?;
            ModuleSpec::Quotient {
                inner: Box::new(inner),
                generators,
            }
        }
        other => return Err(bad(format!("unknown family tag {other:?}"))),
    };
    spec.validate()?;
    Ok(spec)
}

pub fn term_to_json(term: &Term) -> Value {
    json!({
        "base": base_to_json(&term.base),
        "word": term
            .word
            .modes()
            .iter()
            .map(mode_to_json)
            .collect::<Vec<Value>>(),
    })
}

fn terms_to_json(v: &ModuleVector) -> Value {
    Value::Array(
        v.iter()
            .map(|(term, coeff)| {
                json!({
                    "base": base_to_json(&term.base),
                    "coeff": scalar_to_json(coeff),
                    "word": term
                        .word
                        .modes()
                        .iter()
                        .map(mode_to_json)
                        .collect::<Vec<Value>>(),
                })
            })
            .collect(),
    )
}

/// Strict term-list reader: words must be canonical basis words of the
/// family, bases valid, coefficients nonzero, terms distinct.
fn terms_from_json(spec: &ModuleSpec, v: &Value) -> Result<ModuleVector> {
    let items = v
        .as_array()
        .ok_or_else(|| bad(format!("terms must be an array: {v}")))?;
    let mut out = ModuleVector::zero();
    for item in items {
        let map = item
            .as_object()
            .ok_or_else(|| bad(format!("not a term: {item}")))?;
        let coeff = scalar_from_json(
            map.get("coeff")
                .ok_or_else(|| bad("term lacks a coefficient"))?,
        )?;
        if coeff.is_zero() {
            return Err(bad("zero coefficients may not be stored"));
        }
        let base = base_from_json(map.get("base").ok_or_else(|| bad("term lacks a base"))?)?;
        if !spec.base_valid(&base) {
            return Err(EngineError::InvalidBase(format!(
                "base {base} is not valid for this family"
            )));
        }
        let modes = map
            .get("word")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("term lacks a word"))?
            .iter()
            .map(mode_from_json)
            .collect::<Result<Vec<_>>>()?;
        for mode in &modes {
            if !spec.is_free_lowering(mode) {
                return Err(bad(format!(
                    "mode {mode} does not index basis words of this family"
                )));
            }
        }
        let word = PbwWord::new(modes)?;
        let term = Term::new(word, base);
        if !out.coeff(&term).is_zero() {
            return Err(bad(format!("duplicate term {term}")));
        }
        out.add_term(term, coeff);
    }
    Ok(out)
}

pub fn vector_to_json(spec: &ModuleSpec, v: &ModuleVector) -> Value {
    json!({
        "spec": spec_to_json(spec),
        "terms": terms_to_json(v),
    })
}

pub fn vector_from_json(v: &Value) -> Result<(ModuleSpec, ModuleVector)> {
    let map = v
        .as_object()
        .ok_or_else(|| bad(format!("not a module vector: {v}")))?;
    let spec = spec_from_json(map.get("spec").ok_or_else(|| bad("vector lacks a spec"))?)?;
    let terms = terms_from_json(
        &spec,
        map.get("terms").ok_or_else(|| bad("vector lacks terms"))?,
    )?;
    Ok((spec, terms))
}

fn cell_to_json(cell: &GradedCell) -> Value {
    json!([cell.degree, cell.charge])
}

pub fn singular_to_json(spec: &ModuleSpec, sv: &SingularVector) -> Value {
    json!({
        "cell": cell_to_json(&sv.cell),
        "certificate": sv
            .certificate
            .iter()
            .map(|(mode, zero)| json!({ "mode": mode_to_json(mode), "zero": zero }))
            .collect::<Vec<Value>>(),
        "vector": vector_to_json(spec, &sv.vector),
        "verified": sv.verified(),
    })
}

pub fn window_to_json(w: &Window) -> Value {
    json!({
        "charge_max": w.charge_max,
        "charge_min": w.charge_min,
        "max_degree": w.max_degree,
    })
}

pub fn window_from_json(v: &Value) -> Result<Window> {
    let map = v
        .as_object()
        .ok_or_else(|| bad(format!("not a window: {v}")))?;
    let field = |name: &str| {
        map.get(name)
            .and_then(Value::as_i64)
            .ok_or_else(|| bad(format!("window needs integer field {name:?}")))
    };
    Ok(Window::new(
        field("max_degree")?,
        field("charge_min")?,
        field("charge_max")?,
    ))
}

pub fn table_to_json(t: &CharacterTable) -> Value {
    json!({
        "cells": t
            .cells
            .iter()
            .map(|((d, q), dim)| json!({ "charge": q, "degree": d, "dim": dim }))
            .collect::<Vec<Value>>(),
        "schema_version": SCHEMA_VERSION,
        "spec": spec_to_json(&t.spec),
        "window": window_to_json(&t.window),
    })
}

pub fn table_from_json(v: &Value) -> Result<CharacterTable> {
    let map = v
        .as_object()
        .ok_or_else(|| bad(format!("not a character table: {v}")))?;
    let spec = spec_from_json(map.get("spec").ok_or_else(|| bad("table lacks a spec"))?)?;
    let window = window_from_json(
        map.get("window")
            .ok_or_else(|| bad("table lacks a window"))?,
    )?;
    let mut cells = std::collections::BTreeMap::new();
    for item in map
        .get("cells")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("table lacks cells"))?
    {
        let cell = item
            .as_object()
            .ok_or_else(|| bad(format!("not a cell entry: {item}")))?;
        let get = |name: &str| {
            cell.get(name)
                .and_then(Value::as_i64)
                .ok_or_else(|| bad(format!("cell entry needs {name:?}")))
        };
        cells.insert((get("degree")?, get("charge")?), get("dim")? as usize);
    }
    Ok(CharacterTable {
        spec,
        window,
        cells,
    })
}

fn lattice_to_json(alpha: &LatticeElement) -> Value {
    json!([alpha.m1, alpha.m2])
}

pub fn extension_to_json(spec: &ModuleSpec, ev: &ExtensionVector) -> Value {
    json!({
        "components": ev
            .components
            .iter()
            .map(|(alpha, v)| {
                json!({
                    "alpha": lattice_to_json(alpha),
                    "vector": vector_to_json(spec, v),
                })
            })
            .collect::<Vec<Value>>(),
    })
}

pub fn report_to_json(r: &CheckReport) -> Value {
    let mut map = Map::new();
    map.insert("relation".into(), Value::String(r.relation.clone()));
    map.insert(
        "status".into(),
        Value::String(if r.ok { "pass" } else { "fail" }.into()),
    );
    map.insert("window".into(), Value::String(r.window.clone()));
    if let Some(ce) = &r.counterexample {
        map.insert("counterexample".into(), Value::String(ce.clone()));
    }
    Value::Object(map)
}

pub fn compare_outcome_to_json(outcome: &CompareOutcome) -> Value {
    match outcome {
        CompareOutcome::Equal => json!({ "status": "equal" }),
        CompareOutcome::Differs { cell, left, right } => json!({
            "cell": cell_to_json(cell),
            "left": left,
            "right": right,
            "status": "differs",
        }),
    }
}

pub fn flow_profile_to_json(p: &FlowProfile) -> Value {
    json!({
        "a_threshold": p.a_threshold,
        "a_threshold_expected": p.a_threshold_expected,
        "alpha": lattice_to_json(&p.alpha),
        "b_threshold": p.b_threshold,
        "b_threshold_expected": p.b_threshold_expected,
        "c0": scalar_to_json(&p.c0),
        "c0_expected": scalar_to_json(&p.c0_expected),
        "character_outcome": compare_outcome_to_json(&p.character_outcome),
        "d0": scalar_to_json(&p.d0),
        "d0_expected": scalar_to_json(&p.d0_expected),
        "flowed_character": table_to_json(&p.flowed_table),
        "matches": p.matches(),
        "target": spec_to_json(&p.target),
        "target_character": table_to_json(&p.target_table),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gv1() -> ModuleSpec {
        ModuleSpec::Gv1 {
            m: 1,
            c0: Scalar::zero(),
            d0: Scalar::new(1, 2),
        }
    }

    #[test]
    fn vector_round_trip() {
        let spec = gv1();
        let mut v = ModuleVector::zero();
        v.add_term(
            Term::new(
                PbwWord::new(vec![Mode::d(-3), Mode::b(0)]).unwrap(),
                BaseLabel::Hw,
            ),
            Scalar::new(-7, 3),
        );
        v.add_term(Term::base_only(BaseLabel::Hw), Scalar::from_int(2));
        let encoded = vector_to_json(&spec, &v);
        let (spec2, v2) = vector_from_json(&encoded).unwrap();
        assert_eq!(spec2, spec);
        assert_eq!(v2, v);
    }

    #[test]
    fn readers_reject_non_canonical_input() {
        // unsorted word
        let bad_word = serde_json::json!({
            "spec": spec_to_json(&gv1()),
            "terms": [{
                "base": "HW",
                "coeff": "1",
                "word": [["b", 0], ["d", -3]],
            }],
        });
        assert!(vector_from_json(&bad_word).is_err());
        // a mode above the annihilation threshold
        let bad_mode = serde_json::json!({
            "spec": spec_to_json(&gv1()),
            "terms": [{ "base": "HW", "coeff": "1", "word": [["b", 2]] }],
        });
        assert!(vector_from_json(&bad_mode).is_err());
        // zero coefficient
        let zero_coeff = serde_json::json!({
            "spec": spec_to_json(&gv1()),
            "terms": [{ "base": "HW", "coeff": "0", "word": [] }],
        });
        assert!(vector_from_json(&zero_coeff).is_err());
        // wrong base for the family
        let bad_base = serde_json::json!({
            "spec": spec_to_json(&gv1()),
            "terms": [{ "base": {"idx": 0}, "coeff": "1", "word": [] }],
        });
        assert!(vector_from_json(&bad_base).is_err());
    }

    #[test]
    fn spec_round_trips() {
        let specs = vec![
            ModuleSpec::vacuum0(),
            gv1(),
            ModuleSpec::Gv0 {
                c0: -2,
                d0: Scalar::new(1, 3),
            },
            ModuleSpec::Third {
                lambda: Scalar::new(1, 5),
                mu: Scalar::new(3, 2),
                nu: Scalar::new(1, 7),
                m: 0,
            },
            ModuleSpec::H4Verma {
                c0: Scalar::zero(),
                d0: Scalar::one(),
            },
        ];
        for spec in specs {
            let round = spec_from_json(&spec_to_json(&spec)).unwrap();
            assert_eq!(round, spec);
        }
    }

    #[test]
    fn keys_are_sorted() {
        let text = serde_json::to_string(&spec_to_json(&gv1())).unwrap();
        assert_eq!(text, r#"{"c":"0","d":"1/2","family":"gv1","m":1}"#);
    }
}
