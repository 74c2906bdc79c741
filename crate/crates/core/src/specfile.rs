//! JSON form of a spec.
//!
//! ```json
//! {"family": "the_ts", "gamma": 2, "L": [2, 3], "tail": "repeat_last"}
//! {"family": "the_ts", "gamma": {"rule": "linear", "slope": 1, "intercept": 1}, "L": {"rule": "factorial", "offset": 1}}
//! {"family": "explicit", "stages": [{"s": [0, 1, 0]}], "tail": "repeat_cycle", "spacer_bound": 3}
//! {"family": "chacon"}
//! ```
//!
//! Integers may be JSON numbers or decimal strings (for values past `u64`).
//! A list given as a plain array uses the top-level `tail`; the object form
//! `{"rule": "list", "values": [...], "tail": ...}` carries its own.

use std::path::Path;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::construction::{FamilyTag, RankOneSpec, SeqRule, SpacerRow, StageRule, Tail, TheTsParams};
use crate::error::{Error, Result};

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gamma: Option<Value>,
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    l: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    stages: Option<Vec<StageEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tail: Option<Tail>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    spacer_bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    description: Option<String>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct StageEntry {
    s: Vec<u64>,
}

fn format_err(msg: impl Into<String>) -> Error {
    Error::SpecFormat(msg.into())
}

fn parse_int(v: &Value, what: &str) -> Result<BigUint> {
    match v {
        Value::Number(n) => n
            .as_u64()
            .map(BigUint::from)
            .ok_or_else(|| format_err(format!("{what}: expected a nonnegative integer, got {n}"))),
        Value::String(s) => s
            .parse()
            .map_err(|_| format_err(format!("{what}: `{s}` is not a decimal integer"))),
        other => Err(format_err(format!("{what}: expected an integer, got {other}"))),
    }
}

fn int_value(x: &BigUint) -> Value {
    match x.to_u64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn parse_tail(v: &Value, what: &str) -> Result<Tail> {
    serde_json::from_value(v.clone()).map_err(|e| format_err(format!("{what}: {e}")))
}

fn parse_rule(v: &Value, tail: Tail, what: &str) -> Result<SeqRule> {
    match v {
        Value::Array(items) => {
            if items.is_empty() {
                return Err(format_err(format!("{what}: empty list")));
            }
            Ok(SeqRule::List {
                values: items.iter().map(|x| parse_int(x, what)).collect::<Result<_>>()?,
                tail,
            })
        }
        Value::Object(map) => {
            let field = |name: &str| {
                map.get(name)
                    .ok_or_else(|| format_err(format!("{what}: missing `{name}`")))
            };
            let rule = field("rule")?
                .as_str()
                .ok_or_else(|| format_err(format!("{what}: `rule` must be a string")))?;
            let allowed: &[&str] = match rule {
                "linear" => &["rule", "slope", "intercept"],
                "factorial" => &["rule", "offset"],
                "list" => &["rule", "values", "tail"],
                other => return Err(format_err(format!("{what}: unknown rule `{other}`"))),
            };
            if let Some(k) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
                return Err(format_err(format!("{what}: unexpected field `{k}`")));
            }
            match rule {
                "linear" => Ok(SeqRule::Linear {
                    slope: parse_int(field("slope")?, what)?,
                    intercept: parse_int(field("intercept")?, what)?,
                }),
                "factorial" => Ok(SeqRule::Factorial {
                    offset: parse_int(field("offset")?, what)?
                        .to_u64()
                        .ok_or_else(|| format_err(format!("{what}: offset too large")))?,
                }),
                _ => {
                    let tail = match map.get("tail") {
                        Some(t) => parse_tail(t, what)?,
                        None => tail,
                    };
                    parse_rule(field("values")?, tail, what)
                }
            }
        }
        _ => Ok(SeqRule::Constant(parse_int(v, what)?)),
    }
}

fn rule_value(rule: &SeqRule, shared_tail: Tail) -> Value {
    match rule {
        SeqRule::Constant(x) => int_value(x),
        SeqRule::List { values, tail } => {
            let list = Value::Array(values.iter().map(int_value).collect());
            if *tail == shared_tail {
                list
            } else {
                json!({"rule": "list", "values": list, "tail": tail})
            }
        }
        SeqRule::Linear { slope, intercept } => {
            json!({"rule": "linear", "slope": int_value(slope), "intercept": int_value(intercept)})
        }
        SeqRule::Factorial { offset } => json!({"rule": "factorial", "offset": offset}),
    }
}

pub fn parse_spec(text: &str) -> Result<RankOneSpec> {
    let file: SpecFile =
        serde_json::from_str(text).map_err(|e| format_err(format!("spec JSON: {e}")))?;
    let tail = file.tail.unwrap_or_default();
    let expect_none = |present: bool, field: &str| {
        if present {
            Err(format_err(format!("`{field}` is not used by family `{}`", file.family)))
        } else {
            Ok(())
        }
    };
    let spec = match file.family.as_str() {
        "the_ts" => {
            expect_none(file.stages.is_some(), "stages")?;
            let gamma = file.gamma.as_ref().ok_or_else(|| format_err("the_ts needs `gamma`"))?;
            let l = file.l.as_ref().ok_or_else(|| format_err("the_ts needs `L`"))?;
            RankOneSpec::the_ts(TheTsParams::new(
                parse_rule(gamma, tail, "gamma")?,
                parse_rule(l, tail, "L")?,
            )?)
        }
        "explicit" => {
            expect_none(file.gamma.is_some() || file.l.is_some(), "gamma/L")?;
            let stages = file
                .stages
                .as_ref()
                .ok_or_else(|| format_err("explicit needs `stages`"))?;
            let rows = stages
                .iter()
                .map(|st| SpacerRow::new(st.s.clone()))
                .collect::<Result<Vec<_>>>()?;
            RankOneSpec::explicit(rows, tail)?
        }
        "ferenczi" | "chacon" => {
            expect_none(
                file.gamma.is_some() || file.l.is_some() || file.stages.is_some(),
                "gamma/L/stages",
            )?;
            RankOneSpec::named(&file.family)?
        }
        other => return Err(Error::UnknownFamily(other.to_string())),
    };
    Ok(match file.spacer_bound {
        Some(k) => spec.with_spacer_bound(k),
        None => spec,
    })
}

pub fn load_spec(path: impl AsRef<Path>) -> Result<RankOneSpec> {
    parse_spec(&std::fs::read_to_string(path)?)
}

/// JSON form of `params` as a `the_ts` spec.
pub fn params_to_json(params: &TheTsParams) -> Value {
    let tail = match (params.gamma_rule(), params.l_rule()) {
        (SeqRule::List { tail, .. }, _) | (_, SeqRule::List { tail, .. }) => *tail,
        _ => Tail::default(),
    };
    let mut map = Map::new();
    map.insert("family".into(), json!("the_ts"));
    map.insert("gamma".into(), rule_value(params.gamma_rule(), tail));
    map.insert("L".into(), rule_value(params.l_rule(), tail));
    if matches!(params.gamma_rule(), SeqRule::List { .. })
        || matches!(params.l_rule(), SeqRule::List { .. })
    {
        map.insert("tail".into(), json!(tail));
    }
    Value::Object(map)
}

/// JSON form of a spec. Rule-defined (custom) specs have no finite
/// description, so their first `horizon` rows are written out as an explicit
/// spec that repeats its last row.
pub fn spec_to_json(spec: &RankOneSpec, horizon: usize) -> Result<Value> {
    let mut value = match spec.rule() {
        StageRule::TheTs(p) => params_to_json(p),
        StageRule::Repeating(_) if matches!(spec.family(), FamilyTag::Ferenczi | FamilyTag::Chacon) => {
            json!({"family": spec.family().to_string()})
        }
        StageRule::Repeating(row) => json!({
            "family": "explicit",
            "stages": [{"s": row.spacers()}],
            "tail": Tail::RepeatLast,
        }),
        StageRule::Explicit { rows, tail } => json!({
            "family": "explicit",
            "stages": rows.iter().map(|r| json!({"s": r.spacers()})).collect::<Vec<_>>(),
            "tail": tail,
        }),
        StageRule::Custom { description, .. } => {
            if horizon == 0 {
                return Err(Error::InvalidParameter("need horizon >= 1".into()));
            }
            let rows = (1..=horizon)
                .map(|n| Ok(json!({"s": spec.row(n)?.spacers()})))
                .collect::<Result<Vec<_>>>()?;
            json!({
                "family": "explicit",
                "stages": rows,
                "tail": Tail::RepeatLast,
                "description": format!("{description}; stages 1..={horizon}"),
            })
        }
    };
    if let Some(k) = spec.spacer_bound() {
        value["spacer_bound"] = json!(k);
    }
    Ok(value)
}
