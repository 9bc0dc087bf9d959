use std::sync::Arc;

use serde_json::{json, Map, Value};

use super::cochain::Cochain;
use super::module::{CoefModule, ModuleKind};
use crate::error::{Error, Result};
use crate::qmodz::QmodZ;

/// `{"degree":n,"modulus":m,"values":{"g1,g2":"a/b" | {"label":"a/b"}}}`; zero values are
/// omitted.
pub fn cochain_to_json(c: &Cochain) -> Value {
    let module = c.module();
    let scalar = module.dim() == 1 && *module.kind() == ModuleKind::Trivial;
    let mut values = Map::new();
    for (t, k, v) in c.nonzero() {
        let key = t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        if scalar {
            values.insert(key, Value::String(v.to_string()));
        } else {
            let entry = values.entry(key).or_insert_with(|| Value::Object(Map::new()));
            entry
                .as_object_mut()
                .expect("object")
                .insert(module.labels()[k].clone(), Value::String(v.to_string()));
        }
    }
    json!({"degree": c.degree(), "modulus": c.modulus(), "values": values})
}

pub fn cochain_from_json(v: &Value, module: &Arc<CoefModule>) -> Result<Cochain> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("cochain must be a JSON object".into()))?;
    let degree = obj
        .get("degree")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("cochain needs an integer \"degree\"".into()))? as usize;
    let declared = obj.get("modulus").and_then(Value::as_u64);
    let mut c = Cochain::zero(module, degree, declared.unwrap_or(1).max(1));
    let n = module.group().order();
    let empty = Map::new();
    let values = match obj.get("values") {
        None => &empty,
        Some(Value::Object(m)) => m,
        Some(_) => return Err(Error::Parse("\"values\" must be an object".into())),
    };
    for (key, val) in values {
        let t: Vec<usize> = if key.is_empty() {
            Vec::new()
        } else {
            key.split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(format!("bad tuple key {key:?}")))?
        };
        if t.len() != degree || t.iter().any(|&x| x >= n) {
            return Err(Error::Parse(format!("tuple {key:?} does not fit degree {degree} over order {n}")));
        }
        let parse = |s: &Value| -> Result<QmodZ> {
            s.as_str()
                .ok_or_else(|| Error::Parse(format!("value at {key:?} must be a string \"a/b\"")))?
                .parse::<QmodZ>()
        };
        let entries: Vec<(usize, QmodZ)> = match val {
            Value::Object(m) => m
                .iter()
                .map(|(label, s)| {
                    let k = module
                        .label_index(label)
                        .ok_or_else(|| Error::Parse(format!("unknown coordinate {label:?} at {key:?}")))?;
                    Ok((k, parse(s)?))
                })
                .collect::<Result<_>>()?,
            other if module.dim() == 1 => vec![(0, parse(other)?)],
            _ => return Err(Error::Parse(format!("value at {key:?} needs coordinate labels"))),
        };
        for (k, q) in entries {
            if q.is_zero() {
                continue;
            }
            if t.contains(&0) {
                return Err(Error::Parse(format!("nonzero value at {key:?} breaks normalization")));
            }
            c.set(&t, k, q)?;
        }
    }
    if let Some(m) = declared {
        if m % c.modulus() == 0 {
            c = c.with_modulus(m);
        } else {
            return Err(Error::Parse(format!("values need modulus {} but {m} was declared", c.modulus())));
        }
    }
    Ok(c)
}
