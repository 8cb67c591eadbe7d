//! Canonical JSON interchange for [`MackeyFunctor`].
//!
//! ```text
//! {
//!   "group": "pq-nonab:3,7,2",
//!   "levels": { "G": {"free_rank": 1, "torsion": []}, ... },
//!   "res":    { "G>Cq": [[1]], ... },
//!   "tr":     { "G>Cq": [[3]], ... },
//!   "weyl":   { "Cq": [[[1]], [[2]], [[4]]], ... },
//!   "labels": { "G": ["[G/G]"] }
//! }
//! ```
//!
//! Matrices act on normal coordinates (torsion generators first). A level
//! may be omitted, which is how truncated functors are written. Objects are
//! emitted with sorted keys and integers outside the `i64` range are written
//! as decimal strings, so emitting a parsed document reproduces it exactly.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{Map, Value};

use super::{Ambient, MackeyBuilder, MackeyFunctor};
use crate::error::{Error, Result};
use crate::exact::{FgAbGroup, IntMatrix};
use crate::groups::GroupFamily;

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

fn matrix_value(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(int_value).collect()))
            .collect(),
    )
}

pub fn to_json(m: &MackeyFunctor) -> Value {
    let a = m.ambient();
    let mut levels = Map::new();
    for (&s, g) in m.levels() {
        let mut entry = Map::new();
        entry.insert("free_rank".into(), Value::from(g.free_rank()));
        entry.insert("torsion".into(), Value::Array(g.torsion().iter().map(int_value).collect()));
        levels.insert(a.name(s).to_string(), Value::Object(entry));
    }
    let maps = |stored: &BTreeMap<(usize, usize), crate::exact::AbHom>| {
        let mut out = Map::new();
        for (&(h, k), f) in stored {
            out.insert(format!("{}>{}", a.name(h), a.name(k)), matrix_value(&f.normal_matrix()));
        }
        Value::Object(out)
    };
    let mut weyl = Map::new();
    for &s in m.domain() {
        let ws = m.weyl(s).iter().map(|w| matrix_value(&w.normal_matrix())).collect();
        weyl.insert(a.name(s).to_string(), Value::Array(ws));
    }
    let mut doc = Map::new();
    doc.insert("group".into(), Value::String(a.family().to_string()));
    doc.insert("levels".into(), Value::Object(levels));
    doc.insert("res".into(), maps(m.restrictions()));
    doc.insert("tr".into(), maps(m.transfers()));
    doc.insert("weyl".into(), Value::Object(weyl));
    let labelled: Map<String, Value> = m
        .domain()
        .iter()
        .filter_map(|&s| {
            m.labels(s)
                .map(|l| (a.name(s).to_string(), Value::Array(l.iter().cloned().map(Value::String).collect())))
        })
        .collect();
    if !labelled.is_empty() {
        doc.insert("labels".into(), Value::Object(labelled));
    }
    Value::Object(doc)
}

pub fn to_json_string(m: &MackeyFunctor) -> String {
    let mut s = serde_json::to_string_pretty(&to_json(m)).expect("JSON values serialize");
    s.push('\n');
    s
}

fn parse_int(v: &Value, path: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| schema(path, "expected an integer")),
        Value::String(s) => s.parse::<BigInt>().map_err(|_| schema(path, "expected a decimal integer string")),
        _ => schema_err(path, "expected an integer"),
    }
}

fn schema_err<T>(path: &str, message: &str) -> Result<T> {
    Err(schema(path, message))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| schema(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

fn parse_matrix(v: &Value, rows: usize, cols: usize, path: &str) -> Result<IntMatrix> {
    let rs = array(v, path)?;
    if rs.len() != rows {
        return schema_err(path, &format!("expected {rows} rows, found {}", rs.len()));
    }
    let mut m = IntMatrix::zero(rows, cols);
    for (i, r) in rs.iter().enumerate() {
        let rp = format!("{path}[{i}]");
        let cs = array(r, &rp)?;
        if cs.len() != cols {
            return schema_err(&rp, &format!("expected {cols} entries, found {}", cs.len()));
        }
        for (j, x) in cs.iter().enumerate() {
            m[(i, j)] = parse_int(x, &format!("{rp}[{j}]"))?;
        }
    }
    Ok(m)
}

fn parse_level(v: &Value, path: &str) -> Result<FgAbGroup> {
    let o = object(v, path)?;
    for key in o.keys() {
        if key != "free_rank" && key != "torsion" {
            return schema_err(&format!("{path}.{key}"), "unknown field");
        }
    }
    let rank = o
        .get("free_rank")
        .ok_or_else(|| schema(format!("{path}.free_rank"), "missing field"))?
        .as_u64()
        .ok_or_else(|| schema(format!("{path}.free_rank"), "expected a nonnegative integer"))?;
    let tp = format!("{path}.torsion");
    let torsion = array(o.get("torsion").ok_or_else(|| schema(&tp, "missing field"))?, &tp)?
        .iter()
        .enumerate()
        .map(|(i, x)| parse_int(x, &format!("{tp}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    for (i, d) in torsion.iter().enumerate() {
        if d <= &BigInt::one() {
            return schema_err(&format!("{tp}[{i}]"), "invariant factors must exceed 1");
        }
        if i > 0 && !(d % &torsion[i - 1]).is_zero() {
            return schema_err(&format!("{tp}[{i}]"), "each invariant factor must divide the next");
        }
    }
    Ok(FgAbGroup::from_invariants(&torsion, rank as usize))
}

fn split_pair(a: &Ambient, key: &str, path: &str) -> Result<(usize, usize)> {
    let (h, k) = key
        .split_once('>')
        .ok_or_else(|| schema(path, "expected a key of the form \"H>K\""))?;
    let slot = |n: &str| a.slot(n).map_err(|_| schema(path, format!("unknown subgroup class {n:?}")));
    Ok((slot(h)?, slot(k)?))
}

pub fn from_json(v: &Value) -> Result<MackeyFunctor> {
    let doc = object(v, "$")?;
    for key in doc.keys() {
        if !["group", "levels", "res", "tr", "weyl", "labels"].contains(&key.as_str()) {
            return schema_err(&format!("$.{key}"), "unknown field");
        }
    }
    let family: GroupFamily = doc
        .get("group")
        .and_then(Value::as_str)
        .ok_or_else(|| schema("$.group", "expected a group specifier string"))?
        .parse()
        .map_err(|e: Error| schema("$.group", e.to_string()))?;
    let ambient = Ambient::new(&family).map_err(|e| schema("$.group", e.to_string()))?;

    let mut levels = BTreeMap::new();
    let lv = doc.get("levels").ok_or_else(|| schema("$.levels", "missing field"))?;
    for (name, g) in object(lv, "$.levels")? {
        let path = format!("$.levels.{name}");
        let s = ambient.slot(name).map_err(|_| schema(&path, "unknown subgroup class"))?;
        levels.insert(s, parse_level(g, &path)?);
    }
    let mut b = MackeyBuilder::new(&ambient, levels);
    let level = |b: &MackeyBuilder, s: usize, path: &str| -> Result<Arc<FgAbGroup>> {
        b.level(s)
            .map_err(|_| schema(path, format!("level {} is not listed", ambient.name(s))))
    };

    for field in ["res", "tr"] {
        let root = format!("$.{field}");
        let Some(maps) = doc.get(field) else {
            continue;
        };
        for (key, mv) in object(maps, &root)? {
            let path = format!("{root}.{key}");
            let (h, k) = split_pair(&ambient, key, &path)?;
            let (mh, mk) = (level(&b, h, &path)?, level(&b, k, &path)?);
            let wrap = |e: Error| schema(&path, e.to_string());
            if field == "res" {
                let m = parse_matrix(mv, mk.normal_len(), mh.normal_len(), &path)?;
                b.res_normal(h, k, &m).map_err(wrap)?;
            } else {
                let m = parse_matrix(mv, mh.normal_len(), mk.normal_len(), &path)?;
                b.tr_normal(h, k, &m).map_err(wrap)?;
            }
        }
    }

    if let Some(ws) = doc.get("weyl") {
        for (name, list) in object(ws, "$.weyl")? {
            let path = format!("$.weyl.{name}");
            let s = ambient.slot(name).map_err(|_| schema(&path, "unknown subgroup class"))?;
            let g = level(&b, s, &path)?;
            let mats = array(list, &path)?;
            let order = ambient.weyl(s).order();
            if mats.len() != order {
                return schema_err(&path, &format!("expected {order} matrices, one per Weyl coset"));
            }
            for (i, mv) in mats.iter().enumerate() {
                let p = format!("{path}[{i}]");
                let m = parse_matrix(mv, g.normal_len(), g.normal_len(), &p)?;
                let f = crate::exact::AbHom::from_normal(g.clone(), g.clone(), &m).map_err(|e| schema(&p, e.to_string()))?;
                b.set_weyl(s, i, f).map_err(|e| schema(&p, e.to_string()))?;
            }
        }
    }

    if let Some(ls) = doc.get("labels") {
        for (name, list) in object(ls, "$.labels")? {
            let path = format!("$.labels.{name}");
            let s = ambient.slot(name).map_err(|_| schema(&path, "unknown subgroup class"))?;
            let g = level(&b, s, &path)?;
            let labels = array(list, &path)?
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    x.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| schema(format!("{path}[{i}]"), "expected a string"))
                })
                .collect::<Result<Vec<_>>>()?;
            if labels.len() != g.normal_len() {
                return schema_err(&path, "expected one label per normal generator");
            }
            b.set_labels(s, labels);
        }
    }
    b.build().map_err(|e| schema("$", e.to_string()))
}

pub fn from_json_str(text: &str) -> Result<MackeyFunctor> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        position: e.column(),
        message: format!("line {}: {e}", e.line()),
    })?;
    from_json(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::{burnside, catalog, catalog_names, is_isomorphic};

    #[test]
    fn roundtrip_is_byte_identical() {
        for fam in ["pq-nonab:3,7,2", "pq-ab:3,5", "a4", "cyclic:5"] {
            let a = Ambient::new(&fam.parse().unwrap()).unwrap();
            let mut all: Vec<MackeyFunctor> = catalog_names(a.family()).iter().map(|n| catalog(n, &a).unwrap()).collect();
            all.push(burnside(&a).unwrap());
            for m in all {
                let text = to_json_string(&m);
                let back = from_json_str(&text).unwrap();
                assert_eq!(to_json_string(&back), text);
                if m.levels().values().all(|g| g.is_cyclic() || g.is_trivial()) {
                    assert!(is_isomorphic(&m, &back).unwrap());
                }
            }
        }
    }

    #[test]
    fn truncated_documents_parse() {
        let a = Ambient::new(&"pq-nonab:3,7,2".parse().unwrap()).unwrap();
        let m = catalog(&crate::mackey::CatalogName::ConstZ { a: 1, b: 1 }, &a).unwrap().truncate();
        let v = to_json(&m);
        assert!(v["levels"].get("G").is_none());
        let back = from_json(&v).unwrap();
        assert!(!back.has_top());
    }

    #[test]
    fn schema_errors_carry_paths() {
        let bad = [
            (
                r#"{"group":"pq-nonab:3,7,2","levels":{"G":{"free_rank":0,"torsion":[3,2]}}}"#,
                "$.levels.G.torsion[1]",
            ),
            (
                r#"{"group":"pq-nonab:3,7,2","levels":{"X":{"free_rank":1,"torsion":[]}}}"#,
                "$.levels.X",
            ),
            (r#"{"group":"nope","levels":{}}"#, "$.group"),
            (
                r#"{"group":"cyclic:3","levels":{"G":{"free_rank":1,"torsion":[]},"e":{"free_rank":1,"torsion":[]}},"res":{"G>e":[[1,2]]}}"#,
                "$.res.G>e[0]",
            ),
            (
                r#"{"group":"cyclic:3","levels":{"G":{"free_rank":1,"torsion":[]},"e":{"free_rank":1,"torsion":[]}}}"#,
                "$",
            ),
        ];
        for (text, want) in bad {
            match from_json_str(text) {
                Err(Error::Schema { path, .. }) => assert_eq!(path, want, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        assert!(matches!(from_json_str("{"), Err(Error::Parse { .. })));
    }
}
