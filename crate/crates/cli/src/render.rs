use std::collections::BTreeMap;

use mackey_core::exact::FgAbGroup;
use mackey_core::groups::GroupFamily;
use mackey_core::mackey::{to_json, CatalogName, MackeyFunctor};
use serde_json::{json, Map, Value};

/// One nonzero degree of a homology table.
#[derive(Clone, Debug)]
pub struct Row {
    pub degree: i64,
    pub names: Vec<CatalogName>,
    /// `None` when the top level is not determined.
    pub top: Option<FgAbGroup>,
    pub functor: Option<MackeyFunctor>,
}

#[derive(Clone, Debug)]
pub struct Table {
    pub family: GroupFamily,
    pub rep: String,
    pub mode: &'static str,
    pub rows: Vec<Row>,
    pub notes: Vec<String>,
}

impl Table {
    pub fn names(&self) -> BTreeMap<i64, Vec<CatalogName>> {
        self.rows.iter().map(|r| (r.degree, r.names.clone())).collect()
    }
}

fn summands_text(family: &GroupFamily, names: &[CatalogName]) -> String {
    names.iter().map(|n| n.text(family)).collect::<Vec<_>>().join(" + ")
}

fn group_text(g: &Option<FgAbGroup>) -> String {
    g.as_ref().map_or_else(|| "?".into(), ToString::to_string)
}

pub fn text(t: &Table) -> String {
    let mut cols: Vec<[String; 3]> = vec![["degree".into(), "M".into(), "M(G/G)".into()]];
    for r in &t.rows {
        cols.push([r.degree.to_string(), summands_text(&t.family, &r.names), group_text(&r.top)]);
    }
    let widths: Vec<usize> = cols
        .iter()
        .map(|c| c.iter().map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = format!("group {}  V = {}  mode {}\n", t.family, t.rep, t.mode);
    for line in 0..3 {
        let cells: Vec<String> = cols.iter().zip(&widths).map(|(c, w)| format!("{:<w$}", c[line], w = *w)).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    for n in &t.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    out
}

fn level_json(g: &FgAbGroup) -> Value {
    let g = g.normal_form();
    json!({
        "free_rank": g.free_rank(),
        "torsion": g.torsion().iter().map(|d| d.to_string().parse::<i64>().map_or_else(|_| Value::String(d.to_string()), Value::from)).collect::<Vec<_>>(),
    })
}

pub fn json_value(t: &Table) -> Value {
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|r| {
            let mut row = Map::new();
            row.insert("degree".into(), r.degree.into());
            row.insert(
                "summands".into(),
                r.names.iter().map(|n| Value::String(n.text(&t.family))).collect(),
            );
            row.insert("top".into(), r.top.as_ref().map_or(Value::Null, level_json));
            if let Some(m) = &r.functor {
                row.insert("functor".into(), to_json(m));
            }
            Value::Object(row)
        })
        .collect();
    json!({
        "group": t.family.to_string(),
        "rep": t.rep,
        "mode": t.mode,
        "degrees": rows,
        "notes": t.notes,
    })
}

pub fn json(t: &Table) -> String {
    let mut s = serde_json::to_string_pretty(&json_value(t)).expect("JSON values serialize");
    s.push('\n');
    s
}

fn group_latex(g: &Option<FgAbGroup>) -> String {
    let Some(g) = g else {
        return "?".into();
    };
    if g.is_trivial() {
        return "0".into();
    }
    let mut parts = Vec::new();
    match g.free_rank() {
        0 => {}
        1 => parts.push(r"\mathbb{Z}".to_string()),
        r => parts.push(format!(r"\mathbb{{Z}}^{{{r}}}")),
    }
    parts.extend(g.torsion().iter().map(|d| format!(r"\mathbb{{Z}}/{d}")));
    parts.join(r" \oplus ")
}

pub fn latex(t: &Table) -> String {
    let math = |s: String| format!("${s}$");
    let mut out = format!("\\begin{{tabular}}{{l|{}}}\n", "c".repeat(t.rows.len()));
    let degrees: Vec<String> = t.rows.iter().map(|r| math(r.degree.to_string())).collect();
    let functors: Vec<String> = t
        .rows
        .iter()
        .map(|r| math(r.names.iter().map(|n| n.latex(&t.family)).collect::<Vec<_>>().join(r" \oplus ")))
        .collect();
    let tops: Vec<String> = t.rows.iter().map(|r| math(group_latex(&r.top))).collect();
    out.push_str(&format!("$n$ & {} \\\\\n\\hline\n", degrees.join(" & ")));
    out.push_str(&format!("$\\underline{{H}}_n$ & {} \\\\\n", functors.join(" & ")));
    out.push_str(&format!("$\\underline{{H}}_n(G/G)$ & {} \\\\\n", tops.join(" & ")));
    out.push_str("\\end{tabular}\n");
    out
}
