use std::sync::Arc;

use mackey_core::closedform::{a4_top_degree, closed_table, sylow_restriction_form, LocalName};
use mackey_core::exact::FgAbGroup;
use mackey_core::groups::{is_prime, GroupFamily};
use mackey_core::mackey::{catalog, Ambient, CatalogName};
use mackey_core::spheres::{homology_mackey, signed_sphere_complex, HomologyTable, LevelMode, PqAssembler, RepLabel, VirtualRep};
use mackey_core::{Error, Result};

use crate::render::{Row, Table};

fn from_homology(v: &VirtualRep, mode: &'static str, h: &HomologyTable) -> Result<Table> {
    let top = h.ambient().top();
    let rows = h
        .names()?
        .into_iter()
        .map(|(degree, names)| Row {
            degree,
            names,
            top: Some(h.level(degree, top).normal_form()),
            functor: h.functor(degree).cloned(),
        })
        .collect();
    Ok(Table {
        family: v.family().clone(),
        rep: v.to_string(),
        mode,
        rows,
        notes: Vec::new(),
    })
}

fn rotations(v: &VirtualRep) -> Vec<(u64, i64)> {
    v.coeffs()
        .iter()
        .filter_map(|(l, c)| match l {
            RepLabel::V(i) => Some((*i, *c)),
            RepLabel::W(_) => None,
        })
        .collect()
}

fn catalog_top(name: &CatalogName, amb: &Arc<Ambient>) -> Result<FgAbGroup> {
    Ok(catalog(name, amb)?.level(amb.top())?.as_ref().clone())
}

/// Closed-form table; for the `pq` families the functors come from the
/// closed-form Sylow levels glued by recovery.
pub fn closed(v: &VirtualRep) -> Result<Table> {
    let family = v.family().clone();
    let mut notes = Vec::new();
    let rows = match &family {
        GroupFamily::PqNonabelian { .. } | GroupFamily::PqAbelian { .. } => {
            let table = closed_table(v)?;
            let tops = table.top_levels()?;
            let functors = PqAssembler::new(&family)?.assemble(v, LevelMode::Closed)?;
            table
                .names()
                .into_iter()
                .map(|(degree, names)| Row {
                    degree,
                    names,
                    top: tops.get(&degree).cloned(),
                    functor: functors.functor(degree).cloned(),
                })
                .collect()
        }
        GroupFamily::Cyclic { n } if is_prime(*n) => {
            let amb = Ambient::new(&family)?;
            let m: i64 = rotations(v).iter().map(|(_, c)| c).sum();
            let mut rows: Vec<Row> = Vec::new();
            for (degree, local) in sylow_restriction_form(v.t(), m) {
                let name = match local {
                    LocalName::Z => CatalogName::ConstZ { a: 1, b: 1 },
                    LocalName::ZStar => CatalogName::ConstZ { a: *n, b: 1 },
                    LocalName::Hat => CatalogName::HatZp,
                };
                rows.push(Row {
                    degree,
                    top: Some(catalog_top(&name, &amb)?),
                    functor: Some(catalog(&name, &amb)?),
                    names: vec![name],
                });
            }
            rows
        }
        GroupFamily::A4 => {
            let (t, r, s) = (v.t(), v.coeff(RepLabel::V(1)), v.coeff(RepLabel::W(1)));
            let (degree, name) = a4_top_degree(t, r, s);
            notes.push("only the constant summand is determined; torsion summands are not computed".into());
            let amb = Ambient::new(&family)?;
            vec![Row {
                degree,
                top: Some(catalog_top(&name, &amb)?),
                functor: Some(catalog(&name, &amb)?),
                names: vec![name],
            }]
        }
        f => return Err(Error::Unsupported(format!("closed-form tables for {f}"))),
    };
    Ok(Table {
        family,
        rep: v.to_string(),
        mode: "closed",
        rows,
        notes,
    })
}

/// Homology computed from explicit equivariant chain complexes.
pub fn brute(v: &VirtualRep) -> Result<Table> {
    match v.family() {
        GroupFamily::PqNonabelian { .. } | GroupFamily::PqAbelian { .. } => {
            let h = PqAssembler::new(v.family())?.assemble(v, LevelMode::Brute)?;
            from_homology(v, "brute", &h)
        }
        GroupFamily::Cyclic { .. } => {
            let group = Arc::new(v.family().build()?);
            let c = signed_sphere_complex(&group, &rotations(v), v.t())?;
            from_homology(v, "brute", &homology_mackey(&c, None)?)
        }
        f => Err(Error::Unsupported(format!("brute-force homology for {f}"))),
    }
}
