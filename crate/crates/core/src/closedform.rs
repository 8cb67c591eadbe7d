//! Closed-form homology of representation spheres: tables of catalog
//! functors indexed by degree, evaluated directly from the coefficients of
//! a virtual representation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::FgAbGroup;
use crate::groups::{pow_mod, GroupFamily};
use crate::mackey::{catalog, Ambient, CatalogName};
use crate::spheres::{reduce_to_sylow, HomologyTable, Side, VirtualRep};

/// Homology of a sphere over a cyclic group of prime order, as a functor on
/// the two levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LocalName {
    /// Constant `Z`: restriction `1`, transfer the index.
    Z,
    /// Dual constant `Z`: restriction the index, transfer `1`.
    ZStar,
    /// `Z/ℓ` at the top, `0` at the bottom.
    Hat,
}

impl fmt::Display for LocalName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LocalName::Z => "Z",
            LocalName::ZStar => "Z*",
            LocalName::Hat => "hat",
        })
    }
}

/// Nonzero homology of `S^{t + m·V}` over `C_ℓ`, in increasing degree.
pub fn sylow_restriction_form(t: i64, m: i64) -> Vec<(i64, LocalName)> {
    let mut out = Vec::new();
    if m >= 0 {
        out.extend((0..m).map(|i| (t + 2 * i, LocalName::Hat)));
        out.push((t + 2 * m, LocalName::Z));
    } else {
        out.push((t + 2 * m, LocalName::ZStar));
        out.extend((1..=-(m + 1)).rev().map(|i| (t - 2 * i - 1, LocalName::Hat)));
    }
    out
}

/// Which part of a closed form produced an entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Clause {
    /// The constant functor in the dimension of the representation.
    Top,
    /// `p`-torsion in degrees `t_p + 2i`, `0 ≤ i < m_p`.
    PTorsionAbove,
    /// `p`-torsion in degrees `t_p - 2i - 1`, `1 ≤ i < -m_p`.
    PTorsionBelow,
    /// `q`-torsion in degrees `t_q + 2i`, `0 ≤ i < m_q`.
    QTorsionAbove,
    /// `q`-torsion in degrees `t_q - 2i - 1`, `1 ≤ i < -m_q`.
    QTorsionBelow,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::Top => "top",
            Clause::PTorsionAbove => "p-torsion, m_p > 0",
            Clause::PTorsionBelow => "p-torsion, m_p < 0",
            Clause::QTorsionAbove => "q-torsion, m_q > 0",
            Clause::QTorsionBelow => "q-torsion, m_q < 0",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedEntry {
    pub name: CatalogName,
    pub clause: Clause,
}

/// Catalog functors per degree; every summand comes with its clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormTable {
    family: GroupFamily,
    entries: BTreeMap<i64, Vec<ClosedEntry>>,
}

impl ClosedFormTable {
    fn new(family: &GroupFamily) -> Self {
        Self {
            family: family.clone(),
            entries: BTreeMap::new(),
        }
    }

    fn push(&mut self, degree: i64, name: CatalogName, clause: Clause) {
        self.entries.entry(degree).or_default().push(ClosedEntry { name, clause });
    }

    pub fn family(&self) -> &GroupFamily {
        &self.family
    }

    pub fn entries(&self) -> &BTreeMap<i64, Vec<ClosedEntry>> {
        &self.entries
    }

    /// Sorted names per degree.
    pub fn names(&self) -> BTreeMap<i64, Vec<CatalogName>> {
        self.entries
            .iter()
            .map(|(&n, es)| {
                let mut v: Vec<CatalogName> = es.iter().map(|e| e.name.clone()).collect();
                v.sort();
                (n, v)
            })
            .collect()
    }

    /// Direct sums of the top levels of the named functors.
    pub fn top_levels(&self) -> Result<BTreeMap<i64, FgAbGroup>> {
        let amb = Ambient::new(&self.family)?;
        let mut out = BTreeMap::new();
        for (&n, es) in &self.entries {
            let mut tops = Vec::new();
            for e in es {
                tops.push(catalog(&e.name, &amb)?.level(amb.top())?.as_ref().clone());
            }
            let refs: Vec<&FgAbGroup> = tops.iter().collect();
            out.insert(n, FgAbGroup::direct_sum(&refs).normal_form());
        }
        Ok(out)
    }

    /// The first degree, and then the first level, at which a computed
    /// table disagrees with this one.
    pub fn first_difference(&self, got: &HomologyTable) -> Result<Option<String>> {
        let amb = got.ambient();
        let (want, have) = (self.names(), got.names()?);
        let show = |names: Option<&Vec<CatalogName>>| match names {
            None => "0".to_string(),
            Some(ns) => ns.iter().map(|n| n.text(&self.family)).collect::<Vec<_>>().join(" + "),
        };
        let degrees: BTreeSet<i64> = want.keys().chain(have.keys()).copied().collect();
        for n in degrees {
            let (w, h) = (want.get(&n), have.get(&n));
            if w != h {
                return Ok(Some(format!("degree {n}: expected {}, found {}", show(w), show(h))));
            }
            let functors = w.into_iter().flatten().map(|name| catalog(name, amb)).collect::<Result<Vec<_>>>()?;
            for slot in 0..amb.slot_count() {
                let parts = functors
                    .iter()
                    .map(|m| m.level(slot).map(|g| g.as_ref()))
                    .collect::<Result<Vec<_>>>()?;
                let expected = FgAbGroup::direct_sum(&parts);
                let found = got.level(n, slot);
                if !expected.is_isomorphic(&found) {
                    return Ok(Some(format!(
                        "degree {n}, level {}: expected {expected}, found {found}",
                        amb.name(slot)
                    )));
                }
            }
        }
        Ok(None)
    }
}

fn pq_of(v: &VirtualRep) -> Result<(u64, u64)> {
    v.family()
        .pq()
        .ok_or_else(|| Error::Unsupported(format!("closed forms for {}", v.family())))
}

/// `k^e mod q` for a possibly negative exponent, using `k^p = 1`.
fn k_power(k: u64, e: i64, p: u64, q: u64) -> u64 {
    pow_mod(k, e.rem_euclid(p as i64) as u64, q)
}

fn torsion_entries(table: &mut ClosedFormTable, t: i64, m: i64, name: impl Fn(i64) -> CatalogName, above: Clause, below: Clause) {
    if m > 0 {
        for i in 0..m {
            table.push(t + 2 * i, name(i), above);
        }
    } else {
        for i in 1..=-(m + 1) {
            table.push(t - 2 * i - 1, name(-i), below);
        }
    }
}

/// Homology of `S^V` for the nonabelian group of order `pq`.
pub fn nonabelian_table(v: &VirtualRep) -> Result<ClosedFormTable> {
    let GroupFamily::PqNonabelian { p, q, k } = *v.family() else {
        return Err(Error::Unsupported(format!("nonabelian closed form for {}", v.family())));
    };
    let (tp, mp) = reduce_to_sylow(v, Side::P)?;
    let (tq, mq) = reduce_to_sylow(v, Side::Q)?;
    let mut table = ClosedFormTable::new(v.family());
    let a = if mp < 0 { p } else { 1 };
    let b = if v.s() < 0 { q } else { 1 };
    table.push(v.dim(), CatalogName::ConstZ { a, b }, Clause::Top);
    torsion_entries(
        &mut table,
        tp,
        mp,
        |_| CatalogName::HatZp,
        Clause::PTorsionAbove,
        Clause::PTorsionBelow,
    );
    torsion_entries(
        &mut table,
        tq,
        mq,
        |i| CatalogName::HatZq { e: k_power(k, i, p, q) },
        Clause::QTorsionAbove,
        Clause::QTorsionBelow,
    );
    Ok(table)
}

/// Homology of `S^V` for the cyclic group of order `pq`.
pub fn abelian_table(v: &VirtualRep) -> Result<ClosedFormTable> {
    if !matches!(v.family(), GroupFamily::PqAbelian { .. }) {
        return Err(Error::Unsupported(format!("abelian closed form for {}", v.family())));
    }
    let (p, q) = pq_of(v)?;
    let (tp, r) = reduce_to_sylow(v, Side::P)?;
    let (tq, s) = reduce_to_sylow(v, Side::Q)?;
    let mut table = ClosedFormTable::new(v.family());
    let a = if r < 0 { p } else { 1 };
    let b = if s < 0 { q } else { 1 };
    table.push(v.dim(), CatalogName::ConstZ { a, b }, Clause::Top);
    torsion_entries(
        &mut table,
        tp,
        r,
        |_| CatalogName::HatZp,
        Clause::PTorsionAbove,
        Clause::PTorsionBelow,
    );
    torsion_entries(
        &mut table,
        tq,
        s,
        |_| CatalogName::HatZq { e: 1 },
        Clause::QTorsionAbove,
        Clause::QTorsionBelow,
    );
    Ok(table)
}

/// [`nonabelian_table`] or [`abelian_table`] according to the family.
pub fn closed_table(v: &VirtualRep) -> Result<ClosedFormTable> {
    match v.family() {
        GroupFamily::PqNonabelian { .. } => nonabelian_table(v),
        GroupFamily::PqAbelian { .. } => abelian_table(v),
        f => Err(Error::Unsupported(format!("closed-form tables for {f}"))),
    }
}

/// How the generator `a` of `C_p` acts on the `C_q` level in one degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CpAction {
    Trivial,
    Multiplier(u64),
}

/// The action of `a` on `M(G/C_q)` in `degree`, or `None` when that level
/// vanishes.
pub fn cp_action_formula(v: &VirtualRep, degree: i64) -> Result<Option<CpAction>> {
    let GroupFamily::PqNonabelian { p, q, k } = *v.family() else {
        return Err(Error::Unsupported(format!("C_p actions for {}", v.family())));
    };
    let (tq, mq) = reduce_to_sylow(v, Side::Q)?;
    Ok(sylow_restriction_form(tq, mq)
        .into_iter()
        .find(|(n, _)| *n == degree)
        .map(|(n, name)| match name {
            LocalName::Hat if mq > 0 => CpAction::Multiplier(k_power(k, (n - tq) / 2, p, q)),
            LocalName::Hat => CpAction::Multiplier(k_power(k, (n - tq + 1) / 2, p, q)),
            _ => CpAction::Trivial,
        }))
}

/// Degree and name of the constant summand of `S^{t + r V_1 + s W_1}` over `A4`.
pub fn a4_top_degree(t: i64, r: i64, s: i64) -> (i64, CatalogName) {
    let a = if r + s < 0 { 3 } else { 1 };
    let b = if s < 0 { 4 } else { 1 };
    (t + 2 * r + 3 * s, CatalogName::ConstZ { a, b })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nonab(text: &str) -> VirtualRep {
        VirtualRep::parse(&"pq-nonab:3,7,2".parse().unwrap(), text).unwrap()
    }

    fn hz(e: u64) -> CatalogName {
        CatalogName::HatZq { e }
    }

    #[test]
    fn local_forms() {
        assert_eq!(sylow_restriction_form(4, 0), vec![(4, LocalName::Z)]);
        assert_eq!(
            sylow_restriction_form(-8, 3),
            vec![(-8, LocalName::Hat), (-6, LocalName::Hat), (-4, LocalName::Hat), (-2, LocalName::Z)]
        );
        assert_eq!(sylow_restriction_form(5, -1), vec![(3, LocalName::ZStar)]);
        assert_eq!(
            sylow_restriction_form(10, -6),
            vec![
                (-2, LocalName::ZStar),
                (-1, LocalName::Hat),
                (1, LocalName::Hat),
                (3, LocalName::Hat),
                (5, LocalName::Hat),
                (7, LocalName::Hat)
            ]
        );
    }

    #[test]
    fn worked_nonabelian_example() {
        let t = nonabelian_table(&nonab("-4 +7*V1 -2*W1")).unwrap();
        let names = t.names();
        let want: BTreeMap<i64, Vec<CatalogName>> = [
            (-8, CatalogName::HatZp),
            (-6, CatalogName::HatZp),
            (-4, CatalogName::HatZp),
            (-2, CatalogName::ConstZ { a: 1, b: 7 }),
            (-1, hz(2)),
            (1, hz(4)),
            (3, hz(1)),
            (5, hz(2)),
            (7, hz(4)),
        ]
        .into_iter()
        .map(|(n, x)| (n, vec![x]))
        .collect();
        assert_eq!(names, want);
        let tops: Vec<String> = t.top_levels().unwrap().values().map(|g| g.to_string()).collect();
        let z3 = FgAbGroup::cyclic(&3.into()).to_string();
        let z7 = FgAbGroup::cyclic(&7.into()).to_string();
        let (z, zero) = (FgAbGroup::free(1).to_string(), FgAbGroup::trivial().to_string());
        assert_eq!(
            tops,
            vec![z3.clone(), z3.clone(), z3, z, zero.clone(), zero.clone(), z7, zero.clone(), zero]
        );
    }

    #[test]
    fn small_nonabelian_cases() {
        let zero = nonabelian_table(&nonab("0")).unwrap();
        assert_eq!(zero.names(), BTreeMap::from([(0, vec![CatalogName::ConstZ { a: 1, b: 1 }])]));
        let minus_w = nonabelian_table(&nonab("-W1")).unwrap();
        assert_eq!(
            minus_w.names(),
            BTreeMap::from([
                (-6, vec![CatalogName::ConstZ { a: 3, b: 7 }]),
                (-5, vec![CatalogName::HatZp, hz(2)]),
                (-3, vec![hz(4)]),
            ])
        );
        let w = nonabelian_table(&nonab("W1")).unwrap();
        assert_eq!(w.names()[&2], vec![CatalogName::HatZp, hz(2)]);
        assert_eq!(w.entries()[&6][0].clause, Clause::Top);
    }

    #[test]
    fn actions() {
        let v = nonab("-4 +7*V1 -2*W1");
        assert_eq!(cp_action_formula(&v, -1).unwrap(), Some(CpAction::Multiplier(2)));
        assert_eq!(cp_action_formula(&v, 1).unwrap(), Some(CpAction::Multiplier(4)));
        assert_eq!(cp_action_formula(&v, -2).unwrap(), Some(CpAction::Trivial));
        assert_eq!(cp_action_formula(&v, 0).unwrap(), None);
        let w = VirtualRep::parse(&"pq-nonab:3,13,3".parse().unwrap(), "W1").unwrap();
        assert_eq!(cp_action_formula(&w, 4).unwrap(), Some(CpAction::Multiplier(9)));
        // adding trivial or V_i summands shifts degrees and keeps multipliers
        for (extra, by) in [("2", 2), ("2*V1", 4)] {
            let shifted = nonab(&format!("-4 +7*V1 -2*W1 +{extra}"));
            for n in -3..9 {
                assert_eq!(cp_action_formula(&shifted, n + by).unwrap(), cp_action_formula(&v, n).unwrap());
            }
        }
    }

    #[test]
    fn abelian_cases() {
        let ab: GroupFamily = "pq-ab:3,5".parse().unwrap();
        let t = |s: &str| abelian_table(&VirtualRep::parse(&ab, s).unwrap()).unwrap().names();
        assert_eq!(t("0"), BTreeMap::from([(0, vec![CatalogName::ConstZ { a: 1, b: 1 }])]));
        assert_eq!(
            t("V1"),
            BTreeMap::from([(0, vec![CatalogName::HatZp, hz(1)]), (2, vec![CatalogName::ConstZ { a: 1, b: 1 }])])
        );
        assert_eq!(
            t("V3"),
            BTreeMap::from([(0, vec![hz(1)]), (2, vec![CatalogName::ConstZ { a: 1, b: 1 }])])
        );
    }

    #[test]
    fn a4_signs() {
        assert_eq!(a4_top_degree(0, 0, 0), (0, CatalogName::ConstZ { a: 1, b: 1 }));
        assert_eq!(a4_top_degree(0, 0, -1), (-3, CatalogName::ConstZ { a: 3, b: 4 }));
        assert_eq!(a4_top_degree(0, 1, -1), (-1, CatalogName::ConstZ { a: 1, b: 4 }));
        assert_eq!(a4_top_degree(1, -2, 1), (0, CatalogName::ConstZ { a: 3, b: 1 }));
    }
}
