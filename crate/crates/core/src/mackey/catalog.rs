use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{index, scalar_map, Ambient, MackeyBuilder, MackeyFunctor};
use crate::error::{Error, Result};
use crate::exact::{AbHom, FgAbGroup, IntMatrix, SparseMatrix};
use crate::gmodules::{conjugation_sparse, fixed_point_basis, restriction_sparse, transfer_sparse, IntGModule};
use crate::groups::{is_prime, pow_mod, GroupFamily, Subgroup};

/// Names of the functors the library knows how to build and recognise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CatalogName {
    /// Constant `Z`; `a ∈ {1, p}` and `b ∈ {1, q}` record which primes'
    /// parts of each index the restrictions carry.
    ConstZ {
        a: u64,
        b: u64,
    },
    HatZp,
    /// `Z/q` at `C_q` with the Weyl generator acting by `e` (top level `Z/q` iff `e = 1`).
    HatZq {
        e: u64,
    },
    HatZ3,
    HatF2 {
        variant: u8,
    },
    HatF4 {
        variant: u8,
    },
    Burnside,
    FixedPoint(String),
    Orbit(String),
    Unknown,
}

/// The two primes playing the roles of `p` and `q` in the constant functors.
fn roles(family: &GroupFamily) -> (Option<u64>, Option<u64>) {
    match family {
        GroupFamily::PqAbelian { p, q } | GroupFamily::PqNonabelian { p, q, .. } => (Some(*p), Some(*q)),
        GroupFamily::A4 => (Some(3), Some(2)),
        GroupFamily::Cyclic { n } if is_prime(*n) => (Some(*n), None),
        _ => (None, None),
    }
}

/// Size of the Sylow subgroup for a role prime (`4` for the prime 2 in `A4`).
fn role_size(family: &GroupFamily, prime: u64) -> u64 {
    let mut n = family.order();
    let mut s = 1;
    while n.is_multiple_of(prime) {
        n /= prime;
        s *= prime;
    }
    s
}

impl CatalogName {
    /// Text form used in tables: `Z`, `Z^{1,q}`, `Z/p^`, `Z/q^(e)` and so on.
    pub fn text(&self, family: &GroupFamily) -> String {
        match self {
            CatalogName::ConstZ { a: 1, b: 1 } => "Z".into(),
            CatalogName::ConstZ { a, b } => {
                let letters = matches!(family, GroupFamily::PqAbelian { .. } | GroupFamily::PqNonabelian { .. });
                let show = |x: u64, letter: &str| {
                    if x == 1 {
                        "1".to_string()
                    } else if letters {
                        letter.to_string()
                    } else {
                        x.to_string()
                    }
                };
                format!("Z^{{{},{}}}", show(*a, "p"), show(*b, "q"))
            }
            CatalogName::HatZp => "Z/p^".into(),
            CatalogName::HatZq { e } if matches!(family, GroupFamily::PqNonabelian { .. }) => format!("Z/q^({e})"),
            CatalogName::HatZq { .. } => "Z/q^".into(),
            CatalogName::HatZ3 => "Z/3^".into(),
            CatalogName::HatF2 { variant } => format!("F2^[{variant}]"),
            CatalogName::HatF4 { variant } => format!("F4^[{variant}]"),
            CatalogName::Burnside => "A".into(),
            CatalogName::FixedPoint(c) => format!("F({c})"),
            CatalogName::Orbit(c) => format!("O({c})"),
            CatalogName::Unknown => "?".into(),
        }
    }

    pub fn latex(&self, family: &GroupFamily) -> String {
        let z = r"\underline{\mathbb{Z}}";
        match self {
            CatalogName::ConstZ { a: 1, b: 1 } => z.into(),
            CatalogName::ConstZ { .. } => {
                let t = self.text(family);
                format!("{z}{}", &t[1..])
            }
            CatalogName::HatZp => r"\widehat{\mathbb{Z}/p}".into(),
            CatalogName::HatZq { e } if matches!(family, GroupFamily::PqNonabelian { .. }) => {
                format!(r"\widehat{{\mathbb{{Z}}/q}}({e})")
            }
            CatalogName::HatZq { .. } => r"\widehat{\mathbb{Z}/q}".into(),
            CatalogName::HatZ3 => r"\widehat{\mathbb{Z}/3}".into(),
            CatalogName::HatF2 { variant } => format!(r"\widehat{{\mathbb{{F}}}}_2^{{[{variant}]}}"),
            CatalogName::HatF4 { variant } => format!(r"\widehat{{\mathbb{{F}}}}_4^{{[{variant}]}}"),
            CatalogName::Burnside => r"\underline{A}".into(),
            CatalogName::FixedPoint(c) => format!(r"F(\mathrm{{{c}}})"),
            CatalogName::Orbit(c) => format!(r"O(\mathrm{{{c}}})"),
            CatalogName::Unknown => "?".into(),
        }
    }

    /// Whether the name denotes a functor on groups of this family.
    pub fn validate(&self, family: &GroupFamily) -> Result<()> {
        let bad = || Error::Parameter(format!("{self} is not defined for {family}"));
        let (p, q) = roles(family);
        match (self, family) {
            (CatalogName::ConstZ { a, b }, _) => {
                let ok_a = *a == 1 || Some(*a) == p;
                let ok_b = *b == 1 || q.map(|q| role_size(family, q)) == Some(*b);
                if ok_a && ok_b {
                    Ok(())
                } else {
                    Err(bad())
                }
            }
            (CatalogName::HatZp, GroupFamily::PqAbelian { .. } | GroupFamily::PqNonabelian { .. }) => Ok(()),
            (CatalogName::HatZp, GroupFamily::Cyclic { .. }) if p.is_some() => Ok(()),
            (CatalogName::HatZq { e }, GroupFamily::PqAbelian { p, q } | GroupFamily::PqNonabelian { p, q, .. }) => {
                if *e == 0 || *e >= *q || pow_mod(*e, *p, *q) != 1 {
                    Err(Error::Parameter(format!("hatZq({e}) needs e^{p} = 1 mod {q}")))
                } else {
                    Ok(())
                }
            }
            (CatalogName::HatZ3, GroupFamily::A4) => Ok(()),
            (CatalogName::HatF2 { variant } | CatalogName::HatF4 { variant }, GroupFamily::A4) if (1..=3).contains(variant) => Ok(()),
            (CatalogName::Burnside, _) => Ok(()),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogName::ConstZ { a, b } => write!(f, "constZ({a},{b})"),
            CatalogName::HatZp => write!(f, "hatZp"),
            CatalogName::HatZq { e } => write!(f, "hatZq({e})"),
            CatalogName::HatZ3 => write!(f, "hatZ3"),
            CatalogName::HatF2 { variant } => write!(f, "hatF2({variant})"),
            CatalogName::HatF4 { variant } => write!(f, "hatF4({variant})"),
            CatalogName::Burnside => write!(f, "burnside"),
            CatalogName::FixedPoint(c) => write!(f, "fixedpoint({c})"),
            CatalogName::Orbit(c) => write!(f, "orbit({c})"),
            CatalogName::Unknown => write!(f, "unknown"),
        }
    }
}

impl FromStr for CatalogName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, arg) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], Some(&s[i + 1..s.len() - 1])),
            _ => (s, None),
        };
        let num = |x: &str, at: usize| -> Result<u64> {
            x.trim().parse().map_err(|_| Error::Parse {
                position: at,
                message: format!("expected a non-negative integer, found {x:?}"),
            })
        };
        let at = head.len() + 1;
        Ok(match (head, arg) {
            ("constZ", Some(a)) => {
                let (x, y) = a.split_once(',').ok_or_else(|| Error::Parse {
                    position: at,
                    message: "constZ takes two arguments".into(),
                })?;
                CatalogName::ConstZ {
                    a: num(x, at)?,
                    b: num(y, at + x.len() + 1)?,
                }
            }
            ("hatZp", None) => CatalogName::HatZp,
            ("hatZq", None) => CatalogName::HatZq { e: 1 },
            ("hatZq", Some(e)) => CatalogName::HatZq { e: num(e, at)? },
            ("hatZ3", None) => CatalogName::HatZ3,
            ("hatF2", Some(v)) => CatalogName::HatF2 {
                variant: num(v, at)? as u8,
            },
            ("hatF4", Some(v)) => CatalogName::HatF4 {
                variant: num(v, at)? as u8,
            },
            ("burnside", None) => CatalogName::Burnside,
            ("fixedpoint", Some(c)) => CatalogName::FixedPoint(c.to_string()),
            ("orbit", Some(c)) => CatalogName::Orbit(c.to_string()),
            ("unknown", None) => CatalogName::Unknown,
            _ => {
                return Err(Error::Parse {
                    position: 0,
                    message: format!("unknown functor name {s:?}"),
                })
            }
        })
    }
}

/// All constant and hat functors defined for the family, in a fixed order.
pub fn catalog_names(family: &GroupFamily) -> Vec<CatalogName> {
    let (p, q) = roles(family);
    let mut out = Vec::new();
    let a_vals: Vec<u64> = std::iter::once(1).chain(p).collect();
    let b_vals: Vec<u64> = std::iter::once(1).chain(q.map(|q| role_size(family, q))).collect();
    for &a in &a_vals {
        for &b in &b_vals {
            out.push(CatalogName::ConstZ { a, b });
        }
    }
    match *family {
        GroupFamily::PqAbelian { p, q } | GroupFamily::PqNonabelian { p, q, .. } => {
            out.push(CatalogName::HatZp);
            let mut es: Vec<u64> = (1..q).filter(|&e| pow_mod(e, p, q) == 1).collect();
            es.sort_unstable();
            out.extend(es.into_iter().map(|e| CatalogName::HatZq { e }));
        }
        GroupFamily::Cyclic { .. } if p.is_some() => out.push(CatalogName::HatZp),
        GroupFamily::A4 => {
            out.push(CatalogName::HatZ3);
            out.extend((1..=3).map(|variant| CatalogName::HatF2 { variant }));
            out.extend((1..=3).map(|variant| CatalogName::HatF4 { variant }));
        }
        _ => {}
    }
    out
}

fn cyclic(n: u64) -> FgAbGroup {
    FgAbGroup::cyclic(&BigInt::from(n))
}

fn all_slots(ambient: &Ambient) -> BTreeSet<usize> {
    (0..ambient.slot_count()).collect()
}

/// Classes used for `A4` functors drawn without the subgroups of order 2.
fn a4_restricted(ambient: &Ambient) -> Result<BTreeSet<usize>> {
    ["e", "C3", "K", "A4"].iter().map(|n| ambient.slot(n)).collect()
}

/// The named functor on the given group.
pub fn catalog(name: &CatalogName, ambient: &Arc<Ambient>) -> Result<MackeyFunctor> {
    let family = ambient.family().clone();
    if matches!(name, CatalogName::FixedPoint(_) | CatalogName::Orbit(_) | CatalogName::Unknown) {
        return Err(Error::Parameter(format!("{name} is not built from a name alone")));
    }
    name.validate(&family)?;
    match name {
        CatalogName::ConstZ { a, b } => constant(ambient, *a, *b),
        CatalogName::HatZp => hat_zp(ambient),
        CatalogName::HatZq { e } => hat_zq(ambient, *e),
        CatalogName::HatZ3 => hat_z3(ambient),
        CatalogName::HatF2 { variant } => hat_f2(ambient, *variant),
        CatalogName::HatF4 { variant } => hat_f4(ambient, *variant),
        CatalogName::Burnside => burnside(ambient),
        _ => unreachable!("filtered above"),
    }
}

fn constant(ambient: &Arc<Ambient>, a: u64, b: u64) -> Result<MackeyFunctor> {
    let family = ambient.family();
    let domain = if *family == GroupFamily::A4 {
        a4_restricted(ambient)?
    } else {
        all_slots(ambient)
    };
    let (p, q) = roles(family);
    let levels = domain.iter().map(|&s| (s, FgAbGroup::free(1))).collect();
    let mut m = MackeyBuilder::new(ambient, levels);
    for (h, k) in ambient.containments(&domain) {
        let idx = index(ambient, h, k);
        let part = |prime: Option<u64>, on: bool| match prime {
            Some(l) if on => {
                let mut x = 1;
                while idx.is_multiple_of(x * l) {
                    x *= l;
                }
                x
            }
            _ => 1,
        };
        let r = part(p, a != 1) * part(q, b != 1);
        m.scalars(h, k, r as i64, (idx / r) as i64)?;
    }
    m.build()
}

fn hat_zp(ambient: &Arc<Ambient>) -> Result<MackeyFunctor> {
    let family = ambient.family();
    let (p, _) = roles(family);
    let p = p.expect("validated");
    let top = ambient.top();
    let mut levels: BTreeMap<usize, FgAbGroup> = all_slots(ambient).into_iter().map(|s| (s, FgAbGroup::trivial())).collect();
    levels.insert(top, cyclic(p));
    let cp = if family.pq().is_some() { Some(ambient.slot("Cp")?) } else { None };
    if let Some(cp) = cp {
        levels.insert(cp, cyclic(p));
    }
    let mut m = MackeyBuilder::new(ambient, levels);
    if let Some(cp) = cp {
        let idx = index(ambient, top, cp) % p;
        m.scalars(top, cp, 1, idx as i64)?;
    }
    m.build()
}

fn hat_zq(ambient: &Arc<Ambient>, e: u64) -> Result<MackeyFunctor> {
    let (p, q) = ambient.family().pq().expect("validated");
    let (top, cq) = (ambient.top(), ambient.slot("Cq")?);
    let mut levels: BTreeMap<usize, FgAbGroup> = all_slots(ambient).into_iter().map(|s| (s, FgAbGroup::trivial())).collect();
    levels.insert(cq, cyclic(q));
    if e == 1 {
        levels.insert(top, cyclic(q));
    }
    let mut m = MackeyBuilder::new(ambient, levels);
    if e == 1 {
        m.scalars(top, cq, 1, (p % q) as i64)?;
    }
    let a = ambient.group().generator("a")?;
    let level = m.level(cq)?;
    m.weyl_generated(cq, a, scalar_map(&level, &level, e as i64)?)?;
    m.build()
}

fn hat_z3(ambient: &Arc<Ambient>) -> Result<MackeyFunctor> {
    let domain = a4_restricted(ambient)?;
    let (top, c3) = (ambient.slot("A4")?, ambient.slot("C3")?);
    let levels = domain
        .iter()
        .map(|&s| (s, if s == top || s == c3 { cyclic(3) } else { FgAbGroup::trivial() }))
        .collect();
    let mut m = MackeyBuilder::new(ambient, levels);
    m.scalars(top, c3, 1, 1)?;
    m.build()
}

/// An element of `A4` generating `A4/K`.
fn a4_three_cycle(ambient: &Ambient) -> Result<usize> {
    let k = ambient.slot("K")?;
    let g = ambient.group();
    g.elements()
        .find(|&x| g.element_order(x) == 3)
        .filter(|_| ambient.weyl(k).order() == 3)
        .ok_or_else(|| Error::Internal("A4 has no element of order 3".into()))
}

/// Levels shared by the `F2` and `F4` variants: the order-2 classes carry `F2`
/// in variants 1 and 2 and vanish in variant 3.
fn a4_hat_levels(ambient: &Ambient, variant: u8, top: FgAbGroup, k_level: FgAbGroup) -> Result<BTreeMap<usize, FgAbGroup>> {
    let mut levels: BTreeMap<usize, FgAbGroup> = all_slots(ambient).into_iter().map(|s| (s, FgAbGroup::trivial())).collect();
    levels.insert(ambient.slot("A4")?, top);
    levels.insert(ambient.slot("K")?, k_level);
    if variant != 3 {
        levels.insert(ambient.slot("C2")?, cyclic(2));
    }
    Ok(levels)
}

fn hat_f2(ambient: &Arc<Ambient>, variant: u8) -> Result<MackeyFunctor> {
    let (top, k, c2) = (ambient.slot("A4")?, ambient.slot("K")?, ambient.slot("C2")?);
    let levels = a4_hat_levels(ambient, variant, cyclic(2), cyclic(2))?;
    let mut m = MackeyBuilder::new(ambient, levels);
    m.scalars(top, k, 1, 1)?;
    match variant {
        1 => m.scalars(k, c2, 1, 0)?.scalars(top, c2, 1, 0)?,
        2 => m.scalars(k, c2, 0, 1)?.scalars(top, c2, 0, 1)?,
        _ => &mut m,
    };
    m.build()
}

fn hat_f4(ambient: &Arc<Ambient>, variant: u8) -> Result<MackeyFunctor> {
    let (k, c2) = (ambient.slot("K")?, ambient.slot("C2")?);
    let two = BigInt::from(2);
    let f4 = FgAbGroup::from_invariants(&[two.clone(), two], 0);
    let levels = a4_hat_levels(ambient, variant, FgAbGroup::trivial(), f4)?;
    let mut m = MackeyBuilder::new(ambient, levels);
    let lk = m.level(k)?;
    let omega = AbHom::from_normal(lk.clone(), lk, &IntMatrix::from_rows(&[[0, 1], [1, 1]]))?;
    m.weyl_generated(k, a4_three_cycle(ambient)?, omega)?;
    let first = IntMatrix::from_rows(&[[1, 0]]);
    match variant {
        1 => {
            m.res_normal(k, c2, &first)?;
            m.tr_normal(k, c2, &IntMatrix::zero(2, 1))?;
        }
        2 => {
            m.res_normal(k, c2, &IntMatrix::zero(1, 2))?;
            m.tr_normal(k, c2, &first.transpose())?;
        }
        _ => {}
    }
    m.build()
}

/// Classes of subgroups of `h` under conjugation by `h`, each as its
/// smallest member, in lattice order.
pub(crate) fn subgroup_classes_within(ambient: &Ambient, h: &Subgroup) -> Vec<Subgroup> {
    let g = ambient.group();
    let mut out: Vec<Subgroup> = Vec::new();
    for l in ambient.lattice().all() {
        if !l.is_subset(h) {
            continue;
        }
        let known = out.iter().any(|c| h.elements().iter().any(|&x| g.conjugate(x, c) == *l));
        if !known {
            out.push(l.clone());
        }
    }
    out
}

fn class_position(ambient: &Ambient, classes: &[Subgroup], h: &Subgroup, l: &Subgroup) -> usize {
    let g = ambient.group();
    classes
        .iter()
        .position(|c| h.elements().iter().any(|&x| g.conjugate(x, c) == *l))
        .expect("subgroup of h lies in some h-class")
}

/// The Burnside functor: `A(G/H)` is free on the `H`-sets `H/L`.
pub fn burnside(ambient: &Arc<Ambient>) -> Result<MackeyFunctor> {
    let g = ambient.group().clone();
    let slots = all_slots(ambient);
    let classes: BTreeMap<usize, Vec<Subgroup>> = slots
        .iter()
        .map(|&s| (s, subgroup_classes_within(ambient, ambient.rep(s))))
        .collect();
    let levels = classes.iter().map(|(&s, c)| (s, FgAbGroup::free(c.len()))).collect();
    let mut m = MackeyBuilder::new(ambient, levels);
    for (&s, cs) in &classes {
        let mut seen: BTreeMap<String, usize> = BTreeMap::new();
        let labels = cs
            .iter()
            .map(|l| {
                let base = ambient.name(ambient.lattice().class_of(l)).to_string();
                let n = seen.entry(base.clone()).or_insert(0);
                *n += 1;
                let tag = if *n == 1 { base } else { format!("{base}'{}", *n - 1) };
                format!("[{}/{tag}]", ambient.name(s))
            })
            .collect();
        m.set_labels(s, labels);
    }
    let free = |rows: usize, cols: usize, entries: Vec<(usize, usize)>| {
        let mut x = IntMatrix::zero(rows, cols);
        for (i, j) in entries {
            x[(i, j)] += 1;
        }
        x
    };
    for (hs, ks) in ambient.containments(&slots) {
        let (h, k) = (ambient.rep(hs), ambient.rep(ks));
        let (ch, ck) = (&classes[&hs], &classes[&ks]);
        let mut res = Vec::new();
        for (j, l) in ch.iter().enumerate() {
            for d in g.double_cosets_in(k, h, l) {
                let kl = k.intersect(&g.conjugate(d.g, l));
                res.push((class_position(ambient, ck, k, &kl), j));
            }
        }
        let tr = ck.iter().enumerate().map(|(j, l)| (class_position(ambient, ch, h, l), j)).collect();
        m.res_normal(hs, ks, &free(ck.len(), ch.len(), res))?;
        m.tr_normal(hs, ks, &free(ch.len(), ck.len(), tr))?;
    }
    for (&s, cs) in &classes {
        let h = ambient.rep(s);
        let level = m.level(s)?;
        for (i, &y) in ambient.weyl(s).coset_representatives.iter().enumerate() {
            let entries = cs
                .iter()
                .enumerate()
                .map(|(j, l)| (class_position(ambient, cs, h, &g.conjugate(y, l)), j))
                .collect();
            let w = AbHom::from_normal(level.clone(), level.clone(), &free(cs.len(), cs.len(), entries))?;
            m.set_weyl(s, i, w)?;
        }
    }
    m.build()
}

fn sparse_hom(src: &Arc<FgAbGroup>, dst: &Arc<FgAbGroup>, m: &SparseMatrix) -> Result<AbHom> {
    AbHom::new(src.clone(), dst.clone(), m.to_dense())
}

/// `H ↦ C^H` with inclusions as restrictions and orbit sums as transfers.
pub fn fixed_point_functor(c: &IntGModule, ambient: &Arc<Ambient>) -> Result<MackeyFunctor> {
    let slots = all_slots(ambient);
    let fixed: BTreeMap<usize, _> = slots.iter().map(|&s| (s, fixed_point_basis(c, ambient.rep(s)))).collect();
    let levels = fixed.iter().map(|(&s, f)| (s, FgAbGroup::free(f.rank()))).collect();
    let mut m = MackeyBuilder::new(ambient, levels);
    for (h, k) in ambient.containments(&slots) {
        let (mh, mk) = (m.level(h)?, m.level(k)?);
        let r = sparse_hom(&mh, &mk, &restriction_sparse(&fixed[&h], &fixed[&k])?)?;
        let t = sparse_hom(&mk, &mh, &transfer_sparse(c, &fixed[&k], &fixed[&h])?)?;
        m.set_res(h, k, r)?;
        m.set_tr(h, k, t)?;
    }
    for &s in &slots {
        let level = m.level(s)?;
        for (i, &y) in ambient.weyl(s).coset_representatives.iter().enumerate() {
            let w = conjugation_sparse(c, &fixed[&s], y, &fixed[&s])?;
            m.set_weyl(s, i, sparse_hom(&level, &level, &w)?)?;
        }
    }
    m.build()
}

/// `H ↦ C_H = C / ⟨ρ(h)x − x⟩` with projections as transfers and sums over
/// right cosets as restrictions.
pub fn orbit_functor(c: &IntGModule, ambient: &Arc<Ambient>) -> Result<MackeyFunctor> {
    let g = ambient.group().clone();
    let n = c.rank();
    let slots = all_slots(ambient);
    let levels = slots
        .iter()
        .map(|&s| {
            let mut rels = IntMatrix::zero(n, 0);
            for &h in ambient.rep(s).elements() {
                rels = rels.hconcat(&c.action(h).to_dense().sub(&IntMatrix::identity(n)));
            }
            (s, FgAbGroup::from_relations(rels))
        })
        .collect();
    let mut m = MackeyBuilder::new(ambient, levels);
    for (hs, ks) in ambient.containments(&slots) {
        let (mh, mk) = (m.level(hs)?, m.level(ks)?);
        let mut sum = IntMatrix::zero(n, n);
        for x in g.left_coset_reps(ambient.rep(hs), ambient.rep(ks)) {
            sum = sum.add(&c.action(g.inv(x)).to_dense());
        }
        m.set_res(hs, ks, AbHom::new(mh.clone(), mk.clone(), sum)?)?;
        m.set_tr(hs, ks, AbHom::new(mk, mh, IntMatrix::identity(n))?)?;
    }
    for &s in &slots {
        let level = m.level(s)?;
        for (i, &y) in ambient.weyl(s).coset_representatives.iter().enumerate() {
            let w = AbHom::new(level.clone(), level.clone(), c.action(y).to_dense())?;
            m.set_weyl(s, i, w)?;
        }
    }
    m.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmodules::permutation_module;
    use crate::mackey::{check_cohomological, check_mackey_axioms};

    fn ambient(s: &str) -> Arc<Ambient> {
        Ambient::new(&s.parse().unwrap()).unwrap()
    }

    fn n(m: &AbHom) -> IntMatrix {
        m.normal_matrix()
    }

    #[test]
    fn constant_diagrams() {
        let a = ambient("pq-nonab:3,7,2");
        let z = catalog(&CatalogName::ConstZ { a: 3, b: 7 }, &a).unwrap();
        assert_eq!(n(&z.res(3, 2).unwrap()), IntMatrix::from_rows(&[[3]]));
        assert_eq!(n(&z.tr(3, 2).unwrap()), IntMatrix::from_rows(&[[1]]));
        assert_eq!(n(&z.res(3, 1).unwrap()), IntMatrix::from_rows(&[[7]]));
        assert_eq!(n(&z.tr(3, 1).unwrap()), IntMatrix::from_rows(&[[1]]));
        let z = catalog(&CatalogName::ConstZ { a: 1, b: 1 }, &a).unwrap();
        assert_eq!(n(&z.tr(2, 0).unwrap()), IntMatrix::from_rows(&[[7]]));
    }

    #[test]
    fn hat_functors() {
        let a = ambient("pq-nonab:3,7,2");
        let f = catalog(&CatalogName::HatZq { e: 2 }, &a).unwrap();
        assert!(f.level(3).unwrap().is_trivial());
        assert_eq!(f.weyl(2).len(), 3);
        assert_eq!(n(&f.weyl(2)[1]), IntMatrix::from_rows(&[[2]]));
        assert!(catalog(&CatalogName::HatZq { e: 3 }, &a).is_err());
        let b = ambient("pq-ab:3,5");
        let p = catalog(&CatalogName::HatZp, &b).unwrap();
        assert_eq!(n(&p.tr(3, 1).unwrap()), IntMatrix::from_rows(&[[2]]));
        let a4 = ambient("a4");
        let h = catalog(&CatalogName::HatZ3, &a4).unwrap();
        assert_eq!(h.domain().len(), 4);
        assert!(catalog(&CatalogName::HatZ3, &a).is_err());
    }

    #[test]
    fn every_catalog_functor_passes_the_checkers() {
        for fam in ["pq-nonab:3,7,2", "pq-ab:3,5", "a4", "cyclic:5"] {
            let a = ambient(fam);
            for name in catalog_names(a.family()) {
                let m = catalog(&name, &a).unwrap();
                let r = check_mackey_axioms(&m);
                assert!(r.passed(), "{fam} {name}: {r}");
                let r = check_cohomological(&m);
                assert!(r.passed(), "{fam} {name}: {r}");
            }
        }
    }

    #[test]
    fn burnside_of_pq() {
        let a = ambient("pq-nonab:3,7,2");
        let b = burnside(&a).unwrap();
        assert_eq!(b.level(3).unwrap().free_rank(), 4);
        assert_eq!(b.labels(3).unwrap()[0], "[G/e]");
        assert!(check_mackey_axioms(&b).passed());
        assert!(!check_cohomological(&b).passed());
    }

    #[test]
    fn fixed_points_of_regular_module() {
        let a = ambient("cyclic:3");
        let g = a.group().clone();
        let reg = permutation_module(&g, &g.trivial_subgroup());
        let f = fixed_point_functor(&reg, &a).unwrap();
        assert_eq!(f.level(1).unwrap().free_rank(), 1);
        assert_eq!(f.level(0).unwrap().free_rank(), 3);
        assert_eq!(n(&f.tr(1, 0).unwrap()), IntMatrix::from_rows(&[[1, 1, 1]]));
        let triv = IntGModule::trivial(g, 1);
        let f = fixed_point_functor(&triv, &a).unwrap();
        assert_eq!(crate::mackey::classify(&f).unwrap(), CatalogName::ConstZ { a: 1, b: 1 });
    }

    #[test]
    fn permutation_modules_give_cohomological_functors() {
        let a = ambient("pq-nonab:3,7,2");
        let g = a.group().clone();
        for s in 0..a.slot_count() {
            let c = permutation_module(&g, a.rep(s));
            for f in [fixed_point_functor(&c, &a).unwrap(), orbit_functor(&c, &a).unwrap()] {
                assert!(check_mackey_axioms(&f).passed());
                assert!(check_cohomological(&f).passed());
            }
        }
    }

    #[test]
    fn names_roundtrip() {
        for s in ["constZ(1,7)", "hatZp", "hatZq(2)", "hatF4(3)", "burnside", "unknown"] {
            assert_eq!(s.parse::<CatalogName>().unwrap().to_string(), s);
        }
        assert!("hatZr".parse::<CatalogName>().is_err());
        let fam: GroupFamily = "pq-nonab:3,7,2".parse().unwrap();
        assert_eq!(CatalogName::ConstZ { a: 1, b: 7 }.text(&fam), "Z^{1,q}");
        assert_eq!(CatalogName::HatZq { e: 4 }.text(&fam), "Z/q^(4)");
        assert_eq!(CatalogName::ConstZ { a: 3, b: 4 }.text(&GroupFamily::A4), "Z^{3,4}");
    }
}
