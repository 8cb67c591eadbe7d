//! Mackey functors stored on conjugacy class representatives.
//!
//! A [`MackeyFunctor`] keeps one abelian group per class of subgroups in its
//! domain, restriction and transfer maps for every pair of representatives
//! `rep(K) ≤ rep(H)`, and the Weyl group action on each level. Maps between
//! arbitrary subgroups are reconstructed from this data through the
//! conjugators of the subgroup lattice; see [`MackeyFunctor::res_any`].

mod boxprod;
mod catalog;
mod check;
mod classify;
mod json;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

pub use boxprod::{box_functor, box_level, tensor_groups};
pub(crate) use catalog::subgroup_classes_within;
pub use catalog::{burnside, catalog, catalog_names, fixed_point_functor, orbit_functor, CatalogName};
pub use check::{check_cohomological, check_mackey_axioms, CheckReport, Violation};
pub use classify::{classify, classify_summands, is_isomorphic, primary_parts};
pub use json::{from_json, from_json_str, to_json, to_json_string};

use crate::error::{Error, Result};
use crate::exact::{AbHom, FgAbGroup, IntMatrix};
use crate::groups::{FiniteGroupTable, GroupFamily, Subgroup, SubgroupLattice, WeylGroup};

/// A group together with its subgroup lattice, normalizers and Weyl groups.
#[derive(Debug)]
pub struct Ambient {
    group: Arc<FiniteGroupTable>,
    lattice: SubgroupLattice,
    normalizers: Vec<Subgroup>,
    weyl: Vec<WeylGroup>,
}

/// How `L ≤ H` sits relative to the representatives `H0 = rep(H)`, `L0 = rep(L)`.
///
/// `n ∈ N(H0)` carries `γ_H L γ_H⁻¹` onto `L0`, and `m = γ_L γ_H⁻¹ n⁻¹ ∈ N(L0)`.
#[derive(Clone, Copy, Debug)]
struct Alignment {
    h: usize,
    l: usize,
    n: usize,
    m: usize,
}

impl Ambient {
    pub fn new(family: &GroupFamily) -> Result<Arc<Self>> {
        Self::from_group(Arc::new(family.build()?))
    }

    /// Fails if some subconjugate pair of classes has representatives that
    /// are not literally nested.
    pub fn from_group(group: Arc<FiniteGroupTable>) -> Result<Arc<Self>> {
        let lattice = SubgroupLattice::new(&group);
        let count = lattice.rep_count();
        for small in 0..count {
            for large in 0..count {
                if lattice.subconjugate(&group, small, large) && !lattice.contains(small, large) {
                    return Err(Error::Unsupported(format!(
                        "representative of {} is not contained in the representative of {}",
                        lattice.name(small),
                        lattice.name(large)
                    )));
                }
            }
        }
        let normalizers = (0..count).map(|s| group.normalizer(lattice.rep(s))).collect();
        let weyl = (0..count).map(|s| group.weyl_group(lattice.rep(s))).collect();
        Ok(Arc::new(Self {
            group,
            lattice,
            normalizers,
            weyl,
        }))
    }

    pub fn group(&self) -> &Arc<FiniteGroupTable> {
        &self.group
    }

    pub fn family(&self) -> &GroupFamily {
        self.group.family()
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub fn slot_count(&self) -> usize {
        self.lattice.rep_count()
    }

    pub fn top(&self) -> usize {
        self.lattice.top()
    }

    pub fn rep(&self, slot: usize) -> &Subgroup {
        self.lattice.rep(slot)
    }

    pub fn name(&self, slot: usize) -> &str {
        self.lattice.name(slot)
    }

    pub fn slot(&self, name: &str) -> Result<usize> {
        self.lattice
            .slot_by_name(name)
            .ok_or_else(|| Error::Parameter(format!("{} has no subgroup class named {name}", self.family())))
    }

    pub fn normalizer(&self, slot: usize) -> &Subgroup {
        &self.normalizers[slot]
    }

    pub fn weyl(&self, slot: usize) -> &WeylGroup {
        &self.weyl[slot]
    }

    /// Index of the Weyl coset representative `r` with `r⁻¹y ∈ rep(slot)`.
    pub fn weyl_index(&self, slot: usize, y: usize) -> Option<usize> {
        if !self.normalizers[slot].contains(y) {
            return None;
        }
        let h0 = self.rep(slot);
        self.weyl[slot]
            .coset_representatives
            .iter()
            .position(|&r| h0.contains(self.group.mul(self.group.inv(r), y)))
    }

    /// Pairs `(H, K)` of distinct slots in `domain` with `rep(K) ≤ rep(H)`.
    pub fn containments(&self, domain: &BTreeSet<usize>) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &h in domain.iter().rev() {
            for &k in domain.iter().rev() {
                if h != k && self.lattice.contains(k, h) {
                    out.push((h, k));
                }
            }
        }
        out
    }

    /// Every subgroup whose class lies in `domain`, in lattice order.
    pub fn members(&self, domain: &BTreeSet<usize>) -> Vec<Subgroup> {
        self.lattice
            .all()
            .iter()
            .filter(|s| domain.contains(&self.lattice.class_of(s)))
            .cloned()
            .collect()
    }

    /// Short name of an arbitrary subgroup: the class name, with the position
    /// inside the class appended for non-representatives.
    pub fn describe(&self, h: &Subgroup) -> String {
        let slot = self.lattice.class_of(h);
        let name = self.name(slot);
        if h == self.rep(slot) {
            return name.to_string();
        }
        let i = self
            .lattice
            .class_members(slot)
            .iter()
            .position(|m| *m == h)
            .expect("member of its own class");
        format!("{name}[{i}]")
    }

    fn align(&self, h: &Subgroup, l: &Subgroup) -> Result<Alignment> {
        if !l.is_subset(h) {
            return Err(Error::Parameter(format!(
                "{} is not contained in {}",
                self.describe(l),
                self.describe(h)
            )));
        }
        let g = &self.group;
        let (hs, ls) = (self.lattice.class_of(h), self.lattice.class_of(l));
        let (gh, gl) = (self.lattice.conjugator(h), self.lattice.conjugator(l));
        let l1 = g.conjugate(gh, l);
        let l0 = self.rep(ls);
        let unsupported = || {
            Error::Unsupported(format!(
                "{} inside {} is not reached from the stored representatives",
                self.describe(l),
                self.describe(h)
            ))
        };
        if !l0.is_subset(self.rep(hs)) {
            return Err(unsupported());
        }
        let n = self.normalizers[hs]
            .elements()
            .iter()
            .copied()
            .find(|&n| g.conjugate(n, &l1) == *l0)
            .ok_or_else(unsupported)?;
        let m = g.mul(g.mul(gl, g.inv(gh)), g.inv(n));
        Ok(Alignment { h: hs, l: ls, n, m })
    }
}

/// A Mackey functor on the classes of subgroups in `domain`.
#[derive(Clone)]
pub struct MackeyFunctor {
    ambient: Arc<Ambient>,
    domain: BTreeSet<usize>,
    levels: BTreeMap<usize, Arc<FgAbGroup>>,
    res: BTreeMap<(usize, usize), AbHom>,
    tr: BTreeMap<(usize, usize), AbHom>,
    weyl: BTreeMap<usize, Vec<AbHom>>,
    labels: BTreeMap<usize, Vec<String>>,
}

/// Which family of structure maps a stored matrix belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MapKind {
    Res,
    Tr,
}

impl MackeyFunctor {
    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn group(&self) -> &Arc<FiniteGroupTable> {
        &self.ambient.group
    }

    pub fn domain(&self) -> &BTreeSet<usize> {
        &self.domain
    }

    pub fn in_domain(&self, slot: usize) -> bool {
        self.domain.contains(&slot)
    }

    /// Whether the top class (the whole group) is part of the domain.
    pub fn has_top(&self) -> bool {
        self.in_domain(self.ambient.top())
    }

    pub fn level(&self, slot: usize) -> Result<&Arc<FgAbGroup>> {
        self.levels
            .get(&slot)
            .ok_or_else(|| Error::Parameter(format!("level {} is outside the domain", self.ambient.name(slot))))
    }

    pub fn levels(&self) -> &BTreeMap<usize, Arc<FgAbGroup>> {
        &self.levels
    }

    pub fn level_of(&self, h: &Subgroup) -> Result<&Arc<FgAbGroup>> {
        self.level(self.ambient.lattice.class_of(h))
    }

    /// `R^{rep H}_{rep K}` for a stored pair; the identity when `h == k`.
    pub fn res(&self, h: usize, k: usize) -> Result<AbHom> {
        self.stored(MapKind::Res, h, k)
    }

    /// `Tr^{rep H}_{rep K}` for a stored pair; the identity when `h == k`.
    pub fn tr(&self, h: usize, k: usize) -> Result<AbHom> {
        self.stored(MapKind::Tr, h, k)
    }

    fn stored(&self, kind: MapKind, h: usize, k: usize) -> Result<AbHom> {
        if h == k {
            return Ok(AbHom::identity(self.level(h)?.clone()));
        }
        let map = match kind {
            MapKind::Res => &self.res,
            MapKind::Tr => &self.tr,
        };
        map.get(&(h, k)).cloned().ok_or_else(|| {
            Error::Parameter(format!(
                "no stored map between {} and {}",
                self.ambient.name(h),
                self.ambient.name(k)
            ))
        })
    }

    /// Stored restriction maps keyed by `(H, K)` slots.
    pub fn restrictions(&self) -> &BTreeMap<(usize, usize), AbHom> {
        &self.res
    }

    pub fn transfers(&self) -> &BTreeMap<(usize, usize), AbHom> {
        &self.tr
    }

    /// Weyl actions on `M(G/rep H)`, aligned with the Weyl coset representatives.
    pub fn weyl(&self, slot: usize) -> &[AbHom] {
        self.weyl.get(&slot).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `c_y` on `M(G/rep H)` for any `y` in the normalizer.
    pub fn weyl_at(&self, slot: usize, y: usize) -> Result<AbHom> {
        let i = self
            .ambient
            .weyl_index(slot, y)
            .ok_or_else(|| Error::Parameter(format!("element {y} does not normalize {}", self.ambient.name(slot))))?;
        Ok(self.weyl[&slot][i].clone())
    }

    pub fn labels(&self, slot: usize) -> Option<&[String]> {
        self.labels.get(&slot).map(Vec::as_slice)
    }

    /// `R^H_L` for arbitrary subgroups `L ≤ H`, in representative coordinates.
    pub fn res_any(&self, h: &Subgroup, l: &Subgroup) -> Result<AbHom> {
        let a = self.ambient.align(h, l)?;
        let base = self.res(a.h, a.l)?;
        let wm = self.weyl_at(a.l, a.m)?;
        let wn = self.weyl_at(a.h, a.n)?;
        wm.compose(&base)?.compose(&wn)
    }

    /// `Tr^H_L` for arbitrary subgroups `L ≤ H`, in representative coordinates.
    pub fn tr_any(&self, h: &Subgroup, l: &Subgroup) -> Result<AbHom> {
        let a = self.ambient.align(h, l)?;
        let g = &self.ambient.group;
        let base = self.tr(a.h, a.l)?;
        let wn = self.weyl_at(a.h, g.inv(a.n))?;
        let wm = self.weyl_at(a.l, g.inv(a.m))?;
        wn.compose(&base)?.compose(&wm)
    }

    /// `c_g : M(G/L) → M(G/gLg⁻¹)` in representative coordinates.
    pub fn conj_any(&self, g: usize, l: &Subgroup) -> Result<AbHom> {
        let grp = &self.ambient.group;
        let lat = &self.ambient.lattice;
        let target = grp.conjugate(g, l);
        let y = grp.mul(grp.mul(lat.conjugator(&target), g), grp.inv(lat.conjugator(l)));
        self.weyl_at(lat.class_of(l), y)
    }

    pub fn is_zero(&self) -> bool {
        self.levels.values().all(|g| g.is_trivial())
    }

    /// The functor with the top level removed.
    pub fn truncate(&self) -> MackeyFunctor {
        let mut keep = self.domain.clone();
        keep.remove(&self.ambient.top());
        self.restrict_domain(&keep)
    }

    /// The functor on the classes in `keep ∩ domain`.
    pub fn restrict_domain(&self, keep: &BTreeSet<usize>) -> MackeyFunctor {
        let domain: BTreeSet<usize> = self.domain.intersection(keep).copied().collect();
        let inside = |&(h, k): &(usize, usize)| domain.contains(&h) && domain.contains(&k);
        MackeyFunctor {
            ambient: self.ambient.clone(),
            levels: self
                .levels
                .iter()
                .filter(|(s, _)| domain.contains(s))
                .map(|(s, g)| (*s, g.clone()))
                .collect(),
            res: self.res.iter().filter(|(p, _)| inside(p)).map(|(p, f)| (*p, f.clone())).collect(),
            tr: self.tr.iter().filter(|(p, _)| inside(p)).map(|(p, f)| (*p, f.clone())).collect(),
            weyl: self
                .weyl
                .iter()
                .filter(|(s, _)| domain.contains(s))
                .map(|(s, w)| (*s, w.clone()))
                .collect(),
            labels: self
                .labels
                .iter()
                .filter(|(s, _)| domain.contains(s))
                .map(|(s, l)| (*s, l.clone()))
                .collect(),
            domain,
        }
    }

    /// Replaces one entry of a stored map's normal-coordinate matrix.
    pub fn with_entry(&self, kind: MapKind, h: usize, k: usize, i: usize, j: usize, value: BigInt) -> Result<MackeyFunctor> {
        let f = self.stored(kind, h, k)?;
        let mut n = f.normal_matrix();
        if i >= n.rows() || j >= n.cols() {
            return Err(Error::Parameter(format!(
                "entry ({i},{j}) outside a {}x{} matrix",
                n.rows(),
                n.cols()
            )));
        }
        n[(i, j)] = value;
        let g = AbHom::from_normal(f.source().clone(), f.target().clone(), &n)?;
        let mut out = self.clone();
        match kind {
            MapKind::Res => out.res.insert((h, k), g),
            MapKind::Tr => out.tr.insert((h, k), g),
        };
        Ok(out)
    }

    /// Builds a functor with the same structure whose levels are replaced
    /// through `incl_H : N(H) → M(H)` and `proj_H : M(H) → N(H)`; each map `f`
    /// becomes `proj ∘ f ∘ incl`.
    pub fn transport(&self, parts: &BTreeMap<usize, (AbHom, AbHom)>) -> Result<MackeyFunctor> {
        let conj = |f: &AbHom, src: usize, dst: usize| -> Result<AbHom> { parts[&dst].1.compose(f)?.compose(&parts[&src].0) };
        let mut out = MackeyBuilder::new(
            &self.ambient,
            parts.iter().map(|(s, (incl, _))| (*s, (**incl.source()).clone())).collect(),
        );
        for (&(h, k), f) in &self.res {
            out.set_res(h, k, conj(f, h, k)?)?;
        }
        for (&(h, k), f) in &self.tr {
            out.set_tr(h, k, conj(f, k, h)?)?;
        }
        for (&s, ws) in &self.weyl {
            for (i, w) in ws.iter().enumerate() {
                out.set_weyl(s, i, conj(w, s, s)?)?;
            }
        }
        out.build()
    }
}

impl fmt::Debug for MackeyFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MackeyFunctor[{}]{{", self.ambient.family())?;
        for (i, (s, g)) in self.levels.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}: {g}", self.ambient.name(*s))?;
        }
        write!(f, "}}")
    }
}

/// Incremental construction of a [`MackeyFunctor`].
///
/// Maps out of or into a trivial level default to zero and Weyl actions
/// default to the identity; every other stored map must be set explicitly.
pub struct MackeyBuilder {
    ambient: Arc<Ambient>,
    levels: BTreeMap<usize, Arc<FgAbGroup>>,
    res: BTreeMap<(usize, usize), AbHom>,
    tr: BTreeMap<(usize, usize), AbHom>,
    weyl: BTreeMap<usize, Vec<Option<AbHom>>>,
    labels: BTreeMap<usize, Vec<String>>,
}

impl MackeyBuilder {
    pub fn new(ambient: &Arc<Ambient>, levels: BTreeMap<usize, FgAbGroup>) -> Self {
        let levels: BTreeMap<usize, Arc<FgAbGroup>> = levels.into_iter().map(|(s, g)| (s, Arc::new(g))).collect();
        let weyl = levels.keys().map(|&s| (s, vec![None; ambient.weyl(s).order()])).collect();
        Self {
            ambient: ambient.clone(),
            levels,
            res: BTreeMap::new(),
            tr: BTreeMap::new(),
            weyl,
            labels: BTreeMap::new(),
        }
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn level(&self, slot: usize) -> Result<Arc<FgAbGroup>> {
        self.levels
            .get(&slot)
            .cloned()
            .ok_or_else(|| Error::Parameter(format!("level {} is outside the domain", self.ambient.name(slot))))
    }

    fn check_pair(&self, h: usize, k: usize) -> Result<()> {
        if h == k || !self.ambient.lattice.contains(k, h) {
            return Err(Error::Parameter(format!(
                "{} is not a proper subgroup of {}",
                self.ambient.name(k),
                self.ambient.name(h)
            )));
        }
        Ok(())
    }

    fn check_ends(&self, f: &AbHom, src: usize, dst: usize) -> Result<()> {
        if **f.source() != *self.level(src)? || **f.target() != *self.level(dst)? {
            return Err(Error::Parameter(format!(
                "map does not run from level {} to level {}",
                self.ambient.name(src),
                self.ambient.name(dst)
            )));
        }
        Ok(())
    }

    /// Sets `R^H_K : M(H) → M(K)`.
    pub fn set_res(&mut self, h: usize, k: usize, f: AbHom) -> Result<&mut Self> {
        self.check_pair(h, k)?;
        self.check_ends(&f, h, k)?;
        self.res.insert((h, k), f);
        Ok(self)
    }

    /// Sets `Tr^H_K : M(K) → M(H)`.
    pub fn set_tr(&mut self, h: usize, k: usize, f: AbHom) -> Result<&mut Self> {
        self.check_pair(h, k)?;
        self.check_ends(&f, k, h)?;
        self.tr.insert((h, k), f);
        Ok(self)
    }

    /// Sets `R^H_K` from its matrix in normal coordinates.
    pub fn res_normal(&mut self, h: usize, k: usize, m: &IntMatrix) -> Result<&mut Self> {
        let f = AbHom::from_normal(self.level(h)?, self.level(k)?, m)?;
        self.set_res(h, k, f)
    }

    pub fn tr_normal(&mut self, h: usize, k: usize, m: &IntMatrix) -> Result<&mut Self> {
        let f = AbHom::from_normal(self.level(k)?, self.level(h)?, m)?;
        self.set_tr(h, k, f)
    }

    /// `R^H_K` and `Tr^H_K` as multiplication by integers on cyclic levels.
    pub fn scalars(&mut self, h: usize, k: usize, res: i64, tr: i64) -> Result<&mut Self> {
        let (mh, mk) = (self.level(h)?, self.level(k)?);
        self.set_res(h, k, scalar_map(&mh, &mk, res)?)?;
        self.set_tr(h, k, scalar_map(&mk, &mh, tr)?)
    }

    /// Sets the action of the `i`-th Weyl coset representative.
    pub fn set_weyl(&mut self, slot: usize, i: usize, f: AbHom) -> Result<&mut Self> {
        self.check_ends(&f, slot, slot)?;
        let ws = self.weyl.get_mut(&slot).expect("level present");
        if i >= ws.len() {
            return Err(Error::Parameter(format!(
                "Weyl group of {} has no coset {i}",
                self.ambient.name(slot)
            )));
        }
        ws[i] = Some(f);
        Ok(self)
    }

    /// Sets the Weyl action from the action `f` of one element `y0` of the
    /// normalizer, which must generate the Weyl group.
    pub fn weyl_generated(&mut self, slot: usize, y0: usize, f: AbHom) -> Result<&mut Self> {
        self.check_ends(&f, slot, slot)?;
        let g = self.ambient.group.clone();
        let order = self.ambient.weyl(slot).order();
        let mut y = g.identity();
        let mut power = AbHom::identity(self.level(slot)?);
        for _ in 0..order {
            let i = self
                .ambient
                .weyl_index(slot, y)
                .ok_or_else(|| Error::Parameter(format!("element {y0} does not normalize {}", self.ambient.name(slot))))?;
            self.weyl.get_mut(&slot).expect("level present")[i] = Some(power.clone());
            y = g.mul(y, y0);
            power = f.compose(&power)?;
        }
        if self.weyl[&slot].iter().any(Option::is_none) {
            return Err(Error::Parameter(format!(
                "element {y0} does not generate the Weyl group of {}",
                self.ambient.name(slot)
            )));
        }
        Ok(self)
    }

    pub fn set_labels(&mut self, slot: usize, labels: Vec<String>) -> &mut Self {
        self.labels.insert(slot, labels);
        self
    }

    pub fn build(&self) -> Result<MackeyFunctor> {
        let domain: BTreeSet<usize> = self.levels.keys().copied().collect();
        let mut res = BTreeMap::new();
        let mut tr = BTreeMap::new();
        for (h, k) in self.ambient.containments(&domain) {
            let (mh, mk) = (&self.levels[&h], &self.levels[&k]);
            let trivial = mh.is_trivial() || mk.is_trivial();
            let missing = |what: &str| Error::Parameter(format!("{what}^{}_{} is not set", self.ambient.name(h), self.ambient.name(k)));
            let r = match self.res.get(&(h, k)) {
                Some(f) => f.clone(),
                None if trivial => AbHom::zero(mh.clone(), mk.clone()),
                None => return Err(missing("R")),
            };
            let t = match self.tr.get(&(h, k)) {
                Some(f) => f.clone(),
                None if trivial => AbHom::zero(mk.clone(), mh.clone()),
                None => return Err(missing("Tr")),
            };
            res.insert((h, k), r);
            tr.insert((h, k), t);
        }
        let weyl = self
            .weyl
            .iter()
            .map(|(&s, ws)| {
                let full = ws
                    .iter()
                    .map(|w| w.clone().unwrap_or_else(|| AbHom::identity(self.levels[&s].clone())))
                    .collect();
                (s, full)
            })
            .collect();
        Ok(MackeyFunctor {
            ambient: self.ambient.clone(),
            domain,
            levels: self.levels.clone(),
            res,
            tr,
            weyl,
            labels: self.labels.clone(),
        })
    }
}

/// Multiplication by `c` between groups with at most one normal generator each.
pub fn scalar_map(src: &Arc<FgAbGroup>, dst: &Arc<FgAbGroup>, c: i64) -> Result<AbHom> {
    let (r, k) = (dst.normal_len(), src.normal_len());
    if r > 1 || k > 1 {
        return Err(Error::Parameter(format!("scalar map needs cyclic groups, got {src} → {dst}")));
    }
    let mut m = IntMatrix::zero(r, k);
    if r == 1 && k == 1 {
        m[(0, 0)] = BigInt::from(c);
    }
    AbHom::from_normal(src.clone(), dst.clone(), &m)
}

/// `[H : K]` for representatives.
pub(crate) fn index(ambient: &Ambient, h: usize, k: usize) -> u64 {
    (ambient.rep(h).order() / ambient.rep(k).order()) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ambient(s: &str) -> Arc<Ambient> {
        Ambient::new(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn containments_of_pq() {
        let a = ambient("pq-nonab:3,7,2");
        let all: BTreeSet<usize> = (0..4).collect();
        let pairs = a.containments(&all);
        assert_eq!(pairs, vec![(3, 2), (3, 1), (3, 0), (2, 0), (1, 0)]);
        assert_eq!(a.members(&all).len(), 10);
        assert_eq!(a.weyl_index(2, a.group().generator("a").unwrap()), Some(1));
    }

    #[test]
    fn a4_ambient_is_supported() {
        let a = ambient("a4");
        assert_eq!(a.slot_count(), 5);
        assert_eq!(a.weyl(3).order(), 3);
        assert_eq!(a.weyl(1).order(), 2);
    }

    #[test]
    fn expansion_through_conjugates() {
        let a = ambient("pq-nonab:3,7,2");
        let f = catalog(&CatalogName::HatZq { e: 2 }, &a).unwrap();
        let g = a.group();
        let cq = a.rep(2).clone();
        let x = g.generator("a").unwrap();
        // c_a on M(G/Cq) is multiplication by 2
        let c = f.conj_any(x, &cq).unwrap();
        assert_eq!(c.normal_matrix(), IntMatrix::from_rows(&[[2]]));
        let cp1 = a.lattice().class_members(1)[3].clone();
        let z = catalog(&CatalogName::ConstZ { a: 1, b: 7 }, &a).unwrap();
        let r = z.res_any(&g.whole(), &cp1).unwrap();
        assert_eq!(r.normal_matrix(), IntMatrix::from_rows(&[[7]]));
        assert!(z.res_any(&cp1, &cq).is_err());
    }

    #[test]
    fn builder_rejects_missing_maps() {
        let a = ambient("cyclic:3");
        let z = Arc::new(FgAbGroup::free(1));
        let levels = [(0, (*z).clone()), (1, (*z).clone())].into_iter().collect();
        let mut b = MackeyBuilder::new(&a, levels);
        assert!(b.build().is_err());
        b.scalars(1, 0, 1, 3).unwrap();
        assert!(b.build().is_ok());
    }
}
