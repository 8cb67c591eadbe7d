//! Reconstruction of the top level of a cohomological Mackey functor from
//! its values on Sylow subgroups.
//!
//! With Sylow subgroups `P_1, …, P_n`, one per prime, the top level is the
//! quotient of `⊕ M(G/P_i)` by the relations
//! `Tr^{P_i}_H(x) ∼ Tr^{P_j}_{gHg⁻¹}(c_g x)` for `H ≤ P_i`, `gHg⁻¹ ≤ P_j`.
//! The maps `Φ = [Σ r_i Tr_i R_i]` and `Ψ = (Tr^G_{P_i})` are mutually inverse
//! whenever `Σ r_i [G:P_i] = 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{hom_is_isomorphism, quotient_by_relations, AbHom, FgAbGroup, IntMatrix};
use crate::groups::Subgroup;
use crate::mackey::{check_cohomological, check_mackey_axioms, subgroup_classes_within, MackeyBuilder, MackeyFunctor};

/// A functor without its top level together with one Sylow subgroup per prime.
#[derive(Clone, Debug)]
pub struct SylowData {
    sylows: Vec<Subgroup>,
    truncated: MackeyFunctor,
}

impl SylowData {
    /// Uses the deterministic Sylow subgroups of the ambient group. A top level,
    /// if present, is dropped.
    pub fn new(m: &MackeyFunctor) -> Result<Self> {
        let g = m.group();
        let sylows = g.primes().into_iter().map(|p| g.sylow_subgroup(p)).collect::<Result<Vec<_>>>()?;
        Self::with_sylows(m, sylows)
    }

    /// Uses the given Sylow subgroups, which may be any members of their classes.
    pub fn with_sylows(m: &MackeyFunctor, sylows: Vec<Subgroup>) -> Result<Self> {
        let truncated = m.truncate();
        let amb = truncated.ambient();
        let g = amb.group();
        let primes = g.primes();
        if sylows.len() != primes.len() {
            return Err(Error::Parameter(format!(
                "expected {} Sylow subgroups, got {}",
                primes.len(),
                sylows.len()
            )));
        }
        for (p, s) in primes.iter().zip(&sylows) {
            let want = g.sylow_subgroup(*p)?.order();
            if s.order() != want || !amb.lattice().all().contains(s) {
                return Err(Error::Parameter(format!("{} is not a Sylow {p}-subgroup", amb.describe(s))));
            }
            if s.order() == g.order() {
                return Err(Error::Unsupported("the whole group is a Sylow subgroup; nothing to recover".into()));
            }
            let slot = amb.lattice().class_of(s);
            if !truncated.in_domain(slot) {
                return Err(Error::Parameter(format!("level {} is missing", amb.name(slot))));
            }
        }
        Ok(Self { sylows, truncated })
    }

    pub fn sylows(&self) -> &[Subgroup] {
        &self.sylows
    }

    pub fn truncated(&self) -> &MackeyFunctor {
        &self.truncated
    }

    fn index(&self, i: usize) -> u64 {
        (self.truncated.group().order() / self.sylows[i].order()) as u64
    }
}

/// The recovered top level with its structure maps to and from the Sylow levels.
#[derive(Clone, Debug)]
pub struct RecoveredTop {
    pub top: Arc<FgAbGroup>,
    /// `Tr^G_{P_i} : M(G/P_i) → top`.
    pub tr_from_sylow: Vec<AbHom>,
    /// `R^G_{P_i} : top → M(G/P_i)`.
    pub res_to_sylow: Vec<AbHom>,
    pub bezout: Vec<BigInt>,
    sum: Arc<FgAbGroup>,
}

impl RecoveredTop {
    /// `⊕ M(G/P_i)` before the quotient; `top` shares its generators.
    pub fn sum(&self) -> &Arc<FgAbGroup> {
        &self.sum
    }
}

/// Which conjugating elements enter the relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conjugators {
    /// `H` up to `P_i`-conjugacy and `g` over `P_j\G/H`.
    Transversal,
    /// Every subgroup `H ≤ P_i` and every `g ∈ G`.
    All,
}

/// Integers `r_i` with `Σ r_i·indices[i] = 1`; for two indices `r_1` is the
/// least nonnegative choice.
pub fn bezout_coefficients(indices: &[u64]) -> Result<Vec<BigInt>> {
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut g = BigInt::zero();
    for &d in indices {
        let d = BigInt::from(d);
        let e = g.extended_gcd(&d);
        for c in &mut coeffs {
            *c *= &e.x;
        }
        coeffs.push(e.y);
        g = e.gcd;
    }
    if !g.is_one() {
        return Err(Error::Precondition(format!("indices {indices:?} are not coprime")));
    }
    if let [a, b] = indices {
        let (a, b) = (BigInt::from(*a), BigInt::from(*b));
        let r1 = coeffs[0].mod_floor(&b);
        coeffs[1] = (BigInt::one() - &r1 * &a) / &b;
        coeffs[0] = r1;
    }
    Ok(coeffs)
}

fn refuse_if_not_cohomological(m: &MackeyFunctor) -> Result<()> {
    for report in [check_mackey_axioms(m), check_cohomological(m)] {
        if let Some(v) = report.violations.first() {
            return Err(Error::Recovery(format!("input violates {}: {}", v.identity, v.detail)));
        }
    }
    Ok(())
}

/// Places the columns of `f` (presentation coordinates of `M(G/P_i)`) in the sum.
fn embed(f: &AbHom, offset: usize, total: usize) -> IntMatrix {
    let m = f.matrix();
    let mut out = IntMatrix::zero(total, m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            out[(offset + r, c)] = m[(r, c)].clone();
        }
    }
    out
}

pub fn recover_top(data: &SylowData) -> Result<RecoveredTop> {
    recover_top_with(data, None, Conjugators::Transversal)
}

/// [`recover_top`] with explicit Bézout coefficients and relation set.
pub fn recover_top_with(data: &SylowData, bezout: Option<Vec<BigInt>>, conjugators: Conjugators) -> Result<RecoveredTop> {
    let m = &data.truncated;
    refuse_if_not_cohomological(m)?;
    let amb = m.ambient();
    let g = amb.group();
    let n = data.sylows.len();
    let indices: Vec<u64> = (0..n).map(|i| data.index(i)).collect();
    let bezout = match bezout {
        Some(r) => {
            let total: BigInt = r.iter().zip(&indices).map(|(r, d)| r * BigInt::from(*d)).sum();
            if r.len() != n || !total.is_one() {
                return Err(Error::Parameter(format!("{r:?} is not a Bézout solution for {indices:?}")));
            }
            r
        }
        None => bezout_coefficients(&indices)?,
    };

    let levels: Vec<Arc<FgAbGroup>> = data.sylows.iter().map(|p| m.level_of(p).cloned()).collect::<Result<_>>()?;
    let sum = Arc::new(FgAbGroup::direct_sum(&levels.iter().map(|l| l.as_ref()).collect::<Vec<_>>()));
    let mut offsets = Vec::with_capacity(n);
    let mut acc = 0;
    for l in &levels {
        offsets.push(acc);
        acc += l.generator_count();
    }
    let total = acc;

    let mut rels: Vec<Vec<BigInt>> = Vec::new();
    for (i, pi) in data.sylows.iter().enumerate() {
        let hs: Vec<Subgroup> = match conjugators {
            Conjugators::Transversal => subgroup_classes_within(amb, pi),
            Conjugators::All => amb.lattice().all().iter().filter(|h| h.is_subset(pi)).cloned().collect(),
        };
        // subgroups outside the domain (the C2's of a restricted A4 lattice) carry no data
        for h in hs.into_iter().filter(|h| m.in_domain(amb.lattice().class_of(h))) {
            let left = embed(&m.tr_any(pi, &h)?, offsets[i], total);
            for (j, pj) in data.sylows.iter().enumerate() {
                let elements: Vec<usize> = match conjugators {
                    Conjugators::Transversal => g.double_coset_reps(pj, &h).into_iter().map(|d| d.g).collect(),
                    Conjugators::All => g.elements().collect(),
                };
                for x in elements {
                    let h2 = g.conjugate(x, &h);
                    if !h2.is_subset(pj) {
                        continue;
                    }
                    let right = embed(&m.tr_any(pj, &h2)?.compose(&m.conj_any(x, &h)?)?, offsets[j], total);
                    let d = left.sub(&right);
                    rels.extend(d.columns().into_iter().filter(|c| c.iter().any(|v| !v.is_zero())));
                }
            }
        }
    }
    let (top, _) = quotient_by_relations(&sum, &rels);
    let tr_from_sylow = (0..n)
        .map(|i| {
            AbHom::new(
                levels[i].clone(),
                top.clone(),
                embed(&AbHom::identity(levels[i].clone()), offsets[i], total),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rec = RecoveredTop {
        top,
        tr_from_sylow,
        res_to_sylow: Vec::new(),
        bezout,
        sum,
    };
    rec.res_to_sylow = (0..n).map(|i| recovered_restriction(&rec, data, i)).collect::<Result<_>>()?;
    Ok(rec)
}

/// `Σ_{P_i g P_k} Tr^{P_i}_{P_i∩gP_kg⁻¹} ∘ c_g ∘ R^{P_k}_{P_k∩g⁻¹P_ig}`, which
/// equals `R^G_{P_i} ∘ Tr^G_{P_k}` and only involves proper levels.
fn double_coset_expansion(data: &SylowData, i: usize, k: usize) -> Result<AbHom> {
    let m = &data.truncated;
    let g = m.group();
    let (pi, pk) = (&data.sylows[i], &data.sylows[k]);
    let mut acc = AbHom::zero(m.level_of(pk)?.clone(), m.level_of(pi)?.clone());
    for d in g.double_coset_reps(pi, pk) {
        let term = m
            .tr_any(pi, &d.left)?
            .compose(&m.conj_any(d.g, &d.right)?)?
            .compose(&m.res_any(pk, &d.right)?)?;
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// The map `top → M(G/P_i)` whose composite with each `Tr^G_{P_k}` is the
/// double coset expansion of `R^G_{P_i} Tr^G_{P_k}`.
pub fn recovered_restriction(rec: &RecoveredTop, data: &SylowData, i: usize) -> Result<AbHom> {
    let target = data.truncated.level_of(&data.sylows[i])?.clone();
    let mut blocks = IntMatrix::zero(target.generator_count(), 0);
    for k in 0..data.sylows.len() {
        blocks = blocks.hconcat(double_coset_expansion(data, i, k)?.matrix());
    }
    debug_assert_eq!(blocks.cols(), rec.sum.generator_count());
    AbHom::new(rec.top.clone(), target, blocks).map_err(|e| {
        Error::Recovery(format!(
            "restriction to {} is not constant on classes ({e}); the input is not cohomological",
            data.truncated.ambient().describe(&data.sylows[i])
        ))
    })
}

/// Finds `x` with `x·K·x⁻¹ ≤ P` for some Sylow `P`, returning `(index, x)`.
fn sylow_containing(data: &SylowData, k: &Subgroup) -> Option<(usize, usize)> {
    let g = data.truncated.group();
    data.sylows
        .iter()
        .enumerate()
        .find_map(|(i, p)| g.elements().find(|&x| g.conjugate(x, k).is_subset(p)).map(|x| (i, x)))
}

/// The full functor: the truncated data plus the recovered top, with
/// `Tr^G_K = Tr^G_P ∘ Tr^P_{xKx⁻¹} ∘ c_x` and `R^G_K = c_{x⁻¹} ∘ R^P_{xKx⁻¹} ∘ R^G_P`.
pub fn complete(data: &SylowData) -> Result<MackeyFunctor> {
    let rec = recover_top(data)?;
    complete_with(data, &rec)
}

fn complete_with(data: &SylowData, rec: &RecoveredTop) -> Result<MackeyFunctor> {
    let m = &data.truncated;
    let amb = m.ambient().clone();
    let g = amb.group();
    let top = amb.top();
    let mut levels: BTreeMap<usize, FgAbGroup> = m.levels().iter().map(|(s, l)| (*s, (**l).clone())).collect();
    levels.insert(top, (*rec.top).clone());
    let mut b = MackeyBuilder::new(&amb, levels);
    let arcs: BTreeMap<usize, Arc<FgAbGroup>> = m
        .domain()
        .iter()
        .chain([&top])
        .map(|&s| Ok((s, b.level(s)?)))
        .collect::<Result<_>>()?;
    let lift = |f: &AbHom, src: usize, dst: usize| AbHom::new(arcs[&src].clone(), arcs[&dst].clone(), f.matrix().clone());
    for (&(h, k), f) in m.restrictions() {
        b.set_res(h, k, lift(f, h, k)?)?;
        b.set_tr(h, k, lift(&m.tr(h, k)?, k, h)?)?;
    }
    for &s in m.domain() {
        for (i, w) in m.weyl(s).iter().enumerate() {
            b.set_weyl(s, i, lift(w, s, s)?)?;
        }
        if let Some(l) = m.labels(s) {
            b.set_labels(s, l.to_vec());
        }
    }
    for &s in m.domain() {
        let k = amb.rep(s);
        let (i, x) =
            sylow_containing(data, k).ok_or_else(|| Error::Unsupported(format!("{} is not contained in a Sylow subgroup", amb.name(s))))?;
        let p = &data.sylows[i];
        let kx = g.conjugate(x, k);
        let tr = rec.tr_from_sylow[i].compose(&m.tr_any(p, &kx)?)?.compose(&m.conj_any(x, k)?)?;
        let res = m
            .conj_any(g.inv(x), &kx)?
            .compose(&m.res_any(p, &kx)?)?
            .compose(&rec.res_to_sylow[i])?;
        b.set_res(top, s, lift(&res, top, s)?)?;
        b.set_tr(top, s, lift(&tr, s, top)?)?;
    }
    b.build()
}

/// Outcome of [`roundtrip_verify`]: one line per checked identity.
#[derive(Clone, Debug, Default)]
pub struct RoundtripReport {
    pub checks: Vec<(String, bool)>,
}

impl RoundtripReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    fn record(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push((name.into(), ok));
    }
}

impl fmt::Display for RoundtripReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, ok) in &self.checks {
            writeln!(f, "{} {name}", if *ok { "ok  " } else { "FAIL" })?;
        }
        Ok(())
    }
}

/// Recovers `M(G/G)` from the truncation of a full cohomological functor and
/// compares it with the original through `Φ` and `Ψ`.
pub fn roundtrip_verify(m: &MackeyFunctor, sylows: Option<Vec<Subgroup>>) -> Result<RoundtripReport> {
    if !m.has_top() {
        return Err(Error::Parameter("roundtrip needs the top level".into()));
    }
    let data = match sylows {
        Some(s) => SylowData::with_sylows(m, s)?,
        None => SylowData::new(m)?,
    };
    let rec = recover_top(&data)?;
    let amb = m.ambient();
    let whole = amb.rep(amb.top()).clone();
    let mg = m.level(amb.top())?.clone();
    let n = data.sylows.len();

    let mut psi_blocks = IntMatrix::zero(mg.generator_count(), 0);
    for p in &data.sylows {
        psi_blocks = psi_blocks.hconcat(m.tr_any(&whole, p)?.matrix());
    }
    let mut report = RoundtripReport::default();
    let psi = match AbHom::new(rec.top.clone(), mg.clone(), psi_blocks) {
        Ok(f) => f,
        Err(e) => {
            report.record(format!("Ψ is constant on classes ({e})"), false);
            return Ok(report);
        }
    };
    let mut phi = AbHom::zero(mg.clone(), rec.top.clone());
    for i in 0..n {
        let term = rec.tr_from_sylow[i]
            .compose(&m.res_any(&whole, &data.sylows[i])?)?
            .scale(&rec.bezout[i]);
        phi = phi.add(&term)?;
    }
    report.record("Ψ∘Φ = id on M(G/G)", psi.compose(&phi)?.is_identity());
    report.record("Φ∘Ψ = id on the recovered top", phi.compose(&psi)?.is_identity());
    report.record("Ψ is an isomorphism", hom_is_isomorphism(&psi));
    for (i, p) in data.sylows.iter().enumerate() {
        let name = amb.describe(p);
        report.record(
            format!("Ψ∘Tr_rec = Tr^G_{name}"),
            psi.compose(&rec.tr_from_sylow[i])? == m.tr_any(&whole, p)?,
        );
        report.record(
            format!("R_rec = R^G_{name}∘Ψ"),
            rec.res_to_sylow[i] == m.res_any(&whole, p)?.compose(&psi)?,
        );
    }
    let full = complete_with(&data, &rec)?;
    let top = amb.top();
    for &s in data.truncated.domain() {
        let name = amb.name(s);
        let (rf, tf) = (full.res(top, s)?, full.tr(top, s)?);
        let lift = |f: &AbHom, src: &Arc<FgAbGroup>, dst: &Arc<FgAbGroup>| AbHom::new(src.clone(), dst.clone(), f.matrix().clone());
        let ms = m.level(s)?;
        let r_ok = lift(&rf, &rec.top, ms)? == m.res(top, s)?.compose(&psi)?;
        let t_ok = psi.compose(&lift(&tf, ms, &rec.top)?)? == m.tr(top, s)?;
        report.record(format!("completed R^G_{name} agrees under Ψ"), r_ok);
        report.record(format!("completed Tr^G_{name} agrees under Ψ"), t_ok);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::{catalog, catalog_names, check_cohomological, Ambient, CatalogName};

    fn ambient(f: &str) -> Arc<crate::mackey::Ambient> {
        Ambient::new(&f.parse().unwrap()).unwrap()
    }

    #[test]
    fn bezout_is_canonical() {
        let r = bezout_coefficients(&[7, 3]).unwrap();
        assert_eq!(r, vec![BigInt::from(1), BigInt::from(-2)]);
        let r = bezout_coefficients(&[3, 4]).unwrap();
        assert_eq!(r, vec![BigInt::from(3), BigInt::from(-2)]);
        assert!(bezout_coefficients(&[2, 4]).is_err());
    }

    #[test]
    fn tops_of_small_examples() {
        let a = ambient("pq-nonab:3,7,2");
        let top = |name| recover_top(&SylowData::new(&catalog(&name, &a).unwrap()).unwrap()).unwrap().top;
        assert!(top(CatalogName::ConstZ { a: 1, b: 1 }).is_isomorphic(&FgAbGroup::free(1)));
        assert!(top(CatalogName::HatZq { e: 2 }).is_trivial());
        assert!(top(CatalogName::HatZq { e: 1 }).is_isomorphic(&FgAbGroup::cyclic(&BigInt::from(7))));
        assert!(top(CatalogName::HatZp).is_isomorphic(&FgAbGroup::cyclic(&BigInt::from(3))));
    }

    #[test]
    fn restrictions_of_constant_functors() {
        let a = ambient("pq-nonab:3,7,2");
        for (x, y) in [(1, 1), (3, 1), (1, 7), (3, 7)] {
            let m = catalog(&CatalogName::ConstZ { a: x, b: y }, &a).unwrap();
            let data = SylowData::new(&m).unwrap();
            let rec = recover_top(&data).unwrap();
            // generator of the recovered top, normalised to positive restrictions
            let gen = rec.top.lift(&[BigInt::one()]);
            let mut r: Vec<BigInt> = rec.res_to_sylow.iter().map(|f| f.apply(&gen)[0].clone()).collect();
            if r[0] < BigInt::zero() {
                r.iter_mut().for_each(|v| *v = -&*v);
            }
            r.sort();
            let mut want = vec![BigInt::from(x), BigInt::from(y)];
            want.sort();
            assert_eq!(r, want);
        }
    }

    #[test]
    fn roundtrip_on_catalogs() {
        for fam in ["pq-nonab:3,7,2", "pq-ab:3,5", "a4"] {
            let a = ambient(fam);
            for name in catalog_names(a.family()) {
                let m = catalog(&name, &a).unwrap();
                let r = roundtrip_verify(&m, None).unwrap();
                assert!(r.passed(), "{fam} {name}\n{r}");
            }
        }
    }

    #[test]
    fn conjugate_sylows_and_relation_sets_agree() {
        let a = ambient("pq-nonab:3,7,2");
        let g = a.group();
        let cp = g.sylow_subgroup(3).unwrap();
        let cq = g.sylow_subgroup(7).unwrap();
        for name in catalog_names(a.family()) {
            let m = catalog(&name, &a).unwrap();
            for x in [1, 5, 13] {
                let r = roundtrip_verify(&m, Some(vec![g.conjugate(x, &cp), cq.clone()])).unwrap();
                assert!(r.passed(), "{name}\n{r}");
            }
            let data = SylowData::new(&m).unwrap();
            let t1 = recover_top(&data).unwrap();
            let t2 = recover_top_with(&data, Some(vec![BigInt::from(4), BigInt::from(-9)]), Conjugators::All).unwrap();
            assert!(t1.top.is_isomorphic(&t2.top), "{name}");
            assert_eq!(
                complete(&data).unwrap().level(a.top()).unwrap().torsion(),
                m.level(a.top()).unwrap().torsion()
            );
        }
    }

    #[test]
    fn a4_constant_from_klein_and_c3() {
        let a = ambient("a4");
        let m = catalog(&CatalogName::ConstZ { a: 1, b: 1 }, &a).unwrap();
        let data = SylowData::new(&m).unwrap();
        let full = complete(&data).unwrap();
        assert!(full.level(a.top()).unwrap().is_isomorphic(&FgAbGroup::free(1)));
        assert!(check_cohomological(&full).passed());
    }

    #[test]
    fn non_cohomological_input_is_refused() {
        let a = ambient("pq-nonab:3,7,2");
        let b = crate::mackey::burnside(&a).unwrap();
        assert!(matches!(recover_top(&SylowData::new(&b).unwrap()), Err(Error::Recovery(_))));
        let zero = catalog(&CatalogName::HatZp, &a).unwrap().restrict_domain(&Default::default());
        assert!(SylowData::new(&zero).is_err());
    }
}
