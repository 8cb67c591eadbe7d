use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{catalog, catalog_names, CatalogName, MackeyFunctor};
use crate::error::{Error, Result};
use crate::exact::{AbHom, FgAbGroup, IntMatrix};

/// Automorphisms of a level in normal coordinates, for the shapes that occur
/// in the catalog: `0`, `Z`, `Z/n` and `(Z/ℓ)²` with `ℓ` prime.
fn automorphisms(g: &FgAbGroup) -> Result<Vec<IntMatrix>> {
    let t = g.torsion();
    match (t.len(), g.free_rank()) {
        (0, 0) => Ok(vec![IntMatrix::zero(0, 0)]),
        (0, 1) => Ok(vec![IntMatrix::from_rows(&[[1]]), IntMatrix::from_rows(&[[-1]])]),
        (1, 0) => {
            let n = t[0].to_i64().ok_or_else(|| Error::Unsupported(format!("level {g} is too large")))?;
            Ok((1..n).filter(|u| u.gcd(&n) == 1).map(|u| IntMatrix::from_rows(&[[u]])).collect())
        }
        (2, 0) if t[0] == t[1] && crate::groups::is_prime(t[0].to_u64().unwrap_or(0)) => {
            let l = t[0].to_i64().expect("small prime");
            let mut out = Vec::new();
            for a in 0..l {
                for b in 0..l {
                    for c in 0..l {
                        for d in 0..l {
                            if (a * d - b * c).rem_euclid(l) != 0 {
                                out.push(IntMatrix::from_rows(&[[a, b], [c, d]]));
                            }
                        }
                    }
                }
            }
            Ok(out)
        }
        _ => Err(Error::Precondition(format!("level {g} is neither cyclic nor (Z/l)^2"))),
    }
}

/// Whether `m` and `n` are isomorphic Mackey functors, found by searching
/// levelwise automorphisms compatible with every stored map.
pub fn is_isomorphic(m: &MackeyFunctor, n: &MackeyFunctor) -> Result<bool> {
    if m.domain() != n.domain() || m.ambient().family() != n.ambient().family() {
        return Ok(false);
    }
    let slots: Vec<usize> = m.domain().iter().copied().collect();
    let mut options = Vec::new();
    for &s in &slots {
        let (a, b) = (m.level(s)?, n.level(s)?);
        if !a.is_isomorphic(b) {
            return Ok(false);
        }
        let autos = automorphisms(a)?;
        let mut maps = Vec::new();
        for x in autos {
            maps.push(AbHom::from_normal(a.clone(), b.clone(), &x)?);
        }
        options.push(maps);
    }
    let mut chosen: Vec<AbHom> = Vec::new();
    search(m, n, &slots, &options, &mut chosen)
}

fn search(m: &MackeyFunctor, n: &MackeyFunctor, slots: &[usize], options: &[Vec<AbHom>], chosen: &mut Vec<AbHom>) -> Result<bool> {
    let depth = chosen.len();
    if depth == slots.len() {
        return Ok(true);
    }
    let s = slots[depth];
    for phi in &options[depth] {
        if !compatible(m, n, slots, chosen, s, phi)? {
            continue;
        }
        chosen.push(phi.clone());
        if search(m, n, slots, options, chosen)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

fn compatible(m: &MackeyFunctor, n: &MackeyFunctor, slots: &[usize], chosen: &[AbHom], s: usize, phi: &AbHom) -> Result<bool> {
    for (i, w) in m.weyl(s).iter().enumerate() {
        if phi.compose(w)? != n.weyl(s)[i].compose(phi)? {
            return Ok(false);
        }
    }
    for (j, &t) in slots.iter().enumerate().take(chosen.len()) {
        let psi = &chosen[j];
        for (h, k, ph, pk) in [(s, t, phi, psi), (t, s, psi, phi)] {
            if !m.restrictions().contains_key(&(h, k)) {
                continue;
            }
            if pk.compose(&m.res(h, k)?)? != n.res(h, k)?.compose(ph)? {
                return Ok(false);
            }
            if ph.compose(&m.tr(h, k)?)? != n.tr(h, k)?.compose(pk)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Names a functor whose levels are cyclic (or `(Z/ℓ)²`) by comparing it
/// with every catalog entry of its group. The zero functor is `Unknown`.
pub fn classify(m: &MackeyFunctor) -> Result<CatalogName> {
    for g in m.levels().values() {
        if !(g.is_cyclic() || g.is_trivial()) {
            automorphisms(g)?;
        }
    }
    if m.is_zero() {
        return Ok(CatalogName::Unknown);
    }
    let ambient = m.ambient();
    for name in catalog_names(ambient.family()) {
        let c = catalog(&name, ambient)?;
        // functors drawn on a smaller lattice are compared on that lattice
        if !c.domain().is_subset(m.domain()) {
            continue;
        }
        let candidate = m.restrict_domain(c.domain());
        if is_isomorphic(&candidate, &c)? {
            return Ok(name);
        }
    }
    Ok(CatalogName::Unknown)
}

fn prime_power_part(d: &BigInt, l: &BigInt) -> BigInt {
    let mut x = BigInt::one();
    let mut r = d.clone();
    while (&r % l).is_zero() {
        r /= l;
        x *= l;
    }
    x
}

fn modular_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

/// `incl` and `proj` run between the generators of `sub` and the normal
/// coordinates of `g`.
fn section_pair(g: &Arc<FgAbGroup>, sub: Arc<FgAbGroup>, incl: &IntMatrix, proj: &IntMatrix) -> Result<(AbHom, AbHom)> {
    let i = AbHom::new(sub.clone(), g.clone(), g.normal_to_presentation().mul(incl))?;
    let p = AbHom::new(g.clone(), sub, proj.mul(g.presentation_to_normal()))?;
    Ok((i, p))
}

/// Torsion-free quotient followed by the `ℓ`-primary torsion parts for each
/// prime `ℓ`, all nonzero; maps are induced through sections and projections.
pub fn primary_parts(m: &MackeyFunctor) -> Result<Vec<MackeyFunctor>> {
    let mut primes: Vec<u64> = Vec::new();
    for g in m.levels().values() {
        for d in g.torsion() {
            let d = d.abs().to_u64().ok_or_else(|| Error::Unsupported("torsion too large".into()))?;
            for l in crate::groups::prime_factors(d) {
                if !primes.contains(&l) {
                    primes.push(l);
                }
            }
        }
    }
    primes.sort_unstable();

    let mut out = Vec::new();
    let mut free_parts = BTreeMap::new();
    for (&s, g) in m.levels() {
        let (t, r) = (g.torsion().len(), g.free_rank());
        let sub = Arc::new(FgAbGroup::free(r));
        let mut incl = IntMatrix::zero(t + r, r);
        let mut proj = IntMatrix::zero(r, t + r);
        for i in 0..r {
            incl[(t + i, i)] = BigInt::one();
            proj[(i, t + i)] = BigInt::one();
        }
        free_parts.insert(s, section_pair(g, sub, &incl, &proj)?);
    }
    let free = m.transport(&free_parts)?;
    if !free.is_zero() {
        out.push(free);
    }
    for l in primes {
        let lb = BigInt::from(l);
        let mut parts = BTreeMap::new();
        for (&s, g) in m.levels() {
            let n = g.normal_len();
            let kept: Vec<(usize, BigInt)> = g
                .torsion()
                .iter()
                .enumerate()
                .map(|(i, d)| (i, prime_power_part(d, &lb)))
                .filter(|(_, x)| !x.is_one())
                .collect();
            let orders: Vec<BigInt> = kept.iter().map(|(_, x)| x.clone()).collect();
            let sub = Arc::new(FgAbGroup::from_invariants(&orders, 0));
            let mut incl = IntMatrix::zero(n, kept.len());
            let mut proj = IntMatrix::zero(kept.len(), n);
            for (j, (i, x)) in kept.iter().enumerate() {
                let cof = &g.torsion()[*i] / x;
                incl[(*i, j)] = cof.clone();
                proj[(j, *i)] = modular_inverse(&cof, x);
            }
            parts.insert(s, section_pair(g, sub, &incl, &proj)?);
        }
        let part = m.transport(&parts)?;
        if !part.is_zero() {
            out.push(part);
        }
    }
    Ok(out)
}

/// Names of the primary parts of `m`; empty for the zero functor.
pub fn classify_summands(m: &MackeyFunctor) -> Result<Vec<CatalogName>> {
    primary_parts(m)?.iter().map(classify).collect()
}
