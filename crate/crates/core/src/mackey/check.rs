use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{index, MackeyFunctor};
use crate::error::Result;
use crate::exact::{AbHom, IntMatrix};
use crate::groups::{GroupFamily, Subgroup};

/// One failed identity, named by the composite that disagrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: String,
    pub detail: String,
}

/// Outcome of a checker: empty when every identity holds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, identity: impl Into<String>, outcome: Result<Option<String>>) {
        self.checked += 1;
        let detail = match outcome {
            Ok(None) => return,
            Ok(Some(d)) => d,
            Err(e) => e.to_string(),
        };
        self.violations.push(Violation {
            identity: identity.into(),
            detail,
        });
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "pass ({} identities)", self.checked);
        }
        write!(f, "fail ({} of {} identities)", self.violations.len(), self.checked)?;
        for v in &self.violations {
            write!(f, "\n  {}: {}", v.identity, v.detail)?;
        }
        Ok(())
    }
}

fn compare(lhs: &AbHom, rhs: &AbHom) -> Option<String> {
    if lhs == rhs {
        None
    } else {
        Some(format!("{} vs {}", render(&lhs.normal_matrix()), render(&rhs.normal_matrix())))
    }
}

fn render(m: &IntMatrix) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
        .collect();
    format!("[{}]", rows.join(";"))
}

/// Checks the Weyl actions, transitivity, conjugation equivariance and the
/// double coset formula over every subgroup whose class lies in the domain.
pub fn check_mackey_axioms(m: &MackeyFunctor) -> CheckReport {
    let mut report = CheckReport::default();
    let amb = m.ambient().clone();
    let g = amb.group().clone();

    for &s in m.domain() {
        let reps = &amb.weyl(s).coset_representatives;
        let name = amb.name(s);
        report.record(
            format!("c_1 on {name}"),
            Ok((!m.weyl(s)[0].is_identity()).then(|| "not the identity".into())),
        );
        for (i, &x) in reps.iter().enumerate() {
            for (j, &y) in reps.iter().enumerate() {
                let outcome = m
                    .weyl_at(s, g.mul(x, y))
                    .and_then(|xy| Ok(compare(&m.weyl(s)[i].compose(&m.weyl(s)[j])?, &xy)));
                report.record(format!("c_{x}∘c_{y} on {name}"), outcome);
            }
        }
    }

    let members = amb.members(m.domain());
    let d = |h: &Subgroup| amb.describe(h);
    for h in &members {
        for k in members.iter().filter(|k| k.is_subset(h) && *k != h) {
            for l in members.iter().filter(|l| l.is_subset(k) && *l != k) {
                let outcome = (|| {
                    let lhs = m.res_any(k, l)?.compose(&m.res_any(h, k)?)?;
                    Ok(compare(&lhs, &m.res_any(h, l)?))
                })();
                report.record(format!("R^{}_{}∘R^{}_{}", d(k), d(l), d(h), d(k)), outcome);
                let outcome = (|| {
                    let lhs = m.tr_any(h, k)?.compose(&m.tr_any(k, l)?)?;
                    Ok(compare(&lhs, &m.tr_any(h, l)?))
                })();
                report.record(format!("Tr^{}_{}∘Tr^{}_{}", d(h), d(k), d(k), d(l)), outcome);
            }
        }
    }

    for x in g.elements().skip(1) {
        for h in &members {
            let xh = g.conjugate(x, h);
            for l in members.iter().filter(|l| l.is_subset(h) && *l != h) {
                let xl = g.conjugate(x, l);
                let outcome = (|| {
                    let lhs = m.conj_any(x, l)?.compose(&m.res_any(h, l)?)?;
                    let rhs = m.res_any(&xh, &xl)?.compose(&m.conj_any(x, h)?)?;
                    Ok(compare(&lhs, &rhs))
                })();
                report.record(format!("c_{x}∘R^{}_{}", d(h), d(l)), outcome);
                let outcome = (|| {
                    let lhs = m.conj_any(x, h)?.compose(&m.tr_any(h, l)?)?;
                    let rhs = m.tr_any(&xh, &xl)?.compose(&m.conj_any(x, l)?)?;
                    Ok(compare(&lhs, &rhs))
                })();
                report.record(format!("c_{x}∘Tr^{}_{}", d(h), d(l)), outcome);
            }
        }
    }

    for h in &members {
        let below: Vec<&Subgroup> = members.iter().filter(|k| k.is_subset(h)).collect();
        for k in &below {
            for k2 in &below {
                if *k == h && *k2 == h {
                    continue;
                }
                let identity = format!("R^{}_{}∘Tr^{}_{}", d(h), d(k2), d(h), d(k));
                report.record(identity, double_coset(m, h, k, k2));
            }
        }
    }

    if let GroupFamily::PqNonabelian { .. } = amb.family() {
        if m.domain().len() == amb.slot_count() {
            for (identity, outcome) in pq_composites(m) {
                report.record(identity, outcome);
            }
        }
    }
    report
}

/// Compares `R^H_{K'}∘Tr^H_K` with `Σ Tr^{K'}_{K'∩gKg⁻¹}∘c_g∘R^K_{K∩g⁻¹K'g}`
/// over `K'\H/K`; `None` when every term is in the domain and they agree.
fn double_coset(m: &MackeyFunctor, h: &Subgroup, k: &Subgroup, k2: &Subgroup) -> Result<Option<String>> {
    let amb = m.ambient();
    let g = amb.group();
    let lhs = m.res_any(h, k2)?.compose(&m.tr_any(h, k)?)?;
    let mut rhs = AbHom::zero(m.level_of(k)?.clone(), m.level_of(k2)?.clone());
    for dc in g.double_cosets_in(k2, h, k) {
        let inside = |s: &Subgroup| m.in_domain(amb.lattice().class_of(s));
        if !inside(&dc.left) || !inside(&dc.right) {
            return Ok(None);
        }
        let term = m
            .tr_any(k2, &dc.left)?
            .compose(&m.conj_any(dc.g, &dc.right)?)?
            .compose(&m.res_any(k, &dc.right)?)?;
        rhs = rhs.add(&term)?;
    }
    Ok(compare(&lhs, &rhs))
}

/// The four composites of a transfer followed by a restriction between the
/// classes `C_p` and `C_q`, written with the orbit representatives `I`.
fn pq_composites(m: &MackeyFunctor) -> Vec<(String, Result<Option<String>>)> {
    let amb = m.ambient().clone();
    let g = amb.group().clone();
    let slots = (|| Ok::<_, crate::Error>((amb.slot("e")?, amb.slot("Cp")?, amb.slot("Cq")?, amb.top())))();
    let Ok((e, cp, cq, top)) = slots else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let (a, b) = match (g.generator("a"), g.generator("b")) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return out,
    };
    let p_val = g.element_order(a) as i64;
    let cp_cp = (|| {
        let lhs = m.res(top, cp)?.compose(&m.tr(top, cp)?)?;
        let mut rhs = AbHom::identity(m.level(cp)?.clone());
        for i in amb.family().complex_orbit_reps() {
            let bi = g.pow(b, i as i64);
            let term = m.tr(cp, e)?.compose(&m.weyl_at(e, bi)?)?.compose(&m.res(cp, e)?)?;
            rhs = rhs.add(&term)?;
        }
        Ok(compare(&lhs, &rhs))
    })();
    out.push(("R^G_Cp∘Tr^G_Cp = 1 + Σ_I Tr^Cp_e∘b^i∘R^Cp_e".to_string(), cp_cp));
    let cq_cp = (|| {
        let lhs = m.res(top, cq)?.compose(&m.tr(top, cp)?)?;
        Ok(compare(&lhs, &m.tr(cq, e)?.compose(&m.res(cp, e)?)?))
    })();
    out.push(("R^G_Cq∘Tr^G_Cp = Tr^Cq_e∘R^Cp_e".to_string(), cq_cp));
    let cp_cq = (|| {
        let lhs = m.res(top, cp)?.compose(&m.tr(top, cq)?)?;
        Ok(compare(&lhs, &m.tr(cp, e)?.compose(&m.res(cq, e)?)?))
    })();
    out.push(("R^G_Cp∘Tr^G_Cq = Tr^Cp_e∘R^Cq_e".to_string(), cp_cq));
    let cq_cq = (|| {
        let lhs = m.res(top, cq)?.compose(&m.tr(top, cq)?)?;
        let mut rhs = AbHom::zero(m.level(cq)?.clone(), m.level(cq)?.clone());
        for i in 0..p_val {
            rhs = rhs.add(&m.weyl_at(cq, g.pow(a, i))?)?;
        }
        Ok(compare(&lhs, &rhs))
    })();
    out.push(("R^G_Cq∘Tr^G_Cq = Σ a^i".to_string(), cq_cq));
    out
}

/// Checks `Tr^H_K ∘ R^H_K = [H:K]` at every stored pair. A failure names the
/// first generator whose image is wrong, using level labels when present.
pub fn check_cohomological(m: &MackeyFunctor) -> CheckReport {
    let mut report = CheckReport::default();
    let amb = m.ambient().clone();
    for (h, k) in amb.containments(m.domain()) {
        let identity = format!("Tr^{0}_{1}∘R^{0}_{1} = [{0}:{1}]", amb.name(h), amb.name(k));
        let outcome = (|| {
            let idx = BigInt::from(index(&amb, h, k));
            let level = m.level(h)?;
            let lhs = m.tr(h, k)?.compose(&m.res(h, k)?)?;
            let n = lhs.normal_matrix();
            // last generator first: for Burnside functors that is [H/H]
            for j in (0..n.cols()).rev() {
                let image = n.column(j);
                let ok = image.iter().enumerate().all(|(i, v)| {
                    let want = if i == j { idx.clone() } else { BigInt::zero() };
                    match level.torsion().get(i) {
                        Some(t) => ((v - want) % t).is_zero(),
                        None => *v == want,
                    }
                });
                if !ok {
                    let labels = m.labels(h);
                    let mut unit = vec![BigInt::zero(); n.cols()];
                    unit[j] = BigInt::one();
                    return Ok(Some(format!(
                        "Tr∘R({}) = {}, expected {}",
                        element(&unit, labels),
                        element(&image, labels),
                        element(&unit.iter().map(|x| x * &idx).collect::<Vec<_>>(), labels)
                    )));
                }
            }
            Ok(None)
        })();
        report.record(identity, outcome);
    }
    report
}

/// Renders normal coordinates as a combination of labelled generators.
fn element(x: &[BigInt], labels: Option<&[String]>) -> String {
    let terms: Vec<String> = x
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let gen = labels.and_then(|l| l.get(i).cloned()).unwrap_or_else(|| format!("x{i}"));
            if c.is_one() {
                gen
            } else {
                format!("{c}·{gen}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::{burnside, catalog, Ambient, CatalogName, MapKind};

    #[test]
    fn perturbed_transfer_is_named() {
        let a = Ambient::new(&"pq-nonab:3,7,2".parse().unwrap()).unwrap();
        let z = catalog(&CatalogName::ConstZ { a: 1, b: 1 }, &a).unwrap();
        let bad = z.with_entry(MapKind::Tr, 3, 2, 0, 0, BigInt::from(4)).unwrap();
        let r = check_mackey_axioms(&bad);
        assert!(!r.passed());
        assert!(r.violations.iter().any(|v| v.identity.contains("R^G_Cq∘Tr^G_Cq")), "{r}");
    }

    #[test]
    fn burnside_witness() {
        let a = Ambient::new(&"pq-nonab:3,7,2".parse().unwrap()).unwrap();
        let r = check_cohomological(&burnside(&a).unwrap());
        let v = r.violations.iter().find(|v| v.identity.starts_with("Tr^G_e")).unwrap();
        assert!(v.detail.starts_with("Tr∘R([G/G]) = [G/e],"), "{}", v.detail);
    }
}
