use std::collections::BTreeMap;
use std::time::Instant;

use mackey_core::closedform::{abelian_table, nonabelian_table};
use mackey_core::groups::{pow_mod, GroupFamily};
use mackey_core::spheres::{
    cp_action_on_homology, twisted_permutation_operator, DegreeAction, LevelMode, PqAssembler, RepLabel, VirtualRep,
};
use mackey_core::Result;

/// Outcome of one grid case; `detail` is the first difference on failure.
pub struct Case {
    pub id: String,
    pub detail: Option<String>,
}

pub struct SuiteReport {
    pub cases: Vec<Case>,
    pub seconds: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.detail.is_none())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            match &c.detail {
                None => out.push_str(&format!("pass  {}\n", c.id)),
                Some(d) => out.push_str(&format!("FAIL  {}: {d}\n", c.id)),
            }
        }
        let failed = self.cases.iter().filter(|c| c.detail.is_some()).count();
        out.push_str(&format!("{} cases, {failed} failed, {:.2}s\n", self.cases.len(), self.seconds));
        out
    }
}

fn timed(run: impl FnOnce() -> Result<Vec<Case>>) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut cases = run()?;
    cases.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(SuiteReport {
        cases,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Brute-force assembly against the nonabelian closed form for `(3,7,2)`.
pub fn pq_suite() -> Result<SuiteReport> {
    timed(|| {
        let family: GroupFamily = "pq-nonab:3,7,2".parse()?;
        let mut assembler = PqAssembler::new(&family)?;
        let mut cases = Vec::new();
        for s in -1..=1 {
            for r in -2..=2 {
                for t in -2..=2 {
                    let v = VirtualRep::new(family.clone(), t, [(RepLabel::V(1), r), (RepLabel::W(1), s)])?;
                    let got = assembler.assemble(&v, LevelMode::Brute)?;
                    cases.push(Case {
                        id: format!("s={s:+} r={r:+} t={t:+}"),
                        detail: nonabelian_table(&v)?.first_difference(&got)?,
                    });
                }
            }
        }
        Ok(cases)
    })
}

/// Cyclic complexes plus recovery against the abelian closed form for `(3,5)`.
pub fn abelian_suite() -> Result<SuiteReport> {
    timed(|| {
        let family: GroupFamily = "pq-ab:3,5".parse()?;
        let mut assembler = PqAssembler::new(&family)?;
        let mut cases = Vec::new();
        for t in -1..=1 {
            for a in -1..=1 {
                for b in -1..=1 {
                    let v = VirtualRep::new(family.clone(), t, [(RepLabel::V(1), a), (RepLabel::V(3), b)])?;
                    let got = assembler.assemble(&v, LevelMode::Brute)?;
                    cases.push(Case {
                        id: format!("t={t:+} V1={a:+} V3={b:+}"),
                        detail: abelian_table(&v)?.first_difference(&got)?,
                    });
                }
            }
        }
        Ok(cases)
    })
}

fn expected_actions(p: u64, q: u64, k: u64, sign: i8) -> BTreeMap<i64, DegreeAction> {
    let torsion = |e: u64| DegreeAction::Torsion {
        order: q,
        multiplier: pow_mod(k, e, q),
    };
    let p = p as i64;
    let mut want = BTreeMap::new();
    if sign > 0 {
        for i in 0..p {
            want.insert(2 * i, torsion(i as u64));
        }
        want.insert(2 * p, DegreeAction::Free { sign: 1 });
    } else {
        for i in 1..p {
            want.insert(-2 * i - 1, torsion((p - i) as u64));
        }
        want.insert(-2 * p, DegreeAction::Free { sign: 1 });
    }
    want
}

/// The action of `C_p` on the `C_q`-fixed homology of the twisted complexes.
pub fn actions_suite() -> Result<SuiteReport> {
    timed(|| {
        let mut cases = Vec::new();
        for (p, q, k, sign) in [(3, 7, 2, 1), (3, 7, 2, -1), (3, 13, 3, 1)] {
            let got = cp_action_on_homology(&twisted_permutation_operator(p, q, k, sign)?)?;
            let want = expected_actions(p, q, k, sign);
            let detail = want
                .keys()
                .chain(got.keys())
                .find(|n| want.get(n) != got.get(n))
                .map(|n| format!("degree {n}: expected {:?}, found {:?}", want.get(n), got.get(n)));
            cases.push(Case {
                id: format!("p={p} q={q} k={k} sign={sign:+}"),
                detail,
            });
        }
        Ok(cases)
    })
}
