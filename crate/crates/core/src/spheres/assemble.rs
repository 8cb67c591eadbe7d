use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::complex::signed_sphere_complex;
use super::homology::{homology_mackey, HomologyTable};
use super::rep::{reduce_to_sylow, sylow_cells, Side, VirtualRep};
use super::twisted::{cp_action_on_homology, twisted_operator_for, DegreeAction};
use crate::closedform::{cp_action_formula, sylow_restriction_form, CpAction, LocalName};
use crate::error::{Error, Result};
use crate::exact::{AbHom, FgAbGroup};
use crate::groups::{FiniteGroupTable, GroupFamily};
use crate::mackey::{catalog, scalar_map, Ambient, CatalogName, MackeyBuilder};
use crate::recover::{complete, SylowData};

/// Where the levels over the Sylow subgroups come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelMode {
    /// Evaluate the closed forms for cyclic groups of prime order.
    Closed,
    /// Compute homology of explicit equivariant chain complexes.
    Brute,
}

/// Brute-force levels are computed for at most this many `W_j` factors.
pub const BRUTE_FORCE_W_CAP: i64 = 1;

/// Homology over one cyclic Sylow subgroup with the scalar by which the
/// complementary generator acts on its top level.
#[derive(Clone, Debug)]
struct SideTable {
    table: HomologyTable,
    weyl: BTreeMap<i64, i64>,
}

impl SideTable {
    fn shift(&self, by: i64) -> Self {
        Self {
            table: self.table.shift(by),
            weyl: self.weyl.iter().map(|(n, w)| (n + by, *w)).collect(),
        }
    }
}

/// Assembles whole-group homology of representation spheres for the groups
/// of order `pq`, caching the twisted complexes between calls.
pub struct PqAssembler {
    family: GroupFamily,
    ambient: Arc<Ambient>,
    p_group: Arc<FiniteGroupTable>,
    q_group: Arc<FiniteGroupTable>,
    twisted: BTreeMap<(u64, i8), SideTable>,
}

impl PqAssembler {
    pub fn new(family: &GroupFamily) -> Result<Self> {
        let (p, q) = match family {
            GroupFamily::PqNonabelian { .. } | GroupFamily::PqAbelian { .. } => family.pq().expect("pq family"),
            f => return Err(Error::Unsupported(format!("assembly over {f}"))),
        };
        Ok(Self {
            family: family.clone(),
            ambient: Ambient::new(family)?,
            p_group: Arc::new(GroupFamily::Cyclic { n: p }.build()?),
            q_group: Arc::new(GroupFamily::Cyclic { n: q }.build()?),
            twisted: BTreeMap::new(),
        })
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    /// Homology of `S^V` as a Mackey functor on the whole group in every
    /// degree; the top level is recovered from the Sylow levels.
    pub fn assemble(&mut self, v: &VirtualRep, mode: LevelMode) -> Result<HomologyTable> {
        if *v.family() != self.family {
            return Err(Error::Parameter(format!(
                "representation over {}, assembler over {}",
                v.family(),
                self.family
            )));
        }
        let (ps, qs) = match mode {
            LevelMode::Brute => (self.brute_side(v, Side::P)?, self.brute_side(v, Side::Q)?),
            LevelMode::Closed => (self.closed_side(v, Side::P)?, self.closed_side(v, Side::Q)?),
        };
        self.glue(&ps, &qs)
    }

    fn group(&self, side: Side) -> &Arc<FiniteGroupTable> {
        match side {
            Side::P => &self.p_group,
            Side::Q => &self.q_group,
        }
    }

    fn brute_side(&mut self, v: &VirtualRep, side: Side) -> Result<SideTable> {
        let cells = sylow_cells(v, side)?;
        if cells.twisted.is_empty() {
            let c = signed_sphere_complex(self.group(side), &cells.rotations, cells.shift)?;
            return Ok(SideTable {
                table: homology_mackey(&c, None)?,
                weyl: BTreeMap::new(),
            });
        }
        let count: i64 = cells.twisted.iter().map(|(_, s)| s.abs()).sum();
        if count > BRUTE_FORCE_W_CAP {
            return Err(Error::Unsupported(format!(
                "brute-force levels are capped at |s| <= {BRUTE_FORCE_W_CAP} (got {count} W-summands); use closed-form levels"
            )));
        }
        let (j, s) = cells.twisted[0];
        let sign: i8 = if s > 0 { 1 } else { -1 };
        let GroupFamily::PqNonabelian { p, q, k } = self.family else {
            unreachable!("only the nonabelian family twists")
        };
        if let std::collections::btree_map::Entry::Vacant(e) = self.twisted.entry((j, sign)) {
            let op = twisted_operator_for(p, q, k, j, sign)?;
            let table = homology_mackey(op.complex(), None)?;
            let weyl = cp_action_on_homology(&op)?
                .into_iter()
                .map(|(n, a)| {
                    let w = match a {
                        DegreeAction::Torsion { multiplier, .. } => multiplier as i64,
                        DegreeAction::Free { sign } => sign,
                    };
                    (n, w)
                })
                .collect();
            e.insert(SideTable { table, weyl });
        }
        Ok(self.twisted[&(j, sign)].shift(cells.shift))
    }

    fn closed_side(&self, v: &VirtualRep, side: Side) -> Result<SideTable> {
        let (t, m) = reduce_to_sylow(v, side)?;
        let group = self.group(side);
        let l = group.order() as u64;
        let amb = Ambient::from_group(group.clone())?;
        let mut degrees = BTreeMap::new();
        let mut weyl = BTreeMap::new();
        for (n, local) in sylow_restriction_form(t, m) {
            let name = match local {
                LocalName::Z => CatalogName::ConstZ { a: 1, b: 1 },
                LocalName::ZStar => CatalogName::ConstZ { a: l, b: 1 },
                LocalName::Hat => CatalogName::HatZp,
            };
            degrees.insert(n, catalog(&name, &amb)?);
            if side == Side::Q && matches!(self.family, GroupFamily::PqNonabelian { .. }) {
                if let Some(CpAction::Multiplier(e)) = cp_action_formula(v, n)? {
                    weyl.insert(n, e as i64);
                }
            }
        }
        Ok(SideTable {
            table: HomologyTable::new(amb, degrees),
            weyl,
        })
    }

    fn glue(&self, ps: &SideTable, qs: &SideTable) -> Result<HomologyTable> {
        let amb = &self.ambient;
        let (e, cp, cq) = (amb.slot("e")?, amb.slot("Cp")?, amb.slot("Cq")?);
        let degrees: BTreeSet<i64> = ps.table.degrees().keys().chain(qs.table.degrees().keys()).copied().collect();
        let mut out = BTreeMap::new();
        for n in degrees {
            let (pe, qe) = (side_level(ps, n, "e")?, side_level(qs, n, "e")?);
            if !pe.is_isomorphic(&qe) {
                return Err(Error::Internal(format!(
                    "the Sylow sides disagree on the underlying group in degree {n}: {pe} and {qe}"
                )));
            }
            let levels = BTreeMap::from([
                (e, pe.as_ref().clone()),
                (cp, side_level(ps, n, "G")?.as_ref().clone()),
                (cq, side_level(qs, n, "G")?.as_ref().clone()),
            ]);
            let mut b = MackeyBuilder::new(amb, levels);
            for (side, slot) in [(ps, cp), (qs, cq)] {
                if let Some(m) = side.table.functor(n) {
                    let (top, bottom) = (m.ambient().top(), m.ambient().slot("e")?);
                    let (mh, me) = (b.level(slot)?, b.level(e)?);
                    b.set_res(
                        slot,
                        e,
                        AbHom::from_normal(mh.clone(), me.clone(), &m.res(top, bottom)?.normal_matrix())?,
                    )?;
                    b.set_tr(slot, e, AbHom::from_normal(me, mh, &m.tr(top, bottom)?.normal_matrix())?)?;
                }
            }
            if let (Some(&w), GroupFamily::PqNonabelian { .. }) = (qs.weyl.get(&n), &self.family) {
                let level = b.level(cq)?;
                b.weyl_generated(cq, amb.group().generator("a")?, scalar_map(&level, &level, w)?)?;
            }
            let truncated = b.build()?;
            if truncated.is_zero() {
                continue;
            }
            out.insert(n, complete(&SylowData::new(&truncated)?)?);
        }
        Ok(HomologyTable::new(amb.clone(), out))
    }
}

fn side_level(side: &SideTable, n: i64, name: &str) -> Result<Arc<FgAbGroup>> {
    let slot = side.table.ambient().slot(name)?;
    Ok(side.table.level(n, slot))
}

/// One-shot [`PqAssembler::assemble`].
pub fn assemble_pq_homology(v: &VirtualRep, mode: LevelMode) -> Result<HomologyTable> {
    PqAssembler::new(v.family())?.assemble(v, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::closed_table;

    fn rep(family: &str, text: &str) -> VirtualRep {
        VirtualRep::parse(&family.parse().unwrap(), text).unwrap()
    }

    #[test]
    fn worked_example_in_both_modes() {
        let v = rep("pq-nonab:3,7,2", "-4 +7*V1 -2*W1");
        let want = closed_table(&v).unwrap();
        let closed = assemble_pq_homology(&v, LevelMode::Closed).unwrap();
        assert_eq!(closed.names().unwrap(), want.names());
        let brute = assemble_pq_homology(&v, LevelMode::Brute);
        assert!(matches!(brute, Err(Error::Unsupported(_))));
    }

    #[test]
    fn single_w_by_brute_force() {
        let mut a = PqAssembler::new(&"pq-nonab:3,7,2".parse().unwrap()).unwrap();
        for text in ["0", "W1", "-W1", "1 +V1 -W1", "-2 -V1 +W1"] {
            let v = rep("pq-nonab:3,7,2", text);
            let got = a.assemble(&v, LevelMode::Brute).unwrap();
            assert_eq!(got.names().unwrap(), closed_table(&v).unwrap().names(), "{text}");
        }
    }

    #[test]
    fn abelian_by_brute_force() {
        for text in ["0", "V1", "V3", "-V1 +V3", "1 -V3", "V1 +V2 -V5"] {
            let v = rep("pq-ab:3,5", text);
            let got = assemble_pq_homology(&v, LevelMode::Brute).unwrap();
            assert_eq!(got.names().unwrap(), closed_table(&v).unwrap().names(), "{text}");
        }
    }

    #[test]
    fn other_families_are_refused() {
        assert!(PqAssembler::new(&GroupFamily::A4).is_err());
    }
}
