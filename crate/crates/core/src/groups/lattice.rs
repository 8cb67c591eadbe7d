use std::collections::BTreeSet;

use super::{FiniteGroupTable, GroupFamily, Subgroup};

/// One double coset `H g K` with the two intersections entering the double
/// coset formula: `left = H ∩ gKg⁻¹` and `right = K ∩ g⁻¹Hg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCoset {
    pub g: usize,
    pub left: Subgroup,
    pub right: Subgroup,
}

/// `N_G(H)/H` with one representative per coset, identity first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylGroup {
    pub subgroup: Subgroup,
    pub coset_representatives: Vec<usize>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.coset_representatives.len()
    }
}

/// All subgroups of a group, grouped into conjugacy classes.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    all: Vec<Subgroup>,
    /// Index into `all` of each class representative, increasing.
    reps: Vec<usize>,
    /// For each subgroup, the slot in `reps` of its class.
    class: Vec<usize>,
    /// For each subgroup `L`, the smallest `g` with `g·L·g⁻¹ = rep(L)`.
    conjugator: Vec<usize>,
    names: Vec<String>,
}

impl SubgroupLattice {
    pub fn new(g: &FiniteGroupTable) -> Self {
        let mut found: BTreeSet<u128> = BTreeSet::new();
        for x in g.elements() {
            found.insert(g.generated(&[x]).mask());
        }
        loop {
            let current: Vec<u128> = found.iter().copied().collect();
            let mut grew = false;
            for (i, &a) in current.iter().enumerate() {
                for &b in &current[i + 1..] {
                    if a & b == a || a & b == b {
                        continue;
                    }
                    let gens: Vec<usize> = Subgroup::from_mask(a | b).elements().to_vec();
                    grew |= found.insert(g.generated(&gens).mask());
                }
            }
            if !grew {
                break;
            }
        }
        let mut all: Vec<Subgroup> = found.into_iter().map(Subgroup::from_mask).collect();
        all.sort();

        let mut reps = Vec::new();
        let mut class = vec![usize::MAX; all.len()];
        for i in 0..all.len() {
            if class[i] != usize::MAX {
                continue;
            }
            // sorted order visits the lexicographically smallest member first
            let slot = reps.len();
            reps.push(i);
            for x in g.elements() {
                let c = g.conjugate(x, &all[i]);
                let j = all.binary_search(&c).expect("conjugate of a subgroup is a subgroup");
                if class[j] == usize::MAX {
                    class[j] = slot;
                }
            }
        }
        let conjugator = (0..all.len())
            .map(|j| {
                let rep = &all[reps[class[j]]];
                g.elements()
                    .find(|&x| g.conjugate(x, &all[j]) == *rep)
                    .expect("class member conjugates onto its representative")
            })
            .collect();
        let names = name_reps(g, &all, &reps);
        Self {
            all,
            reps,
            class,
            conjugator,
            names,
        }
    }

    pub fn all(&self) -> &[Subgroup] {
        &self.all
    }

    pub fn rep_count(&self) -> usize {
        self.reps.len()
    }

    /// Conjugacy class representatives, ordered by size then elements.
    pub fn representatives(&self) -> Vec<&Subgroup> {
        self.reps.iter().map(|&i| &self.all[i]).collect()
    }

    pub fn rep(&self, slot: usize) -> &Subgroup {
        &self.all[self.reps[slot]]
    }

    pub fn name(&self, slot: usize) -> &str {
        &self.names[slot]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn slot_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn index_of(&self, h: &Subgroup) -> usize {
        self.all.binary_search(h).expect("not a subgroup of this group")
    }

    /// Slot of the class containing `h`.
    pub fn class_of(&self, h: &Subgroup) -> usize {
        self.class[self.index_of(h)]
    }

    /// Smallest `g` with `g·h·g⁻¹ = rep(class_of(h))`.
    pub fn conjugator(&self, h: &Subgroup) -> usize {
        self.conjugator[self.index_of(h)]
    }

    pub fn class_size(&self, slot: usize) -> usize {
        self.class.iter().filter(|&&c| c == slot).count()
    }

    pub fn class_members(&self, slot: usize) -> Vec<&Subgroup> {
        (0..self.all.len())
            .filter(|&i| self.class[i] == slot)
            .map(|i| &self.all[i])
            .collect()
    }

    /// Whether some conjugate of `rep(small)` lies in `rep(large)`.
    pub fn subconjugate(&self, g: &FiniteGroupTable, small: usize, large: usize) -> bool {
        g.subconjugator(self.rep(small), self.rep(large)).is_some()
    }

    /// Whether `rep(small) ≤ rep(large)` as sets.
    pub fn contains(&self, small: usize, large: usize) -> bool {
        self.rep(small).is_subset(self.rep(large))
    }

    pub fn top(&self) -> usize {
        self.reps.len() - 1
    }
}

fn name_reps(g: &FiniteGroupTable, all: &[Subgroup], reps: &[usize]) -> Vec<String> {
    let n = g.order();
    let mut names: Vec<String> = Vec::with_capacity(reps.len());
    for (slot, &i) in reps.iter().enumerate() {
        let h = &all[i];
        let o = h.order();
        let same_order = reps.iter().filter(|&&j| all[j].order() == o).count();
        let nth = reps[..slot].iter().filter(|&&j| all[j].order() == o).count();
        let name = if o == 1 {
            "e".to_string()
        } else {
            match g.family() {
                GroupFamily::PqAbelian { p, q } | GroupFamily::PqNonabelian { p, q, .. } => {
                    if o as u64 == *p {
                        "Cp".into()
                    } else if o as u64 == *q {
                        "Cq".into()
                    } else {
                        "G".into()
                    }
                }
                GroupFamily::A4 => match o {
                    2 => "C2".into(),
                    3 => "C3".into(),
                    4 => "K".into(),
                    _ => "A4".into(),
                },
                _ if o == n => "G".into(),
                _ if same_order > 1 => format!("C{o}{}", (b'a' + nth as u8) as char),
                _ => format!("C{o}"),
            }
        };
        names.push(name);
    }
    names
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> FiniteGroupTable {
        s.parse::<GroupFamily>().unwrap().build().unwrap()
    }

    #[test]
    fn pq_nonabelian_lattice() {
        let g = build("pq-nonab:3,7,2");
        let l = SubgroupLattice::new(&g);
        assert_eq!(l.names(), &["e", "Cp", "Cq", "G"]);
        assert_eq!(l.class_size(1), 7);
        assert_eq!(l.all().len(), 10);
        let a = g.generator("a").unwrap();
        let b = g.generator("b").unwrap();
        assert_eq!(g.mul(b, a), g.mul(a, g.pow(b, 2)));
        assert!(l.rep(1).contains(a));
    }

    #[test]
    fn cyclic_and_a4_lattices() {
        let g = build("cyclic:15");
        let l = SubgroupLattice::new(&g);
        assert_eq!(l.all().len(), 4);
        assert_eq!(l.rep_count(), 4);
        let a4 = build("a4");
        let l = SubgroupLattice::new(&a4);
        assert_eq!(l.names(), &["e", "C2", "C3", "K", "A4"]);
        assert_eq!(l.all().len(), 10);
    }

    #[test]
    fn sylows() {
        let g = build("pq-nonab:3,7,2");
        let s7 = g.sylow_subgroup(7).unwrap();
        assert_eq!(s7.order(), 7);
        assert_eq!(g.normalizer(&s7).order(), 21);
        assert!(g.sylow_subgroup(5).is_err());
        let a4 = build("a4");
        let k = a4.sylow_subgroup(2).unwrap();
        assert_eq!(k.order(), 4);
        assert_eq!(a4.normalizer(&k).order(), 12);
        assert_eq!(build("cyclic:15").sylow_subgroup(3).unwrap().order(), 3);
    }

    #[test]
    fn double_cosets_of_pq() {
        let g = build("pq-nonab:3,7,2");
        let l = SubgroupLattice::new(&g);
        let (cp, cq) = (l.rep(1).clone(), l.rep(2).clone());
        let dc = g.double_coset_reps(&cp, &cp);
        assert_eq!(dc[0].g, 0);
        assert_eq!(dc[0].left, cp);
        let index_sum: usize = dc.iter().map(|d| cp.order() / d.right.order()).sum();
        assert_eq!(index_sum, 7);
        assert_eq!(dc.len(), 3);
        let dc = g.double_coset_reps(&cp, &cq);
        assert_eq!(dc.len(), 1);
        assert_eq!(dc[0].left.order(), 1);
        let whole = g.whole();
        assert_eq!(g.double_coset_reps(&whole, &whole).len(), 1);
    }

    #[test]
    fn weyl_groups() {
        let g = build("pq-nonab:3,7,2");
        let l = SubgroupLattice::new(&g);
        assert_eq!(g.weyl_group(l.rep(2)).order(), 3);
        assert_eq!(g.weyl_group(l.rep(2)).coset_representatives[0], 0);
        assert_eq!(g.weyl_group(l.rep(1)).order(), 1);
        assert_eq!(g.weyl_group(&g.whole()).order(), 1);
    }

    #[test]
    fn subconjugators() {
        let g = build("pq-nonab:3,7,2");
        let l = SubgroupLattice::new(&g);
        let members = l.class_members(1);
        let (h, k) = (members[0], members[1]);
        let x = g.subconjugator(h, k).unwrap();
        assert_eq!(g.conjugate(x, h), *k);
        assert_eq!(g.subconjugator(h, h), Some(0));
        assert_eq!(g.subconjugator(l.rep(2), l.rep(1)), None);
        // the smallest conjugator is a power of b
        assert!(l.rep(2).contains(x));
    }

    #[test]
    fn bad_parameters() {
        assert!("pq-nonab:3,7,3".parse::<GroupFamily>().is_err());
        assert!("pq-nonab:3,11,2".parse::<GroupFamily>().is_err());
        assert!("pq-nonab:3,13,3".parse::<GroupFamily>().is_ok());
        assert!("cyclic:x".parse::<GroupFamily>().is_err());
        assert_eq!(build("cyclic:1").order(), 1);
    }
}
