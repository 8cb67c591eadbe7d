//! Finite groups as explicit multiplication tables.

mod family;
mod lattice;
mod subgroup;

use std::collections::BTreeMap;

pub(crate) use family::prime_factors;
pub use family::{is_prime, pow_mod, GroupFamily};
pub use lattice::{DoubleCoset, SubgroupLattice, WeylGroup};
pub use subgroup::Subgroup;

use crate::error::{Error, Result};

/// Largest group order handled; subgroups are stored as 128-bit masks.
pub const MAX_ORDER: usize = 100;

/// A finite group given by its full multiplication table. Element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    order: usize,
    mul: Vec<u8>,
    inverse: Vec<usize>,
    family: GroupFamily,
    named_generators: BTreeMap<String, usize>,
}

impl FiniteGroupTable {
    /// Validates the table: identity at 0, associativity, inverses.
    pub fn from_table(family: GroupFamily, order: usize, table: Vec<usize>, named_generators: BTreeMap<String, usize>) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::Parameter(format!("group order {order} outside 1..={MAX_ORDER}")));
        }
        if table.len() != order * order || table.iter().any(|&x| x >= order) {
            return Err(Error::Parameter("malformed multiplication table".into()));
        }
        let mul: Vec<u8> = table.iter().map(|&x| x as u8).collect();
        let at = |a: usize, b: usize| mul[a * order + b] as usize;
        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(Error::Parameter("element 0 is not the identity".into()));
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::Parameter(format!("multiplication is not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let inverse = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| at(a, b) == 0 && at(b, a) == 0)
                    .ok_or_else(|| Error::Parameter(format!("element {a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        for (name, &g) in &named_generators {
            if g >= order {
                return Err(Error::Parameter(format!("generator {name} out of range")));
            }
        }
        Ok(Self {
            order,
            mul,
            inverse,
            family,
            named_generators,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn family(&self) -> &GroupFamily {
        &self.family
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g·x·g⁻¹`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse[g])
    }

    pub fn pow(&self, g: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(g) } else { g };
        (0..e.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, g);
            n += 1;
        }
        n
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn named_generators(&self) -> &BTreeMap<String, usize> {
        &self.named_generators
    }

    /// A named generator, e.g. `"a"` or `"b"` for the groups of order `pq`.
    pub fn generator(&self, name: &str) -> Result<usize> {
        self.named_generators
            .get(name)
            .copied()
            .ok_or_else(|| Error::Parameter(format!("group {} has no generator {name}", self.family)))
    }

    /// The subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Subgroup {
        let mut mask: u128 = 1;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if mask & (1u128 << y) == 0 {
                    mask |= 1u128 << y;
                    frontier.push(y);
                }
            }
        }
        Subgroup::from_mask(mask)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_elements(self.elements())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_elements([0])
    }

    /// `g·H·g⁻¹`.
    pub fn conjugate(&self, g: usize, h: &Subgroup) -> Subgroup {
        Subgroup::from_elements(h.elements().iter().map(|&x| self.conj(g, x)))
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        Subgroup::from_elements(self.elements().filter(|&g| self.conjugate(g, h) == *h))
    }

    pub fn is_subgroup(&self, elements: &[usize]) -> bool {
        let s = Subgroup::from_elements(elements.iter().copied());
        s.contains(0)
            && s.elements()
                .iter()
                .all(|&a| s.contains(self.inv(a)) && s.elements().iter().all(|&b| s.contains(self.mul(a, b))))
    }

    /// Smallest `g` with `g·H·g⁻¹ ≤ K`.
    pub fn subconjugator(&self, h: &Subgroup, k: &Subgroup) -> Option<usize> {
        if !k.order().is_multiple_of(h.order()) {
            return None;
        }
        self.elements().find(|&g| h.elements().iter().all(|&x| k.contains(self.conj(g, x))))
    }

    /// Smallest element of the double coset `H·g·K`.
    pub fn double_coset_min(&self, h: &Subgroup, g: usize, k: &Subgroup) -> usize {
        let mut best = usize::MAX;
        for &x in h.elements() {
            let xg = self.mul(x, g);
            for &y in k.elements() {
                best = best.min(self.mul(xg, y));
            }
        }
        best
    }

    /// Representatives of `H\L/K` (the smallest element of each double coset),
    /// for subgroups `H, K ≤ L`, in increasing order.
    pub fn double_cosets_in(&self, h: &Subgroup, l: &Subgroup, k: &Subgroup) -> Vec<DoubleCoset> {
        let mut seen: u128 = 0;
        let mut out = Vec::new();
        for &g in l.elements() {
            if seen & (1u128 << g) != 0 {
                continue;
            }
            for &x in h.elements() {
                let xg = self.mul(x, g);
                for &y in k.elements() {
                    seen |= 1u128 << self.mul(xg, y);
                }
            }
            let gkg = self.conjugate(g, k);
            let ginv = self.inv(g);
            let gihg = self.conjugate(ginv, h);
            out.push(DoubleCoset {
                g,
                left: h.intersect(&gkg),
                right: k.intersect(&gihg),
            });
        }
        out
    }

    /// Representatives of `H\G/K`.
    pub fn double_coset_reps(&self, h: &Subgroup, k: &Subgroup) -> Vec<DoubleCoset> {
        self.double_cosets_in(h, &self.whole(), k)
    }

    /// Smallest element of each left coset `gH` inside `L` (`H ≤ L`), identity first.
    pub fn left_coset_reps(&self, l: &Subgroup, h: &Subgroup) -> Vec<usize> {
        let mut seen: u128 = 0;
        let mut out = Vec::new();
        for &g in l.elements() {
            if seen & (1u128 << g) != 0 {
                continue;
            }
            for &x in h.elements() {
                seen |= 1u128 << self.mul(g, x);
            }
            out.push(g);
        }
        out
    }

    /// `N_G(H)/H` with coset representatives.
    pub fn weyl_group(&self, h: &Subgroup) -> WeylGroup {
        let n = self.normalizer(h);
        WeylGroup {
            subgroup: h.clone(),
            coset_representatives: self.left_coset_reps(&n, h),
        }
    }

    /// Sylow `p`-subgroup with the lexicographically smallest element list.
    pub fn sylow_subgroup(&self, p: u64) -> Result<Subgroup> {
        if !family::is_prime(p) || !(self.order as u64).is_multiple_of(p) {
            return Err(Error::Parameter(format!("{p} is not a prime dividing {}", self.order)));
        }
        let mut size = 1;
        while ((self.order / size) as u64).is_multiple_of(p) {
            size *= p as usize;
        }
        SubgroupLattice::new(self)
            .all()
            .iter()
            .filter(|s| s.order() == size)
            .min()
            .cloned()
            .ok_or_else(|| Error::Internal(format!("no Sylow {p}-subgroup found")))
    }

    /// Primes dividing the order, increasing.
    pub fn primes(&self) -> Vec<u64> {
        family::prime_factors(self.order as u64)
    }
}

/// `build_group(family)`.
pub fn build_group(family: &GroupFamily) -> Result<FiniteGroupTable> {
    family.build()
}
