use std::cmp::Ordering;
use std::fmt;

/// A subgroup as a set of element indices (at most 128 elements).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    mask: u128,
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn from_mask(mask: u128) -> Self {
        let elements = (0..128).filter(|&i| mask & (1u128 << i) != 0).collect();
        Self { mask, elements }
    }

    pub fn from_elements(elements: impl IntoIterator<Item = usize>) -> Self {
        let mask = elements.into_iter().fold(0u128, |m, i| m | (1u128 << i));
        Self::from_mask(mask)
    }

    pub fn mask(&self) -> u128 {
        self.mask
    }

    /// Sorted element indices.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        g < 128 && self.mask & (1u128 << g) != 0
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup::from_mask(self.mask & other.mask)
    }

    pub fn index_in(&self, other: &Subgroup) -> usize {
        other.order() / self.order()
    }
}

/// Order first, then lexicographic comparison of the sorted element lists.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order().cmp(&other.order()).then_with(|| self.elements.cmp(&other.elements))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}
