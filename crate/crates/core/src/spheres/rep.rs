use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::groups::GroupFamily;

/// A nontrivial irreducible summand: `V<i>` or `W<j>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RepLabel {
    V(u64),
    W(u64),
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepLabel::V(i) => write!(f, "V{i}"),
            RepLabel::W(j) => write!(f, "W{j}"),
        }
    }
}

/// Which Sylow subgroup a representation is restricted to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    P,
    Q,
}

/// A virtual real representation `t + Σ r_i V_i + Σ s_j W_j`.
///
/// For `pq-nonab` the `V_i` (`1 ≤ i ≤ (p-1)/2`) are pulled back from `C_p`
/// and the `W_j` are indexed by the real orbit representatives of
/// multiplication by `k`. For cyclic and abelian `pq` groups `V_i` is the
/// plane on which the generator rotates by `2πi/n`. For `A4`, `V1` is the
/// two-dimensional and `W1` the three-dimensional irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualRep {
    family: GroupFamily,
    t: i64,
    coeffs: BTreeMap<RepLabel, i64>,
}

fn allowed(family: &GroupFamily, label: RepLabel) -> bool {
    match (family, label) {
        (GroupFamily::PqNonabelian { p, .. }, RepLabel::V(i)) => i >= 1 && 2 * i < *p,
        (GroupFamily::PqNonabelian { .. }, RepLabel::W(j)) => family.real_orbit_reps().contains(&j),
        (GroupFamily::PqAbelian { p, q }, RepLabel::V(i)) => i >= 1 && 2 * i < p * q,
        (GroupFamily::Cyclic { n }, RepLabel::V(i)) => i >= 1 && 2 * i < *n,
        (GroupFamily::A4, RepLabel::V(1) | RepLabel::W(1)) => true,
        _ => false,
    }
}

impl VirtualRep {
    pub fn new(family: GroupFamily, t: i64, coeffs: impl IntoIterator<Item = (RepLabel, i64)>) -> Result<Self> {
        if family == GroupFamily::Klein4 {
            return Err(Error::Unsupported("representation spheres for the Klein group".into()));
        }
        let mut map = BTreeMap::new();
        for (label, c) in coeffs {
            if !allowed(&family, label) {
                return Err(Error::Parameter(format!("{label} is not an irreducible summand for {family}")));
            }
            *map.entry(label).or_insert(0) += c;
        }
        map.retain(|_, c| *c != 0);
        Ok(Self { family, t, coeffs: map })
    }

    pub fn zero(family: GroupFamily) -> Result<Self> {
        Self::new(family, 0, [])
    }

    /// Parses whitespace-separated terms `±N`, `±N*V<i>`, `±N*W<j>`.
    pub fn parse(family: &GroupFamily, text: &str) -> Result<Self> {
        let mut t = 0i64;
        let mut terms: Vec<(RepLabel, i64, usize)> = Vec::new();
        let mut seen = false;
        for (start, token) in tokens(text) {
            seen = true;
            let (c, label) = parse_term(token, start)?;
            match label {
                None => t = add(t, c, start)?,
                Some(l) => terms.push((l, c, start)),
            }
        }
        if !seen {
            return Err(Error::Parse {
                position: 0,
                message: "empty representation".into(),
            });
        }
        let mut coeffs: BTreeMap<RepLabel, i64> = BTreeMap::new();
        for (label, c, at) in terms {
            if !allowed(family, label) {
                return Err(Error::Parse {
                    position: at,
                    message: format!("{label} is not an irreducible summand for {family}"),
                });
            }
            let slot = coeffs.entry(label).or_insert(0);
            *slot = add(*slot, c, at)?;
        }
        Self::new(family.clone(), t, coeffs)
    }

    pub fn family(&self) -> &GroupFamily {
        &self.family
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn coeff(&self, label: RepLabel) -> i64 {
        self.coeffs.get(&label).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &BTreeMap<RepLabel, i64> {
        &self.coeffs
    }

    /// `r = Σ r_i`.
    pub fn r(&self) -> i64 {
        self.coeffs
            .iter()
            .filter(|(l, _)| matches!(l, RepLabel::V(_)))
            .map(|(_, c)| c)
            .sum()
    }

    /// `s = Σ s_j`.
    pub fn s(&self) -> i64 {
        self.coeffs
            .iter()
            .filter(|(l, _)| matches!(l, RepLabel::W(_)))
            .map(|(_, c)| c)
            .sum()
    }

    /// Real (virtual) dimension.
    pub fn dim(&self) -> i64 {
        let w = match self.family {
            GroupFamily::PqNonabelian { p, .. } => 2 * p as i64,
            _ => 3,
        };
        self.t + 2 * self.r() + w * self.s()
    }

    /// The same representation plus `n` trivial summands.
    pub fn shifted(&self, n: i64) -> Self {
        Self {
            t: self.t + n,
            ..self.clone()
        }
    }
}

impl fmt::Display for VirtualRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.t != 0 || self.coeffs.is_empty() {
            parts.push(self.t.to_string());
        }
        for (l, c) in &self.coeffs {
            parts.push(format!("{c:+}*{l}"));
        }
        write!(f, "{}", parts.join(" "))
    }
}

fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out.into_iter()
}

fn add(a: i64, b: i64, at: usize) -> Result<i64> {
    a.checked_add(b).ok_or_else(|| Error::Parse {
        position: at,
        message: "coefficient overflows".into(),
    })
}

fn parse_term(token: &str, start: usize) -> Result<(i64, Option<RepLabel>)> {
    let err = |offset: usize, message: String| Error::Parse {
        position: start + offset,
        message,
    };
    let bytes = token.as_bytes();
    let mut i = 0;
    let negative = match bytes.first() {
        Some(b'-') => {
            i = 1;
            true
        }
        Some(b'+') => {
            i = 1;
            false
        }
        _ => false,
    };
    let digits_end = i + bytes[i..].iter().take_while(|b| b.is_ascii_digit()).count();
    let has_digits = digits_end > i;
    let magnitude: i64 = if has_digits {
        token[i..digits_end]
            .parse()
            .map_err(|_| err(i, format!("coefficient {} is too large", &token[i..digits_end])))?
    } else {
        1
    };
    let c = if negative { -magnitude } else { magnitude };
    let mut j = digits_end;
    if j == bytes.len() {
        return if has_digits {
            Ok((c, None))
        } else {
            Err(err(j, format!("expected a number or a summand in {token:?}")))
        };
    }
    if has_digits {
        if bytes[j] != b'*' {
            return Err(err(j, format!("expected '*' after the coefficient in {token:?}")));
        }
        j += 1;
    }
    let kind = match bytes.get(j) {
        Some(b'V') => RepLabel::V as fn(u64) -> RepLabel,
        Some(b'W') => RepLabel::W as fn(u64) -> RepLabel,
        _ => return Err(err(j, format!("expected V<i> or W<j> in {token:?}"))),
    };
    let idx = &token[j + 1..];
    if idx.is_empty() || !idx.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(j + 1, format!("expected a summand index in {token:?}")));
    }
    let n: u64 = idx.parse().map_err(|_| err(j + 1, format!("index {idx} is too large")))?;
    Ok((c, Some(kind(n))))
}

/// `(t_eff, m)`: the restriction to the Sylow subgroup behaves like
/// `t_eff + m·V_1` of the cyclic group.
pub fn reduce_to_sylow(v: &VirtualRep, side: Side) -> Result<(i64, i64)> {
    let cells = sylow_cells(v, side)?;
    let m = match (&v.family, side) {
        (GroupFamily::PqNonabelian { p, .. }, Side::Q) => *p as i64 * v.s(),
        _ => cells.rotations.iter().map(|(_, c)| c).sum(),
    };
    Ok((cells.shift, m))
}

/// The restriction of a representation to a Sylow subgroup, as trivial
/// summands plus rotation planes; the `W_j` of the nonabelian group stay
/// whole since they restrict to the twisted sums over `C_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylowCells {
    pub shift: i64,
    /// `(rotation number, multiplicity)` on the cyclic Sylow subgroup.
    pub rotations: Vec<(u64, i64)>,
    /// `(j, s_j)` for the nonabelian `q`-side.
    pub twisted: Vec<(u64, i64)>,
}

pub fn sylow_cells(v: &VirtualRep, side: Side) -> Result<SylowCells> {
    match (&v.family, side) {
        (GroupFamily::PqNonabelian { p, .. }, Side::P) => {
            let s = v.s();
            let rotations = (1..=(p - 1) / 2).map(|i| (i, v.coeff(RepLabel::V(i)) + 2 * s)).collect();
            Ok(SylowCells {
                shift: v.t + 2 * s,
                rotations,
                twisted: Vec::new(),
            })
        }
        (GroupFamily::PqNonabelian { .. }, Side::Q) => Ok(SylowCells {
            shift: v.t + 2 * v.r(),
            rotations: Vec::new(),
            twisted: v
                .coeffs
                .iter()
                .filter_map(|(l, c)| match l {
                    RepLabel::W(j) => Some((*j, *c)),
                    RepLabel::V(_) => None,
                })
                .collect(),
        }),
        (GroupFamily::PqAbelian { p, q }, side) => {
            let l = if side == Side::P { *p } else { *q };
            let mut shift = v.t;
            let mut rotations: BTreeMap<u64, i64> = BTreeMap::new();
            for (label, c) in &v.coeffs {
                let RepLabel::V(i) = label else { unreachable!("validated") };
                if i % l == 0 {
                    shift += 2 * c;
                } else {
                    *rotations.entry(i % l).or_insert(0) += c;
                }
            }
            rotations.retain(|_, c| *c != 0);
            Ok(SylowCells {
                shift,
                rotations: rotations.into_iter().collect(),
                twisted: Vec::new(),
            })
        }
        (f, _) => Err(Error::Unsupported(format!("Sylow reduction for {f}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nonab() -> GroupFamily {
        "pq-nonab:3,7,2".parse().unwrap()
    }

    #[test]
    fn parses_and_prints() {
        let v = VirtualRep::parse(&nonab(), "-4 +7*V1 -2*W1").unwrap();
        assert_eq!((v.t(), v.r(), v.s()), (-4, 7, -2));
        assert_eq!(v.to_string(), "-4 +7*V1 -2*W1");
        assert_eq!(VirtualRep::parse(&nonab(), &v.to_string()).unwrap(), v);
        assert_eq!(v.dim(), -4 + 14 - 12);
        let z = VirtualRep::parse(&nonab(), "0").unwrap();
        assert_eq!(z.to_string(), "0");
        let w = VirtualRep::parse(&nonab(), "W1  -W1 +2 3").unwrap();
        assert_eq!(w.to_string(), "5");
    }

    #[test]
    fn parse_errors_point_at_the_problem() {
        let pos = |s: &str| match VirtualRep::parse(&nonab(), s) {
            Err(Error::Parse { position, .. }) => position,
            other => panic!("{other:?}"),
        };
        assert_eq!(pos(""), 0);
        assert_eq!(pos("-4 +7V1"), 5);
        assert_eq!(pos("1 +2*X1"), 5);
        assert_eq!(pos("1 +2*W2"), 2);
        assert_eq!(pos("1 +2*V"), 6);
        assert_eq!(pos("+"), 1);
        assert_eq!(pos("99999999999999999999"), 0);
    }

    #[test]
    fn sylow_reductions() {
        let v = VirtualRep::parse(&nonab(), "-4 +7*V1 -2*W1").unwrap();
        assert_eq!(reduce_to_sylow(&v, Side::P).unwrap(), (-8, 3));
        assert_eq!(reduce_to_sylow(&v, Side::Q).unwrap(), (10, -6));
        let z = VirtualRep::zero(nonab()).unwrap();
        assert_eq!(reduce_to_sylow(&z, Side::P).unwrap(), (0, 0));
        assert_eq!(reduce_to_sylow(&z, Side::Q).unwrap(), (0, 0));

        let ab: GroupFamily = "pq-ab:3,5".parse().unwrap();
        let v3 = VirtualRep::parse(&ab, "V3").unwrap();
        assert_eq!(reduce_to_sylow(&v3, Side::P).unwrap(), (2, 0));
        assert_eq!(reduce_to_sylow(&v3, Side::Q).unwrap(), (0, 1));
        let mixed = VirtualRep::parse(&ab, "1 +V1 -V5 +2*V7").unwrap();
        assert_eq!(reduce_to_sylow(&mixed, Side::P).unwrap(), (1, 2));
        assert_eq!(reduce_to_sylow(&mixed, Side::Q).unwrap(), (-1, 3));
        assert_eq!(sylow_cells(&mixed, Side::P).unwrap().rotations, vec![(1, 3), (2, -1)]);

        let a4 = VirtualRep::parse(&GroupFamily::A4, "V1 -W1").unwrap();
        assert!(reduce_to_sylow(&a4, Side::P).is_err());
        assert_eq!(a4.dim(), -1);
    }

    #[test]
    fn labels_are_checked_per_family() {
        let f: GroupFamily = "pq-nonab:3,13,3".parse().unwrap();
        assert!(VirtualRep::parse(&f, "W1 +W2").is_ok());
        assert!(VirtualRep::parse(&f, "W3").is_err());
        assert!(VirtualRep::parse(&"cyclic:7".parse().unwrap(), "V3").is_ok());
        assert!(VirtualRep::parse(&"cyclic:7".parse().unwrap(), "V4").is_err());
        assert!(VirtualRep::new(GroupFamily::Klein4, 1, []).is_err());
    }
}
