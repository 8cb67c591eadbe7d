use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::FiniteGroupTable;
use crate::error::{Error, Result};

/// The group families supported by the library.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupFamily {
    Cyclic {
        n: u64,
    },
    /// `C_p × C_q ≅ C_pq`.
    PqAbelian {
        p: u64,
        q: u64,
    },
    /// `C_q ⋊ C_p = <a, b | a^p, b^q, ba = ab^k>`.
    PqNonabelian {
        p: u64,
        q: u64,
        k: u64,
    },
    Klein4,
    A4,
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn pow_mod(base: u64, exp: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    let mut b = base % m;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl GroupFamily {
    pub fn order(&self) -> u64 {
        match self {
            GroupFamily::Cyclic { n } => *n,
            GroupFamily::PqAbelian { p, q } | GroupFamily::PqNonabelian { p, q, .. } => p * q,
            GroupFamily::Klein4 => 4,
            GroupFamily::A4 => 12,
        }
    }

    /// `(p, q)` for the two families of order `pq`.
    pub fn pq(&self) -> Option<(u64, u64)> {
        match self {
            GroupFamily::PqAbelian { p, q } | GroupFamily::PqNonabelian { p, q, .. } => Some((*p, *q)),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            GroupFamily::Cyclic { n } => {
                if n == 0 || n as usize > super::MAX_ORDER {
                    return Err(Error::Parameter(format!("cyclic order {n} outside 1..={}", super::MAX_ORDER)));
                }
            }
            GroupFamily::PqAbelian { p, q } => {
                if !is_prime(p) || !is_prime(q) || p >= q {
                    return Err(Error::Parameter(format!("pq-ab needs primes p < q, got {p},{q}")));
                }
            }
            GroupFamily::PqNonabelian { p, q, k } => {
                if !is_prime(p) || !is_prime(q) || p >= q {
                    return Err(Error::Parameter(format!("pq-nonab needs primes p < q, got {p},{q}")));
                }
                if (q - 1) % p != 0 {
                    return Err(Error::Parameter(format!("{p} does not divide {q}-1")));
                }
                if k % q == 1 || pow_mod(k, p, q) != 1 {
                    return Err(Error::Parameter(format!("k={k} must satisfy k^{p} = 1 and k != 1 mod {q}")));
                }
            }
            GroupFamily::Klein4 | GroupFamily::A4 => {}
        }
        if self.order() as usize > super::MAX_ORDER {
            return Err(Error::Parameter(format!(
                "group order {} exceeds {}",
                self.order(),
                super::MAX_ORDER
            )));
        }
        Ok(())
    }

    pub fn build(&self) -> Result<FiniteGroupTable> {
        self.validate()?;
        let mut gens = BTreeMap::new();
        let (order, table) = match *self {
            GroupFamily::Cyclic { n } => {
                let n = n as usize;
                if n > 1 {
                    gens.insert("g".to_string(), 1);
                }
                (n, (0..n * n).map(|i| (i / n + i % n) % n).collect::<Vec<_>>())
            }
            GroupFamily::PqAbelian { p, q } => {
                let n = (p * q) as usize;
                gens.insert("a".to_string(), q as usize);
                gens.insert("b".to_string(), p as usize);
                (n, (0..n * n).map(|i| (i / n + i % n) % n).collect())
            }
            GroupFamily::PqNonabelian { p, q, k } => {
                let (pu, qu) = (p as usize, q as usize);
                let n = pu * qu;
                let kp: Vec<usize> = (0..pu).map(|x| pow_mod(k, x as u64, q) as usize).collect();
                // a^x b^y ↦ x·q + y; (a^x b^y)(a^x' b^y') = a^{x+x'} b^{y·k^{x'} + y'}
                let table = (0..n * n)
                    .map(|i| {
                        let (g, h) = (i / n, i % n);
                        let (x, y) = (g / qu, g % qu);
                        let (x2, y2) = (h / qu, h % qu);
                        ((x + x2) % pu) * qu + (y * kp[x2] + y2) % qu
                    })
                    .collect();
                gens.insert("a".to_string(), qu);
                gens.insert("b".to_string(), 1);
                (n, table)
            }
            GroupFamily::Klein4 => (4, (0..16).map(|i| (i / 4) ^ (i % 4)).collect()),
            GroupFamily::A4 => {
                let perms = a4_elements();
                let index = |p: [usize; 4]| perms.iter().position(|&x| x == p).expect("closed");
                let table = (0..144)
                    .map(|i| {
                        let (s, t) = (perms[i / 12], perms[i % 12]);
                        index([s[t[0]], s[t[1]], s[t[2]], s[t[3]]])
                    })
                    .collect();
                (12, table)
            }
        };
        FiniteGroupTable::from_table(self.clone(), order, table, gens)
    }

    /// Orbit representatives (smallest elements) of multiplication by `k` on `{1..q-1}`.
    pub fn complex_orbit_reps(&self) -> Vec<u64> {
        match *self {
            GroupFamily::PqNonabelian { p: _, q, k } => orbit_reps(q, k, false),
            _ => Vec::new(),
        }
    }

    /// Orbit representatives of multiplication by `k` on `{1..q-1}` modulo negation.
    pub fn real_orbit_reps(&self) -> Vec<u64> {
        match *self {
            GroupFamily::PqNonabelian { p: _, q, k } => orbit_reps(q, k, true),
            _ => Vec::new(),
        }
    }
}

fn orbit_reps(q: u64, k: u64, with_negation: bool) -> Vec<u64> {
    let mut seen = vec![false; q as usize];
    let mut out = Vec::new();
    for i in 1..q {
        if seen[i as usize] {
            continue;
        }
        out.push(i);
        let mut x = i;
        loop {
            seen[x as usize] = true;
            if with_negation {
                seen[(q - x) as usize] = true;
            }
            x = x * k % q;
            if x == i {
                break;
            }
        }
    }
    out
}

/// Even permutations of `{0,1,2,3}` as image tuples, in lexicographic order.
pub(crate) fn a4_elements() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (0..i).all(|j| p[i] != p[j]));
                    if !distinct {
                        continue;
                    }
                    let inversions = (0..4)
                        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                        .filter(|&(i, j)| p[i] > p[j])
                        .count();
                    if inversions % 2 == 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupFamily::Cyclic { n } => write!(f, "cyclic:{n}"),
            GroupFamily::PqAbelian { p, q } => write!(f, "pq-ab:{p},{q}"),
            GroupFamily::PqNonabelian { p, q, k } => write!(f, "pq-nonab:{p},{q},{k}"),
            GroupFamily::Klein4 => write!(f, "klein4"),
            GroupFamily::A4 => write!(f, "a4"),
        }
    }
}

impl FromStr for GroupFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, args) = s.split_once(':').unwrap_or((s, ""));
        let nums = || -> Result<Vec<u64>> {
            args.split(',')
                .map(|x| {
                    x.trim().parse::<u64>().map_err(|_| Error::Parse {
                        position: s.find(x).unwrap_or(0),
                        message: format!("expected a positive integer, found {x:?}"),
                    })
                })
                .collect()
        };
        let arity = |v: Vec<u64>, n: usize| -> Result<Vec<u64>> {
            if v.len() == n {
                Ok(v)
            } else {
                Err(Error::Parse {
                    position: head.len() + 1,
                    message: format!("{head} takes {n} parameter(s), got {}", v.len()),
                })
            }
        };
        let fam = match head {
            "cyclic" => GroupFamily::Cyclic { n: arity(nums()?, 1)?[0] },
            "pq-ab" => {
                let v = arity(nums()?, 2)?;
                GroupFamily::PqAbelian { p: v[0], q: v[1] }
            }
            "pq-nonab" => {
                let v = arity(nums()?, 3)?;
                GroupFamily::PqNonabelian { p: v[0], q: v[1], k: v[2] }
            }
            "klein4" if args.is_empty() => GroupFamily::Klein4,
            "a4" if args.is_empty() => GroupFamily::A4,
            _ => {
                return Err(Error::Parse {
                    position: 0,
                    message: format!("unknown group family {s:?}; expected cyclic:N, pq-ab:P,Q, pq-nonab:P,Q,K or a4"),
                })
            }
        };
        fam.validate()?;
        Ok(fam)
    }
}
