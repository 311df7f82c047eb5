use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::SolverError;

/// Six labeled points taken in cyclic succession, up to rotation and
/// reflection. The stored sequence is the canonical representative: the
/// lexicographically least of its 12 rotations and reflections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hexagon([u8; 6]);

impl Hexagon {
    pub fn new(seq: [u8; 6]) -> Result<Self, SolverError> {
        let mut seen = [false; 7];
        for &p in &seq {
            if !(1..=6).contains(&p) || seen[p as usize] {
                return Err(SolverError::BadHexagon(format!("{seq:?}")));
            }
            seen[p as usize] = true;
        }
        Ok(Self(canonicalize(seq)))
    }

    /// The hexagon `(1,2,3,4,5,6)`.
    pub fn identity() -> Self {
        Self([1, 2, 3, 4, 5, 6])
    }

    pub fn sequence(&self) -> [u8; 6] {
        self.0
    }

    /// All 60 classes in ascending canonical order.
    pub fn all() -> Vec<Hexagon> {
        let mut out = Vec::new();
        let mut rest = [2u8, 3, 4, 5, 6];
        permutations(&mut rest, 0, &mut |perm| {
            let seq = [1, perm[0], perm[1], perm[2], perm[3], perm[4]];
            if canonicalize(seq) == seq {
                out.push(Hexagon(seq));
            }
        });
        out.sort();
        out
    }

    /// Sides `{h_k, h_{k+1}}` as `(min, max)`, k = 1..6 cyclically.
    pub fn sides(&self) -> [(u8, u8); 6] {
        std::array::from_fn(|k| {
            let (a, b) = (self.0[k], self.0[(k + 1) % 6]);
            (a.min(b), a.max(b))
        })
    }

    /// Opposite sides `(s_k, s_{k+3})` for k = 1, 2, 3.
    pub fn opposite_pairs(&self) -> [((u8, u8), (u8, u8)); 3] {
        let s = self.sides();
        [(s[0], s[3]), (s[1], s[4]), (s[2], s[5])]
    }
}

fn canonicalize(seq: [u8; 6]) -> [u8; 6] {
    let mut best = seq;
    for reflect in [false, true] {
        for start in 0..6 {
            let cand: [u8; 6] = std::array::from_fn(|k| {
                if reflect {
                    seq[(start + 6 - k) % 6]
                } else {
                    seq[(start + k) % 6]
                }
            });
            best = best.min(cand);
        }
    }
    best
}

fn permutations(items: &mut [u8], k: usize, visit: &mut impl FnMut(&[u8])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

impl fmt::Display for Hexagon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for p in self.0 {
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Hexagon {
    type Err = SolverError;

    /// Accepts `1,2,5,6,4,3`, `125643` or `(125643)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SolverError::BadHexagon(s.to_string());
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let digits: Vec<u8> = if inner.contains(',') {
            inner
                .split(',')
                .map(|t| t.trim().parse::<u8>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        } else {
            inner
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad))
                .collect::<Result<_, _>>()?
        };
        let seq: [u8; 6] = digits.try_into().map_err(|_| bad())?;
        Hexagon::new(seq)
    }
}

impl Serialize for Hexagon {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixty_classes() {
        let all = Hexagon::all();
        assert_eq!(all.len(), 60);
        assert_eq!(all[0], Hexagon::identity());
    }

    #[test]
    fn canonical_representatives() {
        let h: Hexagon = "1,2,5,6,4,3".parse().unwrap();
        assert_eq!(h.sequence(), [1, 2, 5, 6, 4, 3]);
        let r: Hexagon = "3,4,6,5,2,1".parse().unwrap();
        assert_eq!(r, h);
        let h2: Hexagon = "(123465)".parse().unwrap();
        assert_eq!(h2.sequence(), [1, 2, 3, 4, 6, 5]);
        assert_eq!(h2.to_string(), "(123465)");
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Hexagon::new([1, 2, 3, 4, 5, 5]).is_err());
        assert!(Hexagon::new([0, 2, 3, 4, 5, 6]).is_err());
        assert!("1,2,3".parse::<Hexagon>().is_err());
    }

    #[test]
    fn opposite_sides() {
        assert_eq!(
            Hexagon::identity().opposite_pairs(),
            [((1, 2), (4, 5)), ((2, 3), (5, 6)), ((3, 4), (1, 6))]
        );
        let h = Hexagon::new([1, 2, 5, 6, 4, 3]).unwrap();
        assert_eq!(
            h.opposite_pairs(),
            [((1, 2), (4, 6)), ((2, 5), (3, 4)), ((5, 6), (1, 3))]
        );
    }
}
