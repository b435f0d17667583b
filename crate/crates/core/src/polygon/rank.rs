use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The `n` of a `(2n+1)`-gon relation, `2 <= n <= 5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct PolygonRank(usize);

impl PolygonRank {
    pub const PENTAGON: PolygonRank = PolygonRank(2);
    pub const HEPTAGON: PolygonRank = PolygonRank(3);
    pub const ENNEAGON: PolygonRank = PolygonRank(4);
    pub const HENDECAGON: PolygonRank = PolygonRank(5);

    pub fn new(n: usize) -> Result<Self> {
        if (2..=5).contains(&n) {
            Ok(PolygonRank(n))
        } else {
            Err(Error::UnsupportedRank(n))
        }
    }

    pub fn all() -> [PolygonRank; 4] {
        [
            Self::PENTAGON,
            Self::HEPTAGON,
            Self::ENNEAGON,
            Self::HENDECAGON,
        ]
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Number of simplices (and vertices), `2n+1`.
    pub fn labels(self) -> usize {
        2 * self.0 + 1
    }

    /// Number of slots, `n(n+1)/2`.
    pub fn slot_count(self) -> usize {
        self.0 * (self.0 + 1) / 2
    }

    /// Number of codimension-1 faces, `n(2n+1)`.
    pub fn face_count(self) -> usize {
        self.0 * self.labels()
    }

    pub fn check_label(self, label: usize) -> Result<()> {
        if (1..=self.labels()).contains(&label) {
            Ok(())
        } else {
            Err(Error::LabelOutOfRange {
                label,
                max: self.labels(),
            })
        }
    }

    pub fn name(self) -> &'static str {
        match self.0 {
            2 => "pentagon",
            3 => "heptagon",
            4 => "enneagon",
            _ => "hendecagon",
        }
    }
}

impl TryFrom<usize> for PolygonRank {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        PolygonRank::new(n)
    }
}

impl From<PolygonRank> for usize {
    fn from(r: PolygonRank) -> usize {
        r.0
    }
}

impl fmt::Display for PolygonRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The face shared by simplices `lo` and `hi`; as a simplex it has every
/// vertex except `lo` and `hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    lo: usize,
    hi: usize,
}

impl Face {
    /// Unordered: `Face::new(a, b) == Face::new(b, a)`.
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b || a == 0 || b == 0 {
            return Err(Error::Domain(format!("no face {{{a},{b}}}")));
        }
        Ok(Face {
            lo: a.min(b),
            hi: a.max(b),
        })
    }

    pub(crate) fn of(a: usize, b: usize) -> Self {
        Face::new(a, b).expect("distinct positive labels")
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn contains(&self, label: usize) -> bool {
        self.lo == label || self.hi == label
    }

    /// The companion of `label` in this face.
    pub fn other(&self, label: usize) -> Option<usize> {
        if label == self.lo {
            Some(self.hi)
        } else if label == self.hi {
            Some(self.lo)
        } else {
            None
        }
    }

    /// Position in the lexicographic enumeration of faces of a polygon with
    /// `labels` labels.
    pub fn index(&self, labels: usize) -> usize {
        let a = self.lo - 1;
        let b = self.hi - 1;
        a * (2 * labels - a - 1) / 2 + (b - a - 1)
    }

    /// All faces in lexicographic order.
    pub fn all(rank: PolygonRank) -> Vec<Face> {
        let l = rank.labels();
        (1..=l)
            .flat_map(|a| (a + 1..=l).map(move |b| Face { lo: a, hi: b }))
            .collect()
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let h = PolygonRank::HEPTAGON;
        assert_eq!((h.labels(), h.slot_count(), h.face_count()), (7, 6, 21));
        let p = PolygonRank::HENDECAGON;
        assert_eq!((p.labels(), p.slot_count(), p.face_count()), (11, 15, 55));
        assert!(PolygonRank::new(1).is_err());
        assert!(PolygonRank::new(6).is_err());
    }

    #[test]
    fn face_index_is_lexicographic() {
        for r in PolygonRank::all() {
            for (k, f) in Face::all(r).iter().enumerate() {
                assert_eq!(f.index(r.labels()), k);
            }
        }
        assert_eq!(Face::new(5, 2).unwrap(), Face::new(2, 5).unwrap());
        assert!(Face::new(3, 3).is_err());
    }
}
