//! Combinatorial wiring of the `(2n+1)`-gon relation.
//!
//! Slots are the pairs `{p, q}` of odd labels, `p < q`, in lexicographic
//! order. Slot `{p, q}` carries, in time order,
//!
//! ```text
//! bottom {p, q-1}  --A(p)-->   lhs-internal {p, q}   --A(q)-->   top {p+1, q}
//! bottom {p, q-1}  --A(q-1)--> rhs-internal {p+1, q-1} --A(p+1)--> top {p+1, q}
//! ```
//!
//! where the right-hand route collapses to a single `A(p+1)` step when
//! `q = p + 2`. Each transition between consecutive faces is performed by the
//! matrix whose label the two faces share.

use super::rank::{Face, PolygonRank};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub lo: usize,
    pub hi: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Timeline {
    pub bottom: Face,
    pub lhs_internal: Face,
    pub rhs_internal: Option<Face>,
    pub top: Face,
}

impl Timeline {
    fn of(slot: Slot) -> Self {
        let Slot { lo: p, hi: q } = slot;
        Timeline {
            bottom: Face::of(p, q - 1),
            lhs_internal: Face::of(p, q),
            rhs_internal: (q > p + 2).then(|| Face::of(p + 1, q - 1)),
            top: Face::of(p + 1, q),
        }
    }

    /// Face sequence seen by the left-hand product.
    pub fn lhs_route(&self) -> Vec<Face> {
        vec![self.bottom, self.lhs_internal, self.top]
    }

    /// Face sequence seen by the right-hand product.
    pub fn rhs_route(&self) -> Vec<Face> {
        let mut v = vec![self.bottom];
        v.extend(self.rhs_internal);
        v.push(self.top);
        v
    }

    pub fn faces(&self) -> Vec<Face> {
        let mut v = vec![self.bottom, self.lhs_internal];
        v.extend(self.rhs_internal);
        v.push(self.top);
        v
    }
}

/// One leg pair of `A(p)`: on `slot`, face `{input, p}` goes in and face
/// `{output, p}` comes out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Leg {
    pub slot: usize,
    pub input: usize,
    pub output: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotScheme {
    rank: PolygonRank,
    slots: Vec<Slot>,
    timelines: Vec<Timeline>,
    // indexed by label - 1
    inputs: Vec<Vec<usize>>,
    outputs: Vec<Vec<usize>>,
    legs: Vec<Vec<Leg>>,
}

/// `I_p`: odd labels below `p` and even labels above it.
pub fn input_companions(rank: PolygonRank, p: usize) -> Vec<usize> {
    (1..=rank.labels())
        .filter(|&x| x != p && ((x < p && x % 2 == 1) || (x > p && x % 2 == 0)))
        .collect()
}

/// `O_p`: even labels below `p` and odd labels above it.
pub fn output_companions(rank: PolygonRank, p: usize) -> Vec<usize> {
    (1..=rank.labels())
        .filter(|&x| x != p && ((x < p && x % 2 == 0) || (x > p && x % 2 == 1)))
        .collect()
}

impl SlotScheme {
    pub fn new(rank: PolygonRank) -> Self {
        let l = rank.labels();
        let odd: Vec<usize> = (1..=l).step_by(2).collect();
        let slots: Vec<Slot> = odd
            .iter()
            .flat_map(|&p| {
                odd.iter()
                    .filter(move |&&q| q > p)
                    .map(move |&q| Slot { lo: p, hi: q })
            })
            .collect();
        let timelines: Vec<Timeline> = slots.iter().map(|&s| Timeline::of(s)).collect();

        let mut legs = vec![Vec::new(); l];
        for (s, t) in timelines.iter().enumerate() {
            for route in [t.lhs_route(), t.rhs_route()] {
                for w in route.windows(2) {
                    let (a, b) = (w[0], w[1]);
                    let p = [a.lo(), a.hi()]
                        .into_iter()
                        .find(|&x| b.contains(x))
                        .expect("consecutive faces share a label");
                    legs[p - 1].push(Leg {
                        slot: s,
                        input: a.other(p).unwrap(),
                        output: b.other(p).unwrap(),
                    });
                }
            }
        }
        for v in legs.iter_mut() {
            v.sort_by_key(|leg| leg.input);
        }
        let inputs = (1..=l).map(|p| input_companions(rank, p)).collect();
        let outputs = (1..=l).map(|p| output_companions(rank, p)).collect();
        SlotScheme {
            rank,
            slots,
            timelines,
            inputs,
            outputs,
            legs,
        }
    }

    pub fn rank(&self) -> PolygonRank {
        self.rank
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn timeline(&self, slot: usize) -> &Timeline {
        &self.timelines[slot]
    }

    pub fn timelines(&self) -> &[Timeline] {
        &self.timelines
    }

    pub fn slot_index(&self, lo: usize, hi: usize) -> Option<usize> {
        self.slots.iter().position(|s| s.lo == lo && s.hi == hi)
    }

    /// `I_p`, ascending.
    pub fn inputs(&self, p: usize) -> &[usize] {
        &self.inputs[p - 1]
    }

    /// `O_p`, ascending.
    pub fn outputs(&self, p: usize) -> &[usize] {
        &self.outputs[p - 1]
    }

    /// Legs of `A(p)`, ordered by input companion.
    pub fn legs(&self, p: usize) -> &[Leg] {
        &self.legs[p - 1]
    }

    /// Slots touched by `A(p)`, ascending.
    pub fn slots_of(&self, p: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.legs(p).iter().map(|l| l.slot).collect();
        v.sort_unstable();
        v
    }

    /// Left-hand factors in application order: odd labels ascending.
    pub fn lhs_order(&self) -> Vec<usize> {
        (1..=self.rank.labels()).step_by(2).collect()
    }

    /// Right-hand factors in application order: even labels descending.
    pub fn rhs_order(&self) -> Vec<usize> {
        (2..self.rank.labels()).step_by(2).rev().collect()
    }

    /// Bottom faces in slot order; they coordinatize global colorings.
    pub fn bottom_faces(&self) -> Vec<Face> {
        self.timelines.iter().map(|t| t.bottom).collect()
    }
}

pub fn slot_scheme(n: usize) -> Result<SlotScheme> {
    Ok(SlotScheme::new(PolygonRank::new(n)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn heptagon_slot_sets_match_relation_subscripts() {
        let s = slot_scheme(3).unwrap();
        let pos = |p: usize| -> Vec<usize> { s.slots_of(p).into_iter().map(|i| i + 1).collect() };
        assert_eq!(pos(1), vec![1, 2, 3]);
        assert_eq!(pos(3), vec![1, 4, 5]);
        assert_eq!(pos(5), vec![2, 4, 6]);
        assert_eq!(pos(7), vec![3, 5, 6]);
        assert_eq!(pos(6), vec![3, 5, 6]);
        assert_eq!(pos(4), vec![2, 4, 5]);
        assert_eq!(pos(2), vec![1, 2, 3]);
    }

    #[test]
    fn heptagon_first_slot_timeline() {
        let s = slot_scheme(3).unwrap();
        let t = s.timeline(s.slot_index(1, 3).unwrap());
        assert_eq!(t.bottom, Face::of(1, 2));
        assert_eq!(t.lhs_internal, Face::of(1, 3));
        assert_eq!(t.rhs_internal, None);
        assert_eq!(t.top, Face::of(2, 3));
        assert_eq!(s.inputs(7), &[1, 3, 5]);
        assert_eq!(s.outputs(7), &[2, 4, 6]);
    }

    #[test]
    fn pentagon_scheme() {
        let s = slot_scheme(2).unwrap();
        let slots: Vec<(usize, usize)> = s.slots().iter().map(|x| (x.lo, x.hi)).collect();
        assert_eq!(slots, vec![(1, 3), (1, 5), (3, 5)]);
        let k = s.slot_index(3, 5).unwrap();
        let t = s.timeline(k);
        assert_eq!(t.rhs_route(), vec![Face::of(3, 4), Face::of(4, 5)]);
        // on the right-hand side only A(4) touches slot {3,5}
        let rhs_touching: Vec<usize> = s
            .rhs_order()
            .into_iter()
            .filter(|&p| s.slots_of(p).contains(&k))
            .collect();
        assert_eq!(rhs_touching, vec![4]);
    }

    #[test]
    fn timelines_partition_faces() {
        for r in PolygonRank::all() {
            let s = SlotScheme::new(r);
            let mut seen = HashSet::new();
            let mut total = 0;
            for t in s.timelines() {
                for f in t.faces() {
                    assert!(seen.insert(f), "face {f} repeated for n={r}");
                    total += 1;
                }
            }
            assert_eq!(total, r.face_count());
            assert_eq!(seen, Face::all(r).into_iter().collect());
        }
    }

    #[test]
    fn legs_match_companion_sets() {
        for r in PolygonRank::all() {
            let s = SlotScheme::new(r);
            for p in 1..=r.labels() {
                let legs = s.legs(p);
                assert_eq!(legs.len(), r.get());
                let mut ins: Vec<usize> = legs.iter().map(|l| l.input).collect();
                let mut outs: Vec<usize> = legs.iter().map(|l| l.output).collect();
                ins.sort_unstable();
                outs.sort_unstable();
                assert_eq!(ins, s.inputs(p));
                assert_eq!(outs, s.outputs(p));
                // every leg face contains p
                for leg in legs {
                    assert!(Face::of(leg.input, p).contains(p));
                    assert!(Face::of(leg.output, p).contains(p));
                }
            }
        }
    }
}
