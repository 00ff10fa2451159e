//! History spaces and the Boolean algebra of events.
//!
//! Events are subsets of a finite history space. Intersection plays the role
//! of multiplication and symmetric difference the role of addition. Every
//! event carries a handle to its space; combining events from different
//! spaces is an error rather than a silent reinterpretation of indices.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use itertools::Itertools;

use crate::error::{Error, Result};
use crate::Limits;

#[derive(Debug)]
struct SpaceInner {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

/// A finite, ordered set of labelled histories.
///
/// Cloning is cheap (shared handle). Two spaces compare equal when their
/// label lists are identical.
#[derive(Clone)]
pub struct HistorySpace(Arc<SpaceInner>);

impl HistorySpace {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptySpace);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(HistorySpace(Arc::new(SpaceInner { labels, index })))
    }

    /// Number of histories.
    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    /// Always false; kept for the `len`/`is_empty` convention.
    pub fn is_empty(&self) -> bool {
        self.0.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.0.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.0
            .index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn same_as(&self, other: &HistorySpace) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.labels == other.0.labels
    }

    pub(crate) fn ensure_same(&self, other: &HistorySpace) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    /// Mask with one bit per history; only valid for `n <= 64`.
    pub(crate) fn full_mask(&self) -> u64 {
        debug_assert!(self.len() <= 64);
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }
}

impl PartialEq for HistorySpace {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for HistorySpace {}

impl fmt::Debug for HistorySpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("HistorySpace").field(&self.0.labels).finish()
    }
}

/// A subset of a history space.
#[derive(Clone)]
pub struct Event {
    space: HistorySpace,
    members: FixedBitSet,
}

impl Event {
    pub fn empty(space: &HistorySpace) -> Self {
        Event {
            space: space.clone(),
            members: FixedBitSet::with_capacity(space.len()),
        }
    }

    /// The whole space Ω.
    pub fn full(space: &HistorySpace) -> Self {
        let mut members = FixedBitSet::with_capacity(space.len());
        members.insert_range(..);
        Event {
            space: space.clone(),
            members,
        }
    }

    pub fn singleton(space: &HistorySpace, index: usize) -> Result<Self> {
        Self::from_indices(space, [index])
    }

    pub fn from_indices<I>(space: &HistorySpace, indices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let n = space.len();
        let mut members = FixedBitSet::with_capacity(n);
        for index in indices {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, n });
            }
            members.insert(index);
        }
        Ok(Event {
            space: space.clone(),
            members,
        })
    }

    pub fn from_labels<I, S>(space: &HistorySpace, labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let indices = labels
            .into_iter()
            .map(|l| space.index_of(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(space, indices)
    }

    /// Builds an event from the low `n` bits of `mask`.
    pub(crate) fn from_mask(space: &HistorySpace, mask: u64) -> Self {
        debug_assert!(space.len() <= 64 && mask & !space.full_mask() == 0);
        let mut members = FixedBitSet::with_capacity(space.len());
        let mut rest = mask;
        while rest != 0 {
            members.insert(rest.trailing_zeros() as usize);
            rest &= rest - 1;
        }
        Event {
            space: space.clone(),
            members,
        }
    }

    /// Bit mask of the members, when the space has at most 64 histories.
    pub fn mask(&self) -> Option<u64> {
        if self.space.len() > 64 {
            return None;
        }
        Some(self.members.ones().fold(0u64, |m, i| m | (1 << i)))
    }

    pub fn space(&self) -> &HistorySpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.space.len()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.contains(index)
    }

    /// Member indices in increasing order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.indices().map(|i| self.space.label(i)).collect()
    }

    fn combine(
        &self,
        other: &Event,
        op: impl FnOnce(&mut FixedBitSet, &FixedBitSet),
    ) -> Result<Event> {
        self.space.ensure_same(&other.space)?;
        let mut members = self.members.clone();
        op(&mut members, &other.members);
        Ok(Event {
            space: self.space.clone(),
            members,
        })
    }

    pub fn intersect(&self, other: &Event) -> Result<Event> {
        self.combine(other, |a, b| a.intersect_with(b))
    }

    pub fn union(&self, other: &Event) -> Result<Event> {
        self.combine(other, |a, b| a.union_with(b))
    }

    /// `(E ∪ F) ∖ (E ∩ F)`, the addition of the event ring.
    pub fn symmetric_difference(&self, other: &Event) -> Result<Event> {
        self.combine(other, |a, b| a.symmetric_difference_with(b))
    }

    pub fn difference(&self, other: &Event) -> Result<Event> {
        self.combine(other, |a, b| a.difference_with(b))
    }

    pub fn complement(&self) -> Event {
        let mut members = self.members.clone();
        members.toggle_range(..);
        Event {
            space: self.space.clone(),
            members,
        }
    }

    pub fn is_subset(&self, other: &Event) -> Result<bool> {
        self.space.ensure_same(&other.space)?;
        Ok(self.members.is_subset(&other.members))
    }

    pub fn is_disjoint(&self, other: &Event) -> Result<bool> {
        self.space.ensure_same(&other.space)?;
        Ok(self.members.is_disjoint(&other.members))
    }
}

impl PartialEq for Event {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && self.space == other.space
    }
}

impl Eq for Event {}

impl Hash for Event {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

/// Canonical order: by size, then lexicographically by sorted member indices.
impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(","))
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Event{self}")
    }
}

/// Iterator over all events of a space in canonical order.
pub struct EventIter {
    space: HistorySpace,
    size: usize,
    combos: itertools::Combinations<std::ops::Range<usize>>,
}

impl Iterator for EventIter {
    type Item = Event;

    fn next(&mut self) -> Option<Event> {
        let n = self.space.len();
        loop {
            if let Some(indices) = self.combos.next() {
                return Some(Event::from_indices(&self.space, indices).expect("indices below n"));
            }
            if self.size >= n {
                return None;
            }
            self.size += 1;
            self.combos = (0..n).combinations(self.size);
        }
    }
}

/// All `2^n` events of `space`, smallest first.
pub fn enumerate_events(space: &HistorySpace, limits: &Limits) -> Result<EventIter> {
    limits.check_exhaustive("event enumeration", space.len())?;
    Ok(EventIter {
        space: space.clone(),
        size: 0,
        combos: (0..space.len()).combinations(0),
    })
}

/// Pairwise-disjoint nonempty blocks covering the space.
///
/// Block order is preserved as given; equality ignores it.
#[derive(Clone, Debug)]
pub struct Partition {
    space: HistorySpace,
    blocks: Vec<Event>,
}

impl Partition {
    pub fn new(space: &HistorySpace, blocks: Vec<Event>) -> Result<Self> {
        let mut seen = Event::empty(space);
        for block in &blocks {
            space.ensure_same(block.space())?;
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            if !block.is_disjoint(&seen)? {
                return Err(Error::InvalidPartition(format!(
                    "block {block} overlaps an earlier block"
                )));
            }
            seen = seen.union(block)?;
        }
        if !seen.is_full() {
            return Err(Error::InvalidPartition(format!(
                "blocks miss {}",
                seen.complement()
            )));
        }
        Ok(Partition {
            space: space.clone(),
            blocks,
        })
    }

    pub fn from_labels<B, S>(space: &HistorySpace, blocks: &[B]) -> Result<Self>
    where
        B: AsRef<[S]>,
        S: AsRef<str>,
    {
        let blocks = blocks
            .iter()
            .map(|b| Event::from_labels(space, b.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(space, blocks)
    }

    /// One block per history.
    pub fn discrete(space: &HistorySpace) -> Self {
        let blocks = (0..space.len())
            .map(|i| Event::singleton(space, i).expect("index below n"))
            .collect();
        Partition {
            space: space.clone(),
            blocks,
        }
    }

    /// The single block Ω.
    pub fn trivial(space: &HistorySpace) -> Self {
        Partition {
            space: space.clone(),
            blocks: vec![Event::full(space)],
        }
    }

    pub fn space(&self) -> &HistorySpace {
        &self.space
    }

    pub fn blocks(&self) -> &[Event] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block holding history `index`.
    pub fn block_of(&self, index: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(index))
    }

    /// Blocks sorted by their smallest member.
    pub fn canonical(&self) -> Partition {
        let mut blocks = self.blocks.clone();
        blocks.sort_by_key(|b| b.indices().next());
        Partition {
            space: self.space.clone(),
            blocks,
        }
    }

    /// All `2^k` unions of blocks, in canonical event order.
    pub fn subalgebra_events(&self, limits: &Limits) -> Result<Vec<Event>> {
        limits.check_exhaustive("subalgebra enumeration", self.len())?;
        let k = self.len();
        let mut events = Vec::with_capacity(1 << k);
        for selection in 0u64..(1u64 << k) {
            let mut event = Event::empty(&self.space);
            for (j, block) in self.blocks.iter().enumerate() {
                if selection >> j & 1 == 1 {
                    event.members.union_with(&block.members);
                }
            }
            events.push(event);
        }
        events.sort();
        Ok(events)
    }

    /// True iff every block of `self` lies inside some block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> Result<bool> {
        self.space.ensure_same(&coarser.space)?;
        for block in &self.blocks {
            let first = block.indices().next().expect("blocks are nonempty");
            let target = coarser.block_of(first).expect("partitions cover the space");
            if !block.is_subset(&coarser.blocks[target])? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.canonical().blocks == other.canonical().blocks
    }
}

impl Eq for Partition {}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.blocks.iter().join(","))
    }
}

/// Free-function form of [`Partition::subalgebra_events`].
pub fn subalgebra_events(partition: &Partition, limits: &Limits) -> Result<Vec<Event>> {
    partition.subalgebra_events(limits)
}

/// Free-function form of [`Partition::refines`].
pub fn refines(finer: &Partition, coarser: &Partition) -> Result<bool> {
    finer.refines(coarser)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn abc() -> HistorySpace {
        HistorySpace::new(["A", "B", "C"]).unwrap()
    }

    fn ev(space: &HistorySpace, labels: &[&str]) -> Event {
        Event::from_labels(space, labels).unwrap()
    }

    #[test]
    fn make_space_examples() {
        assert_eq!(abc().len(), 3);
        assert_eq!(HistorySpace::new(["h"]).unwrap().len(), 1);
        assert_eq!(
            HistorySpace::new(["x", "x"]).unwrap_err(),
            Error::DuplicateLabel("x".into())
        );
        assert_eq!(
            HistorySpace::new(Vec::<String>::new()).unwrap_err(),
            Error::EmptySpace
        );
        assert_eq!(abc().labels(), ["A", "B", "C"]);
    }

    #[test]
    fn set_op_examples() {
        let s = abc();
        assert_eq!(
            ev(&s, &["A", "B"])
                .symmetric_difference(&ev(&s, &["B", "C"]))
                .unwrap(),
            ev(&s, &["A", "C"])
        );
        assert_eq!(
            ev(&s, &["A", "C"]).intersect(&ev(&s, &["A", "B"])).unwrap(),
            ev(&s, &["A"])
        );
        assert_eq!(ev(&s, &["A"]).complement(), ev(&s, &["B", "C"]));
        assert!(ev(&s, &["A"]).is_subset(&ev(&s, &["A", "C"])).unwrap());
        assert_eq!(ev(&s, &["A", "C"]).to_string(), "{A,C}");
    }

    #[test]
    fn cross_space_operations_fail() {
        let s = abc();
        let t = HistorySpace::new(["A", "B", "D"]).unwrap();
        let e = Event::full(&s);
        let f = Event::full(&t);
        assert_eq!(e.union(&f).unwrap_err(), Error::SpaceMismatch);
        assert_eq!(e.is_subset(&f).unwrap_err(), Error::SpaceMismatch);
        // Same labels built twice count as the same space.
        let s2 = abc();
        assert!(e.intersect(&Event::full(&s2)).is_ok());
    }

    #[test]
    fn unknown_label_and_index() {
        let s = abc();
        assert_eq!(
            Event::from_labels(&s, ["Z"]).unwrap_err(),
            Error::UnknownLabel("Z".into())
        );
        assert!(matches!(
            Event::from_indices(&s, [3]),
            Err(Error::IndexOutOfRange { index: 3, n: 3 })
        ));
    }

    #[test]
    fn enumeration_order_and_cap() {
        let s = HistorySpace::new(["1", "2"]).unwrap();
        let events: Vec<String> = enumerate_events(&s, &Limits::default())
            .unwrap()
            .map(|e| e.to_string())
            .collect();
        assert_eq!(events, ["{}", "{1}", "{2}", "{1,2}"]);
        assert_eq!(
            enumerate_events(&abc(), &Limits::default())
                .unwrap()
                .count(),
            8
        );

        let big = HistorySpace::new((0..21).map(|i| i.to_string())).unwrap();
        assert!(matches!(
            enumerate_events(&big, &Limits::default()),
            Err(Error::CapExceeded {
                size: 21,
                cap: 20,
                ..
            })
        ));
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let s = HistorySpace::new(["a", "b", "c", "d", "e"]).unwrap();
        let events: Vec<Event> = enumerate_events(&s, &Limits::default()).unwrap().collect();
        assert_eq!(events.len(), 32);
        assert!(events.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn subalgebra_examples() {
        let s = abc();
        let p = Partition::from_labels(&s, &[&["A", "C"][..], &["B"]]).unwrap();
        let events = p.subalgebra_events(&Limits::default()).unwrap();
        assert_eq!(
            events,
            [
                Event::empty(&s),
                ev(&s, &["B"]),
                ev(&s, &["A", "C"]),
                Event::full(&s)
            ]
        );
        assert_eq!(
            Partition::discrete(&s)
                .subalgebra_events(&Limits::default())
                .unwrap()
                .len(),
            8
        );
        assert_eq!(
            Partition::trivial(&s)
                .subalgebra_events(&Limits::default())
                .unwrap(),
            [Event::empty(&s), Event::full(&s)]
        );
    }

    #[test]
    fn refines_examples() {
        let s = abc();
        let coarse = Partition::from_labels(&s, &[&["A", "C"][..], &["B"]]).unwrap();
        let discrete = Partition::discrete(&s);
        assert!(discrete.refines(&coarse).unwrap());
        assert!(!coarse.refines(&discrete).unwrap());
        assert!(coarse.refines(&coarse).unwrap());
    }

    #[test]
    fn invalid_partitions() {
        let s = abc();
        assert!(Partition::from_labels(&s, &[&["A", "B"][..], &["B", "C"]]).is_err());
        assert!(Partition::from_labels(&s, &[&["A"][..], &["B"]]).is_err());
        assert!(Partition::new(&s, vec![Event::empty(&s), Event::full(&s)]).is_err());
    }

    #[test]
    fn partition_equality_ignores_block_order() {
        let s = abc();
        let p = Partition::from_labels(&s, &[&["B"][..], &["A", "C"]]).unwrap();
        let q = Partition::from_labels(&s, &[&["A", "C"][..], &["B"]]).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.canonical().blocks()[0], ev(&s, &["A", "C"]));
    }

    #[test]
    fn boolean_ring_laws_exhaustive() {
        for n in 1..=4 {
            let s = HistorySpace::new((0..n).map(|i| format!("h{i}"))).unwrap();
            let all: Vec<Event> = enumerate_events(&s, &Limits::default()).unwrap().collect();
            assert_eq!(all.len(), 1 << n);
            let zero = Event::empty(&s);
            for e in &all {
                assert_eq!(&e.symmetric_difference(&zero).unwrap(), e);
                assert_eq!(e.symmetric_difference(e).unwrap(), zero);
                for f in &all {
                    assert_eq!(
                        e.symmetric_difference(f).unwrap(),
                        f.symmetric_difference(e).unwrap()
                    );
                    for g in &all {
                        let lhs = e
                            .symmetric_difference(f)
                            .unwrap()
                            .symmetric_difference(g)
                            .unwrap();
                        let rhs = e
                            .symmetric_difference(&f.symmetric_difference(g).unwrap())
                            .unwrap();
                        assert_eq!(lhs, rhs);
                        let dist = e.intersect(&f.symmetric_difference(g).unwrap()).unwrap();
                        let expanded = e
                            .intersect(f)
                            .unwrap()
                            .symmetric_difference(&e.intersect(g).unwrap())
                            .unwrap();
                        assert_eq!(dist, expanded);
                    }
                }
            }
        }
    }

    #[test]
    fn subalgebra_closed_under_ring_operations() {
        let s = HistorySpace::new((0..6).map(|i| format!("h{i}"))).unwrap();
        let cases: [&[&[&str]]; 3] = [
            &[&["h0", "h3"], &["h1"], &["h2", "h4", "h5"]],
            &[&["h0"], &["h1"], &["h2"], &["h3", "h4", "h5"]],
            &[&["h0", "h1", "h2", "h3", "h4", "h5"]],
        ];
        for blocks in cases {
            let p = Partition::from_labels(&s, blocks).unwrap();
            let events = p.subalgebra_events(&Limits::default()).unwrap();
            assert_eq!(events.len(), 1 << p.len());
            for x in &events {
                for y in &events {
                    assert!(events.contains(&x.symmetric_difference(y).unwrap()));
                    assert!(events.contains(&x.intersect(y).unwrap()));
                }
            }
        }
    }

    fn partition_from_assignment(space: &HistorySpace, assignment: &[usize]) -> Partition {
        let groups = assignment.iter().enumerate().into_group_map_by(|(_, &g)| g);
        let blocks = groups
            .into_values()
            .map(|members| Event::from_indices(space, members.into_iter().map(|(i, _)| i)).unwrap())
            .collect();
        Partition::new(space, blocks).unwrap()
    }

    proptest! {
        #[test]
        fn refines_is_a_partial_order(
            a in proptest::collection::vec(0usize..4, 6),
            b in proptest::collection::vec(0usize..4, 6),
            c in proptest::collection::vec(0usize..4, 6),
        ) {
            let s = HistorySpace::new((0..6).map(|i| format!("h{i}"))).unwrap();
            let p = partition_from_assignment(&s, &a);
            let q = partition_from_assignment(&s, &b);
            let r = partition_from_assignment(&s, &c);
            prop_assert!(p.refines(&p).unwrap());
            if p.refines(&q).unwrap() && q.refines(&p).unwrap() {
                prop_assert_eq!(&p, &q);
            }
            if p.refines(&q).unwrap() && q.refines(&r).unwrap() {
                prop_assert!(p.refines(&r).unwrap());
            }
            // Common refinement refines both.
            let meet: Vec<usize> = a.iter().zip(&b).map(|(x, y)| x * 4 + y).collect();
            let m = partition_from_assignment(&s, &meet);
            prop_assert!(m.refines(&p).unwrap() && m.refines(&q).unwrap());
        }

        #[test]
        fn mask_round_trip(mask in 0u64..(1 << 12)) {
            let s = HistorySpace::new((0..12).map(|i| format!("h{i}"))).unwrap();
            let e = Event::from_mask(&s, mask);
            prop_assert_eq!(e.mask(), Some(mask));
            prop_assert_eq!(e.len(), mask.count_ones() as usize);
        }
    }
}
