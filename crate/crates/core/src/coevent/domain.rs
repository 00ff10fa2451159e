//! Finest classical domain of a family of co-events.

use crate::algebra::{Event, Partition};
use crate::error::{Error, Result};
use crate::Limits;

use super::CoEvent;

struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    fn new(len: usize) -> Self {
        DisjointSets {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}

/// Partition on whose generated subalgebra every co-event of a family acts
/// as a Boolean homomorphism, and which is the finest such partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalDomain {
    partition: Partition,
}

impl ClassicalDomain {
    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn into_partition(self) -> Partition {
        self.partition
    }
}

/// Blocks are the connected components of the hypergraph whose edges are
/// the duals; histories outside every dual stay singletons.
pub fn classical_domain(coevents: &[CoEvent]) -> Result<ClassicalDomain> {
    let space = coevents
        .first()
        .ok_or(Error::NoCoEvents)?
        .dual()
        .space()
        .clone();
    let mut sets = DisjointSets::new(space.len());
    for c in coevents {
        space.ensure_same(c.dual().space())?;
        let mut members = c.dual().indices();
        if let Some(first) = members.next() {
            for other in members {
                sets.union(first, other);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); space.len()];
    for i in 0..space.len() {
        let root = sets.find(i);
        groups[root].push(i);
    }
    let blocks = groups
        .into_iter()
        .filter(|g| !g.is_empty())
        .map(|g| Event::from_indices(&space, g))
        .collect::<Result<Vec<_>>>()?;
    let partition = Partition::new(&space, blocks)?.canonical();
    Ok(ClassicalDomain { partition })
}

/// Whether `φ` restricted to the subalgebra generated by `partition` is a
/// homomorphism. Holds exactly when the dual sits inside a single block.
pub fn is_homomorphism_on(coevent: &CoEvent, partition: &Partition) -> Result<bool> {
    let dual = coevent.dual();
    dual.space().ensure_same(partition.space())?;
    for block in partition.blocks() {
        if dual.is_subset(block)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Same predicate as [`is_homomorphism_on`], decided by checking
/// `φ(X△Y) = φ(X) ⊕ φ(Y)` and `φ(X∩Y) = φ(X)∧φ(Y)` on every pair of
/// subalgebra events.
pub fn is_homomorphism_on_exhaustive(
    coevent: &CoEvent,
    partition: &Partition,
    limits: &Limits,
) -> Result<bool> {
    coevent.dual().space().ensure_same(partition.space())?;
    let events = partition.subalgebra_events(limits)?;
    let values = events
        .iter()
        .map(|e| coevent.evaluate(e))
        .collect::<Result<Vec<bool>>>()?;
    for (x, &vx) in events.iter().zip(&values) {
        for (y, &vy) in events.iter().zip(&values) {
            if coevent.evaluate(&x.symmetric_difference(y)?)? != (vx ^ vy) {
                return Ok(false);
            }
            if coevent.evaluate(&x.intersect(y)?)? != (vx && vy) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::HistorySpace;
    use proptest::prelude::*;

    fn abc() -> HistorySpace {
        HistorySpace::new(["A", "B", "C"]).unwrap()
    }

    fn co(space: &HistorySpace, labels: &[&str]) -> CoEvent {
        CoEvent::new(Event::from_labels(space, labels).unwrap()).unwrap()
    }

    #[test]
    fn domain_examples() {
        let s = abc();
        let d = classical_domain(&[co(&s, &["A", "C"])]).unwrap();
        assert_eq!(
            d.partition(),
            &Partition::from_labels(&s, &[&["A", "C"][..], &["B"]]).unwrap()
        );
        let singles: Vec<CoEvent> = ["A", "B", "C"].iter().map(|l| co(&s, &[l])).collect();
        assert_eq!(
            classical_domain(&singles).unwrap().partition(),
            &Partition::discrete(&s)
        );

        let t = HistorySpace::new(["1", "2", "3"]).unwrap();
        let chained = [co(&t, &["1", "2"]), co(&t, &["2", "3"])];
        assert_eq!(
            classical_domain(&chained).unwrap().partition(),
            &Partition::trivial(&t)
        );
        assert_eq!(classical_domain(&[]).unwrap_err(), Error::NoCoEvents);
    }

    #[test]
    fn homomorphism_examples() {
        let s = abc();
        let limits = Limits::default();
        let ac = co(&s, &["A", "C"]);
        let coarse = Partition::from_labels(&s, &[&["A", "C"][..], &["B"]]).unwrap();
        let discrete = Partition::discrete(&s);
        for (c, p, expected) in [
            (&ac, &coarse, true),
            (&ac, &discrete, false),
            (&co(&s, &["B"]), &discrete, true),
            (&co(&s, &["B"]), &coarse, true),
            (&co(&s, &["A"]), &Partition::trivial(&s), true),
        ] {
            assert_eq!(is_homomorphism_on(c, p).unwrap(), expected);
            assert_eq!(
                is_homomorphism_on_exhaustive(c, p, &limits).unwrap(),
                expected
            );
        }
    }

    fn split_block(p: &Partition, block: usize, side: u64) -> Partition {
        let target = &p.blocks()[block];
        let members: Vec<usize> = target.indices().collect();
        let (left, right): (Vec<_>, Vec<_>) = members
            .iter()
            .enumerate()
            .partition(|&(k, _)| side >> k & 1 == 1);
        let mut blocks: Vec<Event> = p
            .blocks()
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != block)
            .map(|(_, b)| b.clone())
            .collect();
        for half in [left, right] {
            blocks.push(Event::from_indices(p.space(), half.into_iter().map(|(_, &i)| i)).unwrap());
        }
        Partition::new(p.space(), blocks).unwrap()
    }

    proptest! {
        #[test]
        fn homomorphism_routes_agree(
            dual in 1u64..(1 << 6),
            assignment in proptest::collection::vec(0usize..3, 6),
        ) {
            let s = HistorySpace::new((0..6).map(|i| format!("h{i}"))).unwrap();
            let c = CoEvent::new(Event::from_mask(&s, dual)).unwrap();
            let blocks = (0..3)
                .map(|g| Event::from_indices(&s, (0..6).filter(|&i| assignment[i] == g)).unwrap())
                .filter(|b| !b.is_empty())
                .collect();
            let p = Partition::new(&s, blocks).unwrap();
            prop_assert_eq!(
                is_homomorphism_on(&c, &p).unwrap(),
                is_homomorphism_on_exhaustive(&c, &p, &Limits::default()).unwrap()
            );
        }

        #[test]
        fn domain_is_finest(duals in proptest::collection::vec(1u64..(1 << 7), 1..5)) {
            let s = HistorySpace::new((0..7).map(|i| format!("h{i}"))).unwrap();
            let coevents: Vec<CoEvent> = duals
                .iter()
                .map(|&m| CoEvent::new(Event::from_mask(&s, m)).unwrap())
                .collect();
            let domain = classical_domain(&coevents).unwrap();
            let p = domain.partition();
            for c in &coevents {
                prop_assert!(is_homomorphism_on(c, p).unwrap());
            }
            for (k, block) in p.blocks().iter().enumerate() {
                let size = block.len();
                // Every two-sided split of the block, each unordered split once.
                for side in 1..(1u64 << (size - 1).min(63)) {
                    let finer = split_block(p, k, side);
                    prop_assert!(coevents.iter().any(|c| !is_homomorphism_on(c, &finer).unwrap()));
                }
            }
        }
    }
}
