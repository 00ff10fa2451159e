//! Multiplicative co-events and the primitive preclusive ones.
//!
//! A multiplicative co-event is fixed by its dual `A`: it answers "true"
//! exactly for the events containing `A`. It is preclusive when every null
//! event is answered "false", i.e. `A` lies inside no null event, and
//! primitive when `A` is inclusion-minimal among preclusive duals. Writing
//! `N_1 … N_k` for the maximal null events, the primitive preclusive duals
//! are the minimal transversals of `{Ω∖N_1, …, Ω∖N_k}`.

mod domain;
mod transversal;

use std::fmt;

use crate::algebra::{Event, HistorySpace, Partition};
use crate::error::{Error, Result};
use crate::measure::{DecoherenceFunctional, MeasureTable};
use crate::Limits;

pub use domain::{
    classical_domain, is_homomorphism_on, is_homomorphism_on_exhaustive, ClassicalDomain,
};
pub use transversal::minimal_transversals;

/// Multiplicative co-event `φ_A(B) = [A ⊆ B]`, identified with its dual.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoEvent {
    dual: Event,
}

impl CoEvent {
    pub fn new(dual: Event) -> Result<Self> {
        if dual.is_empty() {
            return Err(Error::EmptyDual);
        }
        Ok(CoEvent { dual })
    }

    /// Characteristic map of a single history.
    pub fn classical(space: &HistorySpace, history: usize) -> Result<Self> {
        Self::new(Event::singleton(space, history)?)
    }

    pub fn dual(&self) -> &Event {
        &self.dual
    }

    pub fn evaluate(&self, event: &Event) -> Result<bool> {
        self.dual.is_subset(event)
    }
}

impl fmt::Display for CoEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.dual.fmt(f)
    }
}

/// Free-function form of [`CoEvent::evaluate`].
pub fn evaluate(coevent: &CoEvent, event: &Event) -> Result<bool> {
    coevent.evaluate(event)
}

/// The inclusion-maximal events below a preclusion threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct NullFamily {
    pub epsilon: f64,
    /// Pairwise incomparable, canonical order. `[∅]` when nothing nonempty is null.
    pub maximal_null_sets: Vec<Event>,
}

impl NullFamily {
    /// `ε = 0` selects `|μ(A)| ≤ tol`; `ε > 0` selects `μ(A) < ε`.
    pub fn from_table(table: &MeasureTable, epsilon: f64) -> Result<Self> {
        if !(epsilon >= 0.0) {
            return Err(Error::InvalidEpsilon {
                expected: "non-negative",
                got: epsilon,
            });
        }
        let tol = table.tolerance();
        let is_null = |v: f64| {
            if epsilon == 0.0 {
                v.abs() <= tol
            } else {
                v < epsilon
            }
        };
        let space = table.space();
        let n = space.len();
        let null: Vec<bool> = table.values().iter().map(|&v| is_null(v)).collect();
        // has_null_superset[m]: some null event contains m (m itself included).
        let mut has_null_superset = null.clone();
        for i in 0..n {
            let bit = 1usize << i;
            for m in 0..null.len() {
                if m & bit == 0 && has_null_superset[m | bit] {
                    has_null_superset[m] = true;
                }
            }
        }
        let full = space.full_mask() as usize;
        let mut maximal: Vec<Event> = (0..null.len())
            .filter(|&m| {
                null[m]
                    && (0..n)
                        .filter(|i| m >> i & 1 == 0)
                        .all(|i| !has_null_superset[m | 1 << i])
            })
            .map(|m| Event::from_mask(space, (m & full) as u64))
            .collect();
        maximal.sort();
        Ok(NullFamily {
            epsilon,
            maximal_null_sets: maximal,
        })
    }

    /// Whether `event` lies inside some member, i.e. is null at this threshold.
    pub fn dominates(&self, event: &Event) -> Result<bool> {
        for n in &self.maximal_null_sets {
            if event.is_subset(n)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Primitive preclusive duals: minimal transversals of the complements.
    pub fn primitive_coevents(&self) -> Result<Vec<CoEvent>> {
        let space = self.maximal_null_sets[0].space();
        if self.maximal_null_sets.iter().any(Event::is_full) {
            return Err(Error::TotalPreclusion);
        }
        let edges: Vec<Event> = self
            .maximal_null_sets
            .iter()
            .map(Event::complement)
            .collect();
        minimal_transversals(space, &edges)?
            .into_iter()
            .map(CoEvent::new)
            .collect()
    }
}

/// Scans all `2^n` events of `d`. See [`NullFamily::from_table`] for the threshold rule.
pub fn maximal_null_sets(
    d: &DecoherenceFunctional,
    epsilon: f64,
    limits: &Limits,
) -> Result<NullFamily> {
    NullFamily::from_table(&d.measure_table(limits)?, epsilon)
}

/// Primitive preclusive co-events under exact preclusion (`μ(A) = 0`).
pub fn enumerate_ppc(d: &DecoherenceFunctional, limits: &Limits) -> Result<Vec<CoEvent>> {
    maximal_null_sets(d, 0.0, limits)?.primitive_coevents()
}

/// Primitive co-events when every event with `μ(A) < ε` is precluded.
pub fn enumerate_appc(
    d: &DecoherenceFunctional,
    epsilon: f64,
    limits: &Limits,
) -> Result<Vec<CoEvent>> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidEpsilon {
            expected: "positive",
            got: epsilon,
        });
    }
    maximal_null_sets(d, epsilon, limits)?.primitive_coevents()
}

/// Co-events answering "false" on every cell of `question`, although the
/// cells are exhaustive and exactly one of them occurs.
pub fn find_boolean_anomalies(coevents: &[CoEvent], question: &Partition) -> Result<Vec<CoEvent>> {
    let mut anomalies = Vec::new();
    for c in coevents {
        let mut answers_yes = false;
        for cell in question.blocks() {
            if c.evaluate(cell)? {
                answers_yes = true;
                break;
            }
        }
        if !answers_yes {
            anomalies.push(c.clone());
        }
    }
    Ok(anomalies)
}
