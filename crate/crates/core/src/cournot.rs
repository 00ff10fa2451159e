//! Threshold predictions on pre-selected questions.
//!
//! [`predict`] implements the weak form of the rule: a question chosen before
//! the experiment whose measure is at most `ε` is predicted not to occur. If it
//! does occur, the model is falsified. The function is stateless, so the
//! caller is responsible for fixing the question in advance. Picking the
//! question after seeing the outcome makes the verdict meaningless.
//!
//! [`strong_cournot_cover`] shows what goes wrong when every small event is
//! ruled out, whether or not it was chosen in advance. A family of
//! below-threshold pieces can cover the whole space, so every outcome would
//! be forbidden.

use std::fmt;

use crate::algebra::{Event, HistorySpace};
use crate::error::{Error, Result};
use crate::measure::{DecoherenceFunctional, MeasureTable};

/// Anything that can assign a measure to a question of type `Q`.
pub trait MeasureSource<Q: ?Sized> {
    fn measure_of(&self, question: &Q) -> Result<f64>;
}

impl MeasureSource<Event> for DecoherenceFunctional {
    fn measure_of(&self, event: &Event) -> Result<f64> {
        self.mu(event)
    }
}

impl MeasureSource<Event> for MeasureTable {
    fn measure_of(&self, event: &Event) -> Result<f64> {
        self.get(event)
    }
}

impl<Q: ?Sized, S: MeasureSource<Q> + ?Sized> MeasureSource<Q> for &S {
    fn measure_of(&self, question: &Q) -> Result<f64> {
        (**self).measure_of(question)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Precluded,
    NotRuledOut,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Precluded => "Precluded",
            Outcome::NotRuledOut => "NotRuledOut",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict<Q> {
    pub event: Q,
    pub measure: f64,
    pub epsilon: f64,
    pub outcome: Outcome,
}

/// `Precluded` iff `μ(A) ≤ ε`.
///
/// The question must have been selected before the outcome is known.
pub fn predict<Q, S>(source: &S, event: Q, epsilon: f64) -> Result<Verdict<Q>>
where
    S: MeasureSource<Q> + ?Sized,
{
    if !(epsilon > 0.0) {
        return Err(Error::InvalidEpsilon {
            expected: "positive",
            got: epsilon,
        });
    }
    let measure = source.measure_of(&event)?;
    let outcome = if measure <= epsilon {
        Outcome::Precluded
    } else {
        Outcome::NotRuledOut
    };
    Ok(Verdict {
        event,
        measure,
        epsilon,
        outcome,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NullCover {
    pub epsilon: f64,
    /// Candidate pieces whose measure is below the threshold.
    pub pieces: Vec<Event>,
    /// Whether the pieces jointly cover the whole space.
    pub covered: bool,
}

/// Keeps the candidates below threshold (`|μ| ≤ tol` of the tolerance given
/// for `ε = 0`, strict `μ < ε` otherwise) and reports whether they cover Ω.
pub fn strong_cournot_cover<S>(
    source: &S,
    space: &HistorySpace,
    epsilon: f64,
    tolerance: f64,
    candidates: &[Event],
) -> Result<NullCover>
where
    S: MeasureSource<Event> + ?Sized,
{
    if !(epsilon >= 0.0) {
        return Err(Error::InvalidEpsilon {
            expected: "non-negative",
            got: epsilon,
        });
    }
    let mut pieces = Vec::new();
    let mut union = Event::empty(space);
    for piece in candidates {
        space.ensure_same(piece.space())?;
        let mu = source.measure_of(piece)?;
        let small = if epsilon == 0.0 {
            mu.abs() <= tolerance
        } else {
            mu < epsilon
        };
        if small {
            union = union.union(piece)?;
            pieces.push(piece.clone());
        }
    }
    Ok(NullCover {
        epsilon,
        pieces,
        covered: union.is_full(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Limits;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn three_slit() -> DecoherenceFunctional {
        let s = HistorySpace::new(["A", "B", "C"]).unwrap();
        let a: Vec<Complex64> = [1.0, -1.0, 1.0]
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect();
        DecoherenceFunctional::from_amplitudes(&s, &a).unwrap()
    }

    #[test]
    fn null_event_is_precluded_for_any_epsilon() {
        let d = three_slit();
        let ab = Event::from_labels(d.space(), ["A", "B"]).unwrap();
        for eps in [1e-12, 1e-3, 0.5] {
            assert_eq!(
                predict(&d, ab.clone(), eps).unwrap().outcome,
                Outcome::Precluded
            );
        }
        let ac = Event::from_labels(d.space(), ["A", "C"]).unwrap();
        let v = predict(&d, ac, 1e-3).unwrap();
        assert_eq!(v.outcome, Outcome::NotRuledOut);
        assert_eq!(v.measure, 4.0);
        assert!(predict(&d, Event::full(d.space()), 0.0).is_err());
    }

    #[test]
    fn threshold_is_inclusive() {
        let s = HistorySpace::new(["a", "b"]).unwrap();
        let d = DecoherenceFunctional::diagonal(&s, &[0.25, 0.75]).unwrap();
        let a = Event::from_labels(&s, ["a"]).unwrap();
        assert_eq!(predict(&d, a, 0.25).unwrap().outcome, Outcome::Precluded);
    }

    #[test]
    fn three_slit_exact_null_cover() {
        let d = three_slit();
        let s = d.space().clone();
        let pieces = [
            Event::from_labels(&s, ["A", "B"]).unwrap(),
            Event::from_labels(&s, ["B", "C"]).unwrap(),
        ];
        let cover = strong_cournot_cover(&d, &s, 0.0, 1e-9, &pieces).unwrap();
        assert!(cover.covered);
        assert_eq!(cover.pieces.len(), 2);
        let cover_ac = strong_cournot_cover(
            &d,
            &s,
            0.0,
            1e-9,
            &[Event::from_labels(&s, ["A", "C"]).unwrap()],
        )
        .unwrap();
        assert!(!cover_ac.covered && cover_ac.pieces.is_empty());
    }

    proptest! {
        #[test]
        fn verdicts_are_monotone_in_epsilon(
            weights in proptest::collection::vec(1u32..10, 2..=6),
            mask in 0u64..64,
            e1 in 1e-6f64..1.0,
            e2 in 1e-6f64..1.0,
        ) {
            let n = weights.len();
            let total: u32 = weights.iter().sum();
            let s = HistorySpace::new((0..n).map(|i| format!("h{i}"))).unwrap();
            let probs: Vec<f64> = weights.iter().map(|&w| w as f64 / total as f64).collect();
            let d = DecoherenceFunctional::diagonal(&s, &probs).unwrap();
            let e = Event::from_mask(&s, mask & s.full_mask());
            let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
            if predict(&d, e.clone(), lo).unwrap().outcome == Outcome::Precluded {
                prop_assert_eq!(predict(&d, e.clone(), hi).unwrap().outcome, Outcome::Precluded);
            }
            // Classical complement bound for ε < 1/2.
            let eps = lo.min(0.49);
            if predict(&d, e.clone(), eps).unwrap().outcome == Outcome::Precluded {
                prop_assert_eq!(predict(&d, e.complement(), eps).unwrap().outcome, Outcome::NotRuledOut);
            }
        }

        #[test]
        fn covered_means_union_is_everything(
            masks in proptest::collection::vec(1u64..16, 1..6),
            eps in 0.0f64..1.0,
        ) {
            let s = HistorySpace::new(["a", "b", "c", "d"]).unwrap();
            let d = DecoherenceFunctional::diagonal(&s, &[0.1, 0.2, 0.3, 0.4]).unwrap();
            let table = d.measure_table(&Limits::default()).unwrap();
            let pieces: Vec<Event> = masks.iter().map(|&m| Event::from_mask(&s, m)).collect();
            let cover = strong_cournot_cover(&table, &s, eps, 1e-9, &pieces).unwrap();
            let union = cover.pieces.iter().fold(Event::empty(&s), |u, p| u.union(p).unwrap());
            prop_assert_eq!(cover.covered, union.is_full());
            for p in &cover.pieces {
                prop_assert!(table.get(p).unwrap() < eps || eps == 0.0);
            }
        }
    }
}
