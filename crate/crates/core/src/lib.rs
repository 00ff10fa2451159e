//! Co-event logic over finite history spaces.
//!
//! A quantum system is described by a finite set of histories and a
//! decoherence functional on pairs of histories. Its diagonal gives the
//! quantum measure `μ(A) = D(A, A)`, which is not additive but obeys the
//! three-set sum rule. Possible realities are multiplicative co-events,
//! valuations `φ_A(B) = [A ⊆ B]` indexed by a nonempty dual set `A`, that
//! send every null event to false and whose dual is inclusion-minimal
//! among such sets.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: history spaces, events, partitions and their subalgebras.
//! * [`measure`]: decoherence functionals, measure tables, axiom checks and
//!   reconstruction of a functional from a measure.
//! * [`coevent`]: co-event valuation, null families, primitive preclusive
//!   co-events (exact and approximate), classical domains and Boolean
//!   anomalies.
//! * [`cournot`]: threshold predictions on pre-selected events and null
//!   covers.
//! * [`trials`]: repeated-trial product measures, the coin and the
//!   five-slot double-slit models.
//! * [`cli`]: experiment files, reports and the `anhom` command line.

// `!(x > 0.0)` style checks are deliberate: they reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod cli;
pub mod coevent;
pub mod cournot;
mod error;
pub mod measure;
pub mod trials;

pub use algebra::{enumerate_events, Event, HistorySpace, Partition};
pub use coevent::{
    classical_domain, enumerate_appc, enumerate_ppc, evaluate, find_boolean_anomalies,
    is_homomorphism_on, is_homomorphism_on_exhaustive, maximal_null_sets, minimal_transversals,
    ClassicalDomain, CoEvent, NullFamily,
};
pub use cournot::{predict, strong_cournot_cover, MeasureSource, NullCover, Outcome, Verdict};
pub use error::{Error, Result};
pub use measure::{
    check_sum_rule, check_sum_rule_table, measure_to_decoherence, validate_decoherence,
    DecoherenceFunctional, MeasureTable, ValidationReport,
};
pub use trials::{
    binomial_tail_measure, double_slit_model, CoinModel, DistributionEvent, DoubleSlit,
    OccupationEvent, OccupationMeasure, RepeatedTrial,
};

/// Absolute tolerance used for equality checks on normalized measures.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Size limits for operations that scan every event or every triple of
/// disjoint events.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest history count for which all `2^n` events are scanned.
    pub cap: usize,
    /// Largest history count for the disjoint-triple sum-rule scan (`4^n`).
    pub triple_cap: usize,
}

impl Limits {
    /// Hard ceiling on `cap`: exhaustive scans index events by a `u64` bit mask
    /// and store one value per event.
    pub const MAX_CAP: usize = 30;

    pub fn with_cap(self, cap: usize) -> Self {
        Limits { cap, ..self }
    }

    pub(crate) fn check_exhaustive(&self, what: &'static str, n: usize) -> Result<()> {
        let cap = self.cap.min(Self::MAX_CAP);
        if n > cap {
            return Err(Error::CapExceeded { what, size: n, cap });
        }
        Ok(())
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            cap: 20,
            triple_cap: 10,
        }
    }
}
