//! Independent repetitions of a base system.
//!
//! The product functional `D_N((h_1…h_N), (h'_1…h'_N)) = Π_k D(h_k, h'_k)` is
//! never materialized. Product events factor as `Π_k μ(A_k)`. Occupation
//! events ("`c_j` trials land in cell `j`") reduce to a multinomial count
//! times a per-arrangement product, provided the cells do not interfere with
//! one another.

use std::ops::{Bound, RangeBounds};

use num_complex::Complex64;

use crate::algebra::{Event, HistorySpace, Partition};
use crate::cournot::MeasureSource;
use crate::error::{Error, Result};
use crate::measure::DecoherenceFunctional;
use crate::Limits;

#[derive(Debug, Clone)]
pub struct RepeatedTrial {
    base: DecoherenceFunctional,
    repetitions: usize,
}

/// One event per repetition.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductEvent(pub Vec<Event>);

/// Repeated-trial event fixing how many trials land in each cell.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupationEvent {
    pub cells: Partition,
    pub counts: Vec<usize>,
}

impl OccupationEvent {
    pub fn new(cells: Partition, counts: Vec<usize>) -> Result<Self> {
        if counts.len() != cells.len() {
            return Err(Error::InvalidCounts(format!(
                "{} counts for {} cells",
                counts.len(),
                cells.len()
            )));
        }
        Ok(OccupationEvent { cells, counts })
    }
}

/// Union of occupation events over the same cells (distinct count vectors
/// are disjoint events).
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionEvent {
    pub cells: Partition,
    pub count_vectors: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OccupationMeasure {
    /// Number of ways to assign trials to cells with the given counts.
    pub arrangements: u128,
    /// Measure of one such assignment, `Π_j μ(cell_j)^{c_j}`.
    pub per_arrangement: f64,
    pub total: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistributionMeasure {
    pub parts: Vec<OccupationMeasure>,
    pub arrangements: u128,
    pub total: f64,
}

/// `C(n, k)`, `None` on overflow.
fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// `N! / Π c_j!` for `N = Σ c_j`.
pub fn multinomial(counts: &[usize]) -> Option<u128> {
    let mut remaining: usize = counts.iter().sum();
    let mut acc: u128 = 1;
    for &c in counts {
        acc = acc.checked_mul(binomial(remaining, c)?)?;
        remaining -= c;
    }
    Some(acc)
}

impl RepeatedTrial {
    pub fn new(base: DecoherenceFunctional, repetitions: usize) -> Result<Self> {
        if repetitions == 0 {
            return Err(Error::NoRepetitions);
        }
        Ok(RepeatedTrial { base, repetitions })
    }

    pub fn base(&self) -> &DecoherenceFunctional {
        &self.base
    }

    pub fn repetitions(&self) -> usize {
        self.repetitions
    }

    /// `Π_k μ(A_k)`.
    pub fn product_event_measure(&self, factors: &[Event]) -> Result<f64> {
        if factors.len() != self.repetitions {
            return Err(Error::FactorCount {
                expected: self.repetitions,
                got: factors.len(),
            });
        }
        factors.iter().map(|a| self.base.mu(a)).product()
    }

    /// Fails with [`Error::InterferingCells`] if two different cells have a
    /// nonzero cross term, since the additive total would then be wrong.
    pub fn check_interference_free(&self, cells: &Partition) -> Result<()> {
        self.base.space().ensure_same(cells.space())?;
        let tol = self.base.tolerance();
        let blocks = cells.blocks();
        for (i, a) in blocks.iter().enumerate() {
            for (j, b) in blocks.iter().enumerate().skip(i + 1) {
                for h in a.indices() {
                    for k in b.indices() {
                        let m = self
                            .base
                            .entry(h, k)
                            .norm()
                            .max(self.base.entry(k, h).norm());
                        if m > tol {
                            return Err(Error::InterferingCells {
                                first: i,
                                second: j,
                                magnitude: m,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn cell_measures(&self, cells: &Partition) -> Result<Vec<f64>> {
        self.check_interference_free(cells)?;
        cells.blocks().iter().map(|c| self.base.mu(c)).collect()
    }

    fn occupation_with(&self, cell_mu: &[f64], counts: &[usize]) -> Result<OccupationMeasure> {
        if counts.len() != cell_mu.len() {
            return Err(Error::InvalidCounts(format!(
                "{} counts for {} cells",
                counts.len(),
                cell_mu.len()
            )));
        }
        let total_count: usize = counts.iter().sum();
        if total_count != self.repetitions {
            return Err(Error::InvalidCounts(format!(
                "counts sum to {total_count}, expected {}",
                self.repetitions
            )));
        }
        let arrangements = multinomial(counts).ok_or(Error::CountOverflow)?;
        let per_arrangement: f64 = cell_mu
            .iter()
            .zip(counts)
            .map(|(&mu, &c)| mu.powi(c as i32))
            .product();
        Ok(OccupationMeasure {
            arrangements,
            per_arrangement,
            total: arrangements as f64 * per_arrangement,
        })
    }

    /// `multinomial(N; c) · Π_j μ(cell_j)^{c_j}`.
    pub fn occupation_event_measure(&self, event: &OccupationEvent) -> Result<OccupationMeasure> {
        let cell_mu = self.cell_measures(&event.cells)?;
        self.occupation_with(&cell_mu, &event.counts)
    }

    pub fn distribution_measure(&self, event: &DistributionEvent) -> Result<DistributionMeasure> {
        let cell_mu = self.cell_measures(&event.cells)?;
        let mut vectors = event.count_vectors.clone();
        vectors.sort();
        if vectors.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidCounts("repeated count vector".into()));
        }
        let parts = event
            .count_vectors
            .iter()
            .map(|c| self.occupation_with(&cell_mu, c))
            .collect::<Result<Vec<_>>>()?;
        let arrangements = parts
            .iter()
            .try_fold(0u128, |acc, p| acc.checked_add(p.arrangements))
            .ok_or(Error::CountOverflow)?;
        let total = parts.iter().map(|p| p.total).sum();
        Ok(DistributionMeasure {
            parts,
            arrangements,
            total,
        })
    }
}

impl MeasureSource<ProductEvent> for RepeatedTrial {
    fn measure_of(&self, event: &ProductEvent) -> Result<f64> {
        self.product_event_measure(&event.0)
    }
}

impl MeasureSource<OccupationEvent> for RepeatedTrial {
    fn measure_of(&self, event: &OccupationEvent) -> Result<f64> {
        Ok(self.occupation_event_measure(event)?.total)
    }
}

impl MeasureSource<DistributionEvent> for RepeatedTrial {
    fn measure_of(&self, event: &DistributionEvent) -> Result<f64> {
        Ok(self.distribution_measure(event)?.total)
    }
}

fn check_bias(bias: f64) -> Result<()> {
    if bias > 0.0 && bias < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidBias(bias))
    }
}

/// `Σ_{k in range} C(N,k) p^k (1−p)^{N−k}`, without materializing sequences.
pub fn binomial_tail_measure(
    tosses: usize,
    bias: f64,
    heads: impl RangeBounds<usize>,
) -> Result<f64> {
    check_bias(bias)?;
    let lo = match heads.start_bound() {
        Bound::Included(&k) => k,
        Bound::Excluded(&k) => k + 1,
        Bound::Unbounded => 0,
    };
    let hi = match heads.end_bound() {
        Bound::Included(&k) => k.min(tosses),
        Bound::Excluded(&0) => return Ok(0.0),
        Bound::Excluded(&k) => (k - 1).min(tosses),
        Bound::Unbounded => tosses,
    };
    if lo > hi {
        return Ok(0.0);
    }
    let (ln_p, ln_q) = (bias.ln(), (1.0 - bias).ln());
    let ln_fact: Vec<f64> = std::iter::once(0.0)
        .chain((1..=tosses).scan(0.0, |acc, i| {
            *acc += (i as f64).ln();
            Some(*acc)
        }))
        .collect();
    let term = |k: usize| match binomial(tosses, k) {
        // Exact coefficients keep dyadic cases like 2^-N exact.
        Some(c) if c < 1 << 53 => {
            c as f64 * bias.powi(k as i32) * (1.0 - bias).powi((tosses - k) as i32)
        }
        _ => (ln_fact[tosses] - ln_fact[k] - ln_fact[tosses - k]
            + k as f64 * ln_p
            + (tosses - k) as f64 * ln_q)
            .exp(),
    };
    Ok((lo..=hi).map(term).sum())
}

/// `N` tosses of a coin with heads probability `bias`, over the `2^N`
/// sequences labelled like `"hth"` (first toss first, `h < t`).
#[derive(Debug, Clone)]
pub struct CoinModel {
    tosses: usize,
    bias: f64,
    space: HistorySpace,
}

impl CoinModel {
    /// Largest toss count whose sequence space is built explicitly.
    pub const MAX_TOSSES: usize = 16;

    pub fn new(tosses: usize, bias: f64) -> Result<Self> {
        check_bias(bias)?;
        if tosses == 0 {
            return Err(Error::NoRepetitions);
        }
        if tosses > Self::MAX_TOSSES {
            return Err(Error::CapExceeded {
                what: "coin sequence space",
                size: tosses,
                cap: Self::MAX_TOSSES,
            });
        }
        let labels = (0..1usize << tosses).map(|i| {
            (0..tosses)
                .map(|k| {
                    if i >> (tosses - 1 - k) & 1 == 1 {
                        't'
                    } else {
                        'h'
                    }
                })
                .collect::<String>()
        });
        Ok(CoinModel {
            tosses,
            bias,
            space: HistorySpace::new(labels)?,
        })
    }

    pub fn fair(tosses: usize) -> Result<Self> {
        Self::new(tosses, 0.5)
    }

    pub fn tosses(&self) -> usize {
        self.tosses
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn space(&self) -> &HistorySpace {
        &self.space
    }

    fn heads_in(&self, sequence: usize) -> usize {
        self.tosses - sequence.count_ones() as usize
    }

    pub fn sequence_probability(&self, sequence: usize) -> f64 {
        let heads = self.heads_in(sequence);
        self.bias.powi(heads as i32) * (1.0 - self.bias).powi((self.tosses - heads) as i32)
    }

    /// Diagonal decoherence functional; `2^N` must fit the exhaustive cap.
    pub fn decoherence(&self, limits: &Limits) -> Result<DecoherenceFunctional> {
        limits.check_exhaustive("coin decoherence functional", self.space.len())?;
        let weights: Vec<f64> = (0..self.space.len())
            .map(|s| self.sequence_probability(s))
            .collect();
        DecoherenceFunctional::diagonal(&self.space, &weights)
    }

    pub fn sequence(&self, label: &str) -> Result<Event> {
        Event::from_labels(&self.space, [label])
    }

    pub fn all_heads(&self) -> Event {
        Event::singleton(&self.space, 0).expect("space is nonempty")
    }

    /// Every sequence as its own piece.
    pub fn singletons(&self) -> Vec<Event> {
        (0..self.space.len())
            .map(|i| Event::singleton(&self.space, i).expect("index below n"))
            .collect()
    }

    /// Sequences whose heads count lies in `heads`.
    pub fn heads_count_event(&self, heads: impl RangeBounds<usize>) -> Event {
        let members = (0..self.space.len()).filter(|&s| heads.contains(&self.heads_in(s)));
        Event::from_indices(&self.space, members).expect("indices below n")
    }

    /// The question "did toss `toss` (0-based) land heads or tails?".
    pub fn toss_question(&self, toss: usize) -> Result<Partition> {
        if toss >= self.tosses {
            return Err(Error::IndexOutOfRange {
                index: toss,
                n: self.tosses,
            });
        }
        let shift = self.tosses - 1 - toss;
        let (tails, heads): (Vec<usize>, Vec<usize>) =
            (0..self.space.len()).partition(|s| s >> shift & 1 == 1);
        Partition::new(
            &self.space,
            vec![
                Event::from_indices(&self.space, heads)?,
                Event::from_indices(&self.space, tails)?,
            ],
        )
    }
}

impl MeasureSource<Event> for CoinModel {
    fn measure_of(&self, event: &Event) -> Result<f64> {
        self.space.ensure_same(event.space())?;
        Ok(event.indices().map(|s| self.sequence_probability(s)).sum())
    }
}

/// Screen slots in cell order: bright `0, +2, −2`, then dark `+1, −1`.
pub const DOUBLE_SLIT_SLOTS: [&str; 5] = ["0", "+2", "-2", "+1", "-1"];

/// Ten histories `(s_j, i)`, labelled `"s1:0"`, `"s2:+2"`, … in slot order.
///
/// Each history has measure 0.1; two histories are additive unless they hit
/// the same slot, where the pair has measure 0.3 on bright slots and 0.05 on
/// dark ones. Hence the same-slot cross term is `+0.05` (bright) or
/// `−0.075` (dark), from `μ(A⊔B) = μ(A) + μ(B) + 2·Re D(A,B)`.
pub fn double_slit_model() -> DecoherenceFunctional {
    let labels: Vec<String> = DOUBLE_SLIT_SLOTS
        .iter()
        .flat_map(|slot| ["s1", "s2"].map(|slit| format!("{slit}:{slot}")))
        .collect();
    let space = HistorySpace::new(labels).expect("labels are distinct");
    let n = space.len();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let value = if i == j {
                        0.1
                    } else if i / 2 == j / 2 {
                        if i / 2 < 3 {
                            0.05
                        } else {
                            -0.075
                        }
                    } else {
                        0.0
                    };
                    Complex64::new(value, 0.0)
                })
                .collect()
        })
        .collect();
    DecoherenceFunctional::new(&space, rows).expect("square matrix")
}

/// The five-slot double slit with its slot cells and the standard questions.
#[derive(Debug, Clone)]
pub struct DoubleSlit {
    pub model: DecoherenceFunctional,
    /// One cell per slot (both slits), in [`DOUBLE_SLIT_SLOTS`] order.
    pub slots: Partition,
}

impl Default for DoubleSlit {
    fn default() -> Self {
        Self::new()
    }
}

impl DoubleSlit {
    pub fn new() -> Self {
        let model = double_slit_model();
        let space = model.space().clone();
        let blocks = (0..5)
            .map(|k| Event::from_indices(&space, [2 * k, 2 * k + 1]).expect("indices below n"))
            .collect();
        let slots = Partition::new(&space, blocks).expect("slot cells partition the space");
        DoubleSlit { model, slots }
    }

    pub fn trial(&self, particles: usize) -> Result<RepeatedTrial> {
        RepeatedTrial::new(self.model.clone(), particles)
    }

    /// Equal occupancy of all five slots; `particles` must be a multiple of 5.
    pub fn uniform(&self, particles: usize) -> Result<OccupationEvent> {
        if !particles.is_multiple_of(5) {
            return Err(Error::InvalidCounts(format!(
                "{particles} particles cannot be spread evenly over 5 slots"
            )));
        }
        OccupationEvent::new(self.slots.clone(), vec![particles / 5; 5])
    }

    /// Ten particles: three on each bright slot and one on either dark slot.
    pub fn fringe_pattern(&self) -> DistributionEvent {
        DistributionEvent {
            cells: self.slots.clone(),
            count_vectors: vec![vec![3, 3, 3, 1, 0], vec![3, 3, 3, 0, 1]],
        }
    }
}
