//! Decoherence functionals and the quantum measure they induce.
//!
//! A decoherence functional is stored as its `n × n` matrix on pairs of
//! histories and extended to events bilinearly:
//! `D(A, B) = Σ_{h∈A, h'∈B} D(h, h')`. The quantum measure is the diagonal,
//! `μ(A) = D(A, A)`. Weak positivity (`μ(A) ≥ 0` for every event) is the
//! enforced positivity axiom; the matrix need not be positive semidefinite.

use num_complex::Complex64;

use crate::algebra::{Event, HistorySpace};
use crate::error::{Error, Result};
use crate::{Limits, DEFAULT_TOLERANCE};

#[derive(Debug, Clone)]
pub struct DecoherenceFunctional {
    space: HistorySpace,
    /// Row-major `n × n`.
    matrix: Vec<Complex64>,
    tolerance: f64,
}

impl DecoherenceFunctional {
    /// Wraps a matrix given as rows. Only the shape is checked here; the
    /// axioms are checked by [`validate_decoherence`].
    pub fn new(space: &HistorySpace, rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = space.len();
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                rows: rows.len(),
                cols: rows.first().map_or(0, Vec::len),
                n,
            });
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                rows: n,
                cols: bad.len(),
                n,
            });
        }
        Ok(DecoherenceFunctional {
            space: space.clone(),
            matrix: rows.into_iter().flatten().collect(),
            tolerance: DEFAULT_TOLERANCE,
        })
    }

    pub fn from_parts(space: &HistorySpace, re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self> {
        if re.len() != im.len() || re.iter().zip(im).any(|(r, i)| r.len() != i.len()) {
            return Err(Error::DimensionMismatch {
                rows: im.len(),
                cols: im.first().map_or(0, Vec::len),
                n: space.len(),
            });
        }
        let rows = re
            .iter()
            .zip(im)
            .map(|(r, i)| {
                r.iter()
                    .zip(i)
                    .map(|(&a, &b)| Complex64::new(a, b))
                    .collect()
            })
            .collect();
        Self::new(space, rows)
    }

    /// Classical (interference-free) model with the given probabilities.
    pub fn diagonal(space: &HistorySpace, weights: &[f64]) -> Result<Self> {
        let n = space.len();
        if weights.len() != n {
            return Err(Error::DimensionMismatch {
                rows: weights.len(),
                cols: weights.len(),
                n,
            });
        }
        let mut matrix = vec![Complex64::new(0.0, 0.0); n * n];
        for (i, &w) in weights.iter().enumerate() {
            matrix[i * n + i] = Complex64::new(w, 0.0);
        }
        Ok(DecoherenceFunctional {
            space: space.clone(),
            matrix,
            tolerance: DEFAULT_TOLERANCE,
        })
    }

    /// Rank-one functional `D(i, j) = a_i · conj(a_j)`, so that
    /// `μ(A) = |Σ_{h∈A} a_h|²`. Requires `|Σ a|² = 1`.
    pub fn from_amplitudes(space: &HistorySpace, amplitudes: &[Complex64]) -> Result<Self> {
        let n = space.len();
        if amplitudes.len() != n {
            return Err(Error::DimensionMismatch {
                rows: amplitudes.len(),
                cols: 1,
                n,
            });
        }
        let total: Complex64 = amplitudes.iter().sum();
        let norm = total.norm_sqr();
        if (norm - 1.0).abs() > DEFAULT_TOLERANCE {
            return Err(Error::UnnormalizedAmplitudes(norm));
        }
        let matrix = amplitudes
            .iter()
            .flat_map(|ai| amplitudes.iter().map(move |aj| ai * aj.conj()))
            .collect();
        Ok(DecoherenceFunctional {
            space: space.clone(),
            matrix,
            tolerance: DEFAULT_TOLERANCE,
        })
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn space(&self) -> &HistorySpace {
        &self.space
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[i * self.space.len() + j]
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.matrix
            .chunks(self.space.len())
            .map(<[Complex64]>::to_vec)
            .collect()
    }

    /// `D(A, B)` by bilinear extension.
    pub fn pair(&self, a: &Event, b: &Event) -> Result<Complex64> {
        self.space.ensure_same(a.space())?;
        self.space.ensure_same(b.space())?;
        let cols: Vec<usize> = b.indices().collect();
        Ok(a.indices()
            .map(|i| cols.iter().map(|&j| self.entry(i, j)).sum::<Complex64>())
            .sum())
    }

    /// Quantum measure `μ(A) = D(A, A)`.
    pub fn mu(&self, event: &Event) -> Result<f64> {
        let value = self.pair(event, event)?;
        if value.im.abs() > self.tolerance {
            return Err(Error::ImaginaryResidue {
                event: event.to_string(),
                residue: value.im,
            });
        }
        Ok(value.re)
    }

    /// `D(A, A)` for every event, indexed by bit mask, in `O(n·2^n)`.
    fn diagonal_values(&self, limits: &Limits) -> Result<Vec<Complex64>> {
        let n = self.space.len();
        limits.check_exhaustive("measure table", n)?;
        let mut values = vec![Complex64::new(0.0, 0.0); 1 << n];
        for mask in 1u64..(1u64 << n) {
            let i = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let mut cross = self.entry(i, i);
            let mut bits = rest;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                cross += self.entry(i, j) + self.entry(j, i);
                bits &= bits - 1;
            }
            values[mask as usize] = values[rest as usize] + cross;
        }
        Ok(values)
    }

    /// Measures of all `2^n` events.
    pub fn measure_table(&self, limits: &Limits) -> Result<MeasureTable> {
        let values = self.diagonal_values(limits)?;
        let mut real = Vec::with_capacity(values.len());
        for (mask, v) in values.iter().enumerate() {
            if v.im.abs() > self.tolerance {
                return Err(Error::ImaginaryResidue {
                    event: Event::from_mask(&self.space, mask as u64).to_string(),
                    residue: v.im,
                });
            }
            real.push(v.re);
        }
        Ok(MeasureTable {
            space: self.space.clone(),
            values: real,
            tolerance: self.tolerance,
        })
    }
}

/// The quantum measure of every event of a small space.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureTable {
    space: HistorySpace,
    /// Indexed by event bit mask.
    values: Vec<f64>,
    tolerance: f64,
}

impl MeasureTable {
    /// `values[mask]` is the measure of the event with that bit mask.
    pub fn new(space: &HistorySpace, values: Vec<f64>, tolerance: f64) -> Result<Self> {
        let n = space.len();
        if n > Limits::MAX_CAP {
            return Err(Error::CapExceeded {
                what: "measure table",
                size: n,
                cap: Limits::MAX_CAP,
            });
        }
        if values.len() != 1 << n {
            return Err(Error::InvalidMeasureTable(format!(
                "{} values for {} events",
                values.len(),
                1u64 << n
            )));
        }
        if values[0].abs() > tolerance {
            return Err(Error::InvalidMeasureTable(format!(
                "measure of the empty event is {}",
                values[0]
            )));
        }
        let total = values[values.len() - 1];
        if (total - 1.0).abs() > tolerance {
            return Err(Error::InvalidMeasureTable(format!(
                "measure of the full space is {total}"
            )));
        }
        if let Some((mask, v)) = values.iter().enumerate().find(|(_, v)| **v < -tolerance) {
            return Err(Error::InvalidMeasureTable(format!(
                "negative measure {v} on {}",
                Event::from_mask(space, mask as u64)
            )));
        }
        Ok(MeasureTable {
            space: space.clone(),
            values,
            tolerance,
        })
    }

    pub fn from_fn(
        space: &HistorySpace,
        limits: &Limits,
        f: impl Fn(&Event) -> f64,
    ) -> Result<Self> {
        limits.check_exhaustive("measure table", space.len())?;
        let values = (0u64..(1u64 << space.len()))
            .map(|mask| f(&Event::from_mask(space, mask)))
            .collect();
        Self::new(space, values, DEFAULT_TOLERANCE)
    }

    pub fn space(&self) -> &HistorySpace {
        &self.space
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn get(&self, event: &Event) -> Result<f64> {
        self.space.ensure_same(event.space())?;
        let mask = event.mask().expect("table spaces fit a mask");
        Ok(self.values[mask as usize])
    }

    pub(crate) fn by_mask(&self, mask: u64) -> f64 {
        self.values[mask as usize]
    }

    pub(crate) fn values(&self) -> &[f64] {
        &self.values
    }

    /// Copy with one entry replaced, revalidated.
    pub fn with_value(&self, event: &Event, value: f64) -> Result<Self> {
        self.space.ensure_same(event.space())?;
        let mut values = self.values.clone();
        values[event.mask().expect("table spaces fit a mask") as usize] = value;
        Self::new(&self.space, values, self.tolerance)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Largest observed deviation from the axiom.
    pub violation: f64,
    /// True when only a subset of the required cases was examined.
    pub partial: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }

    fn push(&mut self, name: &'static str, violation: f64, tolerance: f64, partial: bool) {
        self.checks.push(Check {
            name,
            passed: violation <= tolerance,
            violation,
            partial,
        });
    }
}

/// Checks hermiticity, normalization and weak positivity.
///
/// Positivity is checked on every event when `n <= limits.cap`; otherwise
/// only singletons and Ω are examined and the check is marked partial.
pub fn validate_decoherence(d: &DecoherenceFunctional, limits: &Limits) -> ValidationReport {
    let n = d.space().len();
    let tol = d.tolerance();
    let mut report = ValidationReport::default();

    let mut hermiticity = 0.0f64;
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            hermiticity = hermiticity.max((d.entry(i, j) - d.entry(j, i).conj()).norm());
            total += d.entry(i, j);
        }
    }
    report.push("hermiticity", hermiticity, tol, false);
    report.push("normalization", (total - 1.0).norm(), tol, false);

    let (lowest, partial) = match d.diagonal_values(limits) {
        Ok(values) => (
            values.iter().map(|v| v.re).fold(f64::INFINITY, f64::min),
            false,
        ),
        Err(_) => {
            let singles = (0..n).map(|i| d.entry(i, i).re);
            (singles.fold(total.re, f64::min), true)
        }
    };
    report.push("weak_positivity", (-lowest).max(0.0), tol, partial);
    report
}

/// Checks `μ(A⊔B⊔C) = μ(A⊔B)+μ(A⊔C)+μ(B⊔C)−μ(A)−μ(B)−μ(C)` on every
/// triple of pairwise-disjoint events of the functional's measure.
pub fn check_sum_rule(d: &DecoherenceFunctional, limits: &Limits) -> Result<ValidationReport> {
    limits_check_triple(d.space().len(), limits)?;
    check_sum_rule_table(&d.measure_table(limits)?, limits)
}

fn limits_check_triple(n: usize, limits: &Limits) -> Result<()> {
    if n > limits.triple_cap {
        return Err(Error::CapExceeded {
            what: "sum-rule triple scan",
            size: n,
            cap: limits.triple_cap,
        });
    }
    Ok(())
}

/// Sum-rule check on an explicit table.
pub fn check_sum_rule_table(table: &MeasureTable, limits: &Limits) -> Result<ValidationReport> {
    let n = table.space().len();
    limits_check_triple(n, limits)?;
    let full = table.space().full_mask();
    let mut worst = 0.0f64;
    for a in 0..=full {
        let free_a = full & !a;
        let mut b = free_a;
        loop {
            if b >= a {
                let free_ab = free_a & !b;
                let mut c = free_ab;
                loop {
                    if c >= b {
                        let lhs = table.by_mask(a | b | c);
                        let rhs =
                            table.by_mask(a | b) + table.by_mask(a | c) + table.by_mask(b | c)
                                - table.by_mask(a)
                                - table.by_mask(b)
                                - table.by_mask(c);
                        worst = worst.max((lhs - rhs).abs());
                    }
                    if c == 0 {
                        break;
                    }
                    c = (c - 1) & free_ab;
                }
            }
            if b == 0 {
                break;
            }
            b = (b - 1) & free_a;
        }
    }
    let mut report = ValidationReport::default();
    report.push("sum_rule", worst, table.tolerance(), false);
    Ok(report)
}

/// Real symmetric decoherence functional reproducing `table`.
///
/// `D(i,i) = μ({h_i})` and `D(i,j) = (μ({h_i,h_j}) − μ({h_i}) − μ({h_j}))/2`.
/// The result is accepted only if its measure matches the table on every
/// event; otherwise no bilinear realization exists and a sum-rule violation
/// is reported with the largest mismatch.
pub fn measure_to_decoherence(
    table: &MeasureTable,
    limits: &Limits,
) -> Result<DecoherenceFunctional> {
    let space = table.space();
    let n = space.len();
    limits.check_exhaustive("measure reconstruction", n)?;
    let single = |i: usize| table.by_mask(1 << i);
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = if i == j {
                        single(i)
                    } else {
                        (table.by_mask(1 << i | 1 << j) - single(i) - single(j)) / 2.0
                    };
                    Complex64::new(v, 0.0)
                })
                .collect()
        })
        .collect();
    let d = DecoherenceFunctional::new(space, rows)?.with_tolerance(table.tolerance());
    let rebuilt = d.diagonal_values(limits)?;
    let violation = rebuilt
        .iter()
        .zip(table.values())
        .map(|(r, v)| (r.re - v).abs())
        .fold(0.0, f64::max);
    if violation > table.tolerance() {
        return Err(Error::SumRuleViolation { violation });
    }
    Ok(d)
}
