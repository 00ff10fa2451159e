//! Built-in worked examples. Models are constructed in code so the numbers
//! reproduce with no input files.

use num_complex::Complex64;
use serde_json::{json, Value};

use super::report::ModelSummary;
use super::{full_validation, labels, validation_value, Failure};
use crate::algebra::{enumerate_events, Event, HistorySpace, Partition};
use crate::coevent::{classical_domain, enumerate_appc, find_boolean_anomalies, maximal_null_sets};
use crate::cournot::{predict, strong_cournot_cover, MeasureSource};
use crate::measure::DecoherenceFunctional;
use crate::trials::{binomial_tail_measure, CoinModel, DoubleSlit, DOUBLE_SLIT_SLOTS};
use crate::Limits;

pub(super) struct DemoOutput {
    pub model: ModelSummary,
    pub results: Value,
    pub warnings: Vec<String>,
}

pub(crate) fn three_slit_model() -> DecoherenceFunctional {
    let space = HistorySpace::new(["A", "B", "C"]).expect("distinct labels");
    let amps = [1.0, -1.0, 1.0].map(|re| Complex64::new(re, 0.0));
    DecoherenceFunctional::from_amplitudes(&space, &amps).expect("amplitudes sum to 1")
}

pub(super) fn three_slit(
    epsilon: Option<f64>,
    tolerance: f64,
    limits: &Limits,
) -> Result<DemoOutput, Failure> {
    let d = three_slit_model().with_tolerance(tolerance);
    let space = d.space().clone();
    let mut warnings = Vec::new();
    let validation = full_validation(&d, limits, &mut warnings);

    let measures = enumerate_events(&space, limits)?
        .map(|e| Ok(json!({ "event": labels(&e), "measure": d.mu(&e)? })))
        .collect::<Result<Vec<_>, crate::Error>>()?;
    let nulls = maximal_null_sets(&d, 0.0, limits)?;
    let ppc = nulls.primitive_coevents()?;
    let domain = classical_domain(&ppc)?;
    let cover = strong_cournot_cover(&d, &space, 0.0, tolerance, &nulls.maximal_null_sets)?;
    let singletons = Partition::discrete(&space);
    let anomalies = find_boolean_anomalies(&ppc, &singletons)?;
    let eps = epsilon.unwrap_or(1e-3);
    let appc = enumerate_appc(&d, eps, limits)?;

    let single = |l: &str| Event::from_labels(&space, [l]).expect("known label");
    let pair = |a: &str, b: &str| Event::from_labels(&space, [a, b]).expect("known labels");
    let mu = |e: &Event| d.mu(e);
    let rhs = mu(&pair("A", "B"))? + mu(&pair("A", "C"))? + mu(&pair("B", "C"))?
        - mu(&single("A"))?
        - mu(&single("B"))?
        - mu(&single("C"))?;

    Ok(DemoOutput {
        model: ModelSummary::builtin("three-slit", space.labels().to_vec()),
        results: json!({
            "validation": validation_value(&validation),
            "measures": measures,
            "maximal_null_sets": nulls.maximal_null_sets.iter().map(labels).collect::<Vec<_>>(),
            "duals": ppc.iter().map(|c| labels(c.dual())).collect::<Vec<_>>(),
            "classical_domain": domain.partition().blocks().iter().map(labels).collect::<Vec<_>>(),
            "null_cover": {
                "pieces": cover.pieces.iter().map(labels).collect::<Vec<_>>(),
                "covered": cover.covered,
            },
            "sum_rule_singletons": { "lhs": mu(&Event::full(&space))?, "rhs": rhs },
            "anomalies_on_singleton_question": anomalies.iter().map(|c| labels(c.dual())).collect::<Vec<_>>(),
            "appc": {
                "epsilon": eps,
                "duals": appc.iter().map(|c| labels(c.dual())).collect::<Vec<_>>(),
            },
        }),
        warnings,
    })
}

pub(super) fn double_slit(
    particles: Option<usize>,
    epsilon: Option<f64>,
) -> Result<DemoOutput, Failure> {
    let particles = particles.unwrap_or(10);
    if particles != 10 {
        return Err(Failure::Usage(
            "the double-slit demo is defined for --n 10 (three per bright slot, one dark)".into(),
        ));
    }
    let eps = epsilon.unwrap_or(1e-3);
    let ds = DoubleSlit::new();
    let trial = ds.trial(particles)?;

    let uniform_event = ds.uniform(particles)?;
    let uniform = trial.occupation_event_measure(&uniform_event)?;
    let uniform_verdict = predict(&trial, uniform_event.clone(), eps)?;

    let pattern_event = ds.fringe_pattern();
    let pattern = trial.distribution_measure(&pattern_event)?;
    let pattern_verdict = predict(&trial, pattern_event.clone(), eps)?;

    let warnings = vec![format!(
        "fringe-pattern arrangement count is {} ({} per dark-slot choice, from 10!/(3!3!3!1!)); \
         the figure 4800 sometimes quoted for this example does not match the multinomial count; \
         the verdict is the same either way",
        pattern.arrangements, pattern.parts[0].arrangements
    )];

    Ok(DemoOutput {
        model: ModelSummary::builtin("double-slit", ds.model.space().labels().to_vec()),
        results: json!({
            "particles": particles,
            "epsilon": eps,
            "slots": DOUBLE_SLIT_SLOTS,
            "slot_measures": ds.slots.blocks().iter().map(|b| ds.model.mu(b)).collect::<Result<Vec<_>, _>>()?,
            "uniform": {
                "counts": uniform_event.counts,
                "arrangements": uniform.arrangements as u64,
                "per_arrangement": uniform.per_arrangement,
                "measure": uniform_verdict.measure,
                "outcome": uniform_verdict.outcome.to_string(),
            },
            "pattern": {
                "count_vectors": pattern_event.count_vectors,
                "arrangements": pattern.arrangements as u64,
                "arrangements_per_vector": pattern.parts.iter().map(|p| p.arrangements as u64).collect::<Vec<_>>(),
                "per_arrangement": pattern.parts[0].per_arrangement,
                "measure": pattern_verdict.measure,
                "outcome": pattern_verdict.outcome.to_string(),
            },
        }),
        warnings,
    })
}

pub(super) fn coin(
    tosses: Option<usize>,
    epsilon: Option<f64>,
    limits: &Limits,
) -> Result<DemoOutput, Failure> {
    let tosses = tosses.unwrap_or(10);
    let eps = epsilon.unwrap_or(1e-3);
    let coin = CoinModel::fair(tosses)?;

    let all_heads = predict(&coin, coin.all_heads(), eps)?;
    let max_heads = tosses * 6 / 10;
    let tail = binomial_tail_measure(tosses, 0.5, ..=max_heads)?;
    let tail_event = coin.heads_count_event(..=max_heads);
    let tail_verdict = predict(&coin, tail_event.clone(), eps)?;
    let cover = strong_cournot_cover(
        &coin,
        coin.space(),
        eps,
        crate::DEFAULT_TOLERANCE,
        &coin.singletons(),
    )?;

    // Approximate preclusion on two tosses: duals spanning both outcomes of
    // the second toss answer "no" to heads and to tails.
    let appc_eps = 0.3;
    let two = CoinModel::fair(2)?;
    let two_d = two.decoherence(limits)?;
    let appc = enumerate_appc(&two_d, appc_eps, limits)?;
    let first_q = two.toss_question(0)?;
    let second_q = two.toss_question(1)?;
    let first_anomalies = find_boolean_anomalies(&appc, &first_q)?;
    let second_anomalies = find_boolean_anomalies(&appc, &second_q)?;
    let duals = |cs: &[crate::CoEvent]| cs.iter().map(|c| labels(c.dual())).collect::<Vec<_>>();

    Ok(DemoOutput {
        model: ModelSummary::builtin(&format!("fair-coin-{tosses}"), Vec::new()),
        results: json!({
            "tosses": tosses,
            "epsilon": eps,
            "sequences": coin.space().len(),
            "sequence_measure": coin.measure_of(&coin.all_heads())?,
            "all_heads": {
                "measure": all_heads.measure,
                "outcome": all_heads.outcome.to_string(),
            },
            "heads_at_most_60_percent": {
                "max_heads": max_heads,
                "measure": tail,
                "measure_by_summation": tail_verdict.measure,
                "outcome": tail_verdict.outcome.to_string(),
            },
            "strong_cover": {
                "candidates": coin.space().len(),
                "below_threshold": cover.pieces.len(),
                "covered": cover.covered,
            },
            "appc_two_tosses": {
                "epsilon": appc_eps,
                "duals": duals(&appc),
                "first_toss_question": first_q.blocks().iter().map(labels).collect::<Vec<_>>(),
                "first_toss_anomalies": duals(&first_anomalies),
                "second_toss_question": second_q.blocks().iter().map(labels).collect::<Vec<_>>(),
                "second_toss_anomalies": duals(&second_anomalies),
            },
        }),
        warnings: Vec::new(),
    })
}
