//! Ten particles through the discrete double slit: the uniform spread is
//! precluded while the fringe pattern is not.

use anhomomorphic::{predict, DoubleSlit};

fn main() -> anhomomorphic::Result<()> {
    let ds = DoubleSlit::new();
    let trial = ds.trial(10)?;
    let eps = 1e-3;

    let uniform = ds.uniform(10)?;
    let m = trial.occupation_event_measure(&uniform)?;
    let v = predict(&trial, uniform.clone(), eps)?;
    println!(
        "uniform {:?}: {} arrangements x {:.3e} = {:.4e} -> {}",
        uniform.counts, m.arrangements, m.per_arrangement, m.total, v.outcome
    );

    let pattern = ds.fringe_pattern();
    let m = trial.distribution_measure(&pattern)?;
    let v = predict(&trial, pattern.clone(), eps)?;
    println!(
        "pattern {:?}: {} arrangements, total {:.4e} -> {}",
        pattern.count_vectors, m.arrangements, m.total, v.outcome
    );
    Ok(())
}
