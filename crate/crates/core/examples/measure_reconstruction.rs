//! Recover a decoherence functional from a measure table, and reject a table
//! that breaks the sum rule.

use anhomomorphic::{
    check_sum_rule_table, measure_to_decoherence, Event, HistorySpace, Limits, MeasureTable,
};

fn main() -> anhomomorphic::Result<()> {
    let space = HistorySpace::new(["A", "B", "C"])?;
    let limits = Limits::default();
    // Indexed by bitmask: {}, A, B, AB, C, AC, BC, ABC.
    let values = vec![0.0, 1.0, 1.0, 0.0, 1.0, 4.0, 0.0, 1.0];
    let table = MeasureTable::new(&space, values, 1e-9)?;

    let d = measure_to_decoherence(&table, &limits)?;
    for row in d.rows() {
        println!("{:?}", row.iter().map(|z| z.re).collect::<Vec<_>>());
    }

    let ab = Event::from_labels(&space, ["A", "B"])?;
    let bumped = table.with_value(&ab, 0.1)?;
    let report = check_sum_rule_table(&bumped, &limits)?;
    println!("perturbed table passes sum rule: {}", report.passed());
    match measure_to_decoherence(&bumped, &limits) {
        Ok(_) => println!("unexpectedly reconstructed"),
        Err(e) => println!("reconstruction refused: {e}"),
    }
    Ok(())
}
