//! Approximate preclusion on two tosses gives co-events that answer "no" to
//! both outcomes of a toss.

use anhomomorphic::{enumerate_appc, find_boolean_anomalies, CoinModel, Limits};

fn main() -> anhomomorphic::Result<()> {
    let limits = Limits::default();
    let coin = CoinModel::fair(2)?;
    let d = coin.decoherence(&limits)?;
    let appc = enumerate_appc(&d, 0.3, &limits)?;
    println!("APPC duals at eps 0.3:");
    for c in &appc {
        println!("  {c}");
    }
    for toss in 0..2 {
        let q = coin.toss_question(toss)?;
        let bad = find_boolean_anomalies(&appc, &q)?;
        println!("question {q}:");
        for c in bad {
            let [h, t] = [&q.blocks()[0], &q.blocks()[1]].map(|b| c.evaluate(b).unwrap());
            println!("  {c} says heads={h} tails={t}");
        }
    }
    Ok(())
}
