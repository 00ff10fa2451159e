//! Strong versus weak Cournot on ten fair tosses.

use anhomomorphic::{
    binomial_tail_measure, predict, strong_cournot_cover, CoinModel, DEFAULT_TOLERANCE,
};

fn main() -> anhomomorphic::Result<()> {
    let coin = CoinModel::fair(10)?;

    for eps in [1e-3, 1e-4] {
        let cover = strong_cournot_cover(
            &coin,
            coin.space(),
            eps,
            DEFAULT_TOLERANCE,
            &coin.singletons(),
        )?;
        println!(
            "eps {eps:e}: {} of {} sequences below threshold, cover everything: {}",
            cover.pieces.len(),
            coin.space().len(),
            cover.covered
        );
    }

    // Weak form: only the event named in advance is judged.
    let v = predict(&coin, coin.all_heads(), 1e-3)?;
    println!("all heads: {} -> {}", v.measure, v.outcome);
    let v = predict(&coin, coin.heads_count_event(..=6), 1e-3)?;
    println!("at most six heads: {} -> {}", v.measure, v.outcome);

    // Large N goes through the closed form only.
    println!(
        "2000 tosses, at most 1000 heads: {:.10}",
        binomial_tail_measure(2000, 0.5, ..=1000)?
    );
    Ok(())
}
