//! Minimal hitting sets of a small hypergraph.

use anhomomorphic::{minimal_transversals, Event, HistorySpace};

fn main() -> anhomomorphic::Result<()> {
    let space = HistorySpace::new(["1", "2", "3", "4"])?;
    let edges = [vec!["1", "2"], vec!["2", "3"], vec!["3", "4"]]
        .iter()
        .map(|e| Event::from_labels(&space, e.iter().copied()))
        .collect::<anhomomorphic::Result<Vec<_>>>()?;
    for t in minimal_transversals(&space, &edges)? {
        println!("{t}");
    }
    Ok(())
}
