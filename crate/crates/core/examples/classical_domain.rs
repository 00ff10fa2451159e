//! Finest partition on which a set of co-events acts classically.

use anhomomorphic::{
    classical_domain, is_homomorphism_on, CoEvent, Event, HistorySpace, Partition,
};

fn main() -> anhomomorphic::Result<()> {
    let space = HistorySpace::new(["a", "b", "c", "d", "e"])?;
    let coevents = [["a", "b"].as_slice(), &["b", "c"], &["e"]]
        .iter()
        .map(|ls| CoEvent::new(Event::from_labels(&space, ls.iter().copied())?))
        .collect::<anhomomorphic::Result<Vec<_>>>()?;

    let domain = classical_domain(&coevents)?;
    println!("domain: {}", domain.partition());

    let finer = Partition::from_labels(&space, &[vec!["a", "b"], vec!["c"], vec!["d"], vec!["e"]])?;
    for c in &coevents {
        println!(
            "{c} homomorphic on {finer}: {}",
            is_homomorphism_on(c, &finer)?
        );
    }
    Ok(())
}
