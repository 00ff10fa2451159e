//! Three-slit toy model: measures, null sets and the single primitive co-event.

use anhomomorphic::{
    classical_domain, enumerate_events, enumerate_ppc, DecoherenceFunctional, HistorySpace, Limits,
};
use num_complex::Complex64;

fn main() -> anhomomorphic::Result<()> {
    let space = HistorySpace::new(["A", "B", "C"])?;
    let amps = [1.0, -1.0, 1.0].map(|re| Complex64::new(re, 0.0));
    let d = DecoherenceFunctional::from_amplitudes(&space, &amps)?;
    let limits = Limits::default();

    for event in enumerate_events(&space, &limits)? {
        println!("mu({event}) = {}", d.mu(&event)?);
    }

    let ppc = enumerate_ppc(&d, &limits)?;
    for c in &ppc {
        println!("primitive co-event with dual {c}");
    }
    println!("classical domain: {}", classical_domain(&ppc)?.partition());
    Ok(())
}
