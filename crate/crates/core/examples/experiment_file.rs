//! Load an experiment file and run the same pipeline as `anhom coevents`.

use anhomomorphic::cli::experiment::read_experiment;
use anhomomorphic::{enumerate_appc, validate_decoherence, Limits};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/models/coin-2.json").to_string());
    let file = match read_experiment(path.as_ref()) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    let model = match file.model() {
        Ok(m) => m,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    let limits = Limits::default().with_cap(model.options.cap);
    println!(
        "{}: valid = {}",
        model.name,
        validate_decoherence(&model.decoherence, &limits).passed()
    );
    for (name, event) in &model.events {
        println!(
            "  {name} = {event}, mu = {}",
            model.decoherence.mu(event).unwrap()
        );
    }
    match enumerate_appc(&model.decoherence, model.options.epsilon, &limits) {
        Ok(cs) => cs.iter().for_each(|c| println!("  dual {c}")),
        Err(e) => eprintln!("{e}"),
    }
}
