//! Records the drift/mitigation reference values the acceptance suite
//! checks against. Run with `cargo run --example oracle_run -- --write`.

use scd_core::harness::{Experiment, ExperimentConfig};
use scd_core::{language_consistency, AttractorBias, LanguageId, Method};

pub const GENERATIONS: usize = 200;

fn lc(lambda: f64, method: Method) -> f64 {
    let cfg = ExperimentConfig {
        targets: vec![LanguageId::Zh],
        contexts: vec![LanguageId::En],
        methods: vec![method],
        lambda: AttractorBias::new(lambda).unwrap(),
        n: Some(GENERATIONS),
        ..Default::default()
    };
    let recs = Experiment::new(cfg).unwrap().run().unwrap();
    language_consistency(&recs).unwrap()
}

fn main() {
    let identity = lc(0.5, Method::None);
    let scd = lc(0.5, Method::Scd);
    let sweep: Vec<f64> = [0.0, 0.25, 0.5, 0.75].iter().map(|&l| lc(l, Method::None)).collect();
    // Half the observed gap, rounded down to a percentage point.
    let margin = ((scd - identity) * 50.0).floor() / 100.0;
    let out = serde_json::json!({
        "target": "ZH",
        "context": "EN",
        "lambda": 0.5,
        "generations": GENERATIONS,
        "seed": 0,
        "lc_identity": identity,
        "lc_scd_demo": scd,
        "margin": margin,
        "lc_identity_by_lambda": {"0": sweep[0], "0.25": sweep[1], "0.5": sweep[2], "0.75": sweep[3]},
    });
    let body = serde_json::to_string_pretty(&out).unwrap() + "\n";
    print!("{body}");
    if std::env::args().any(|a| a == "--write") {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/oracle_run.json");
        std::fs::write(path, body).unwrap();
    }
}
