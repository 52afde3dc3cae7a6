//! Run one verification suite from a JSON config and print its report.
//!
//! `cargo run --release --example run_suite -- weyl '{"seed": 3}'`

use moyal::config::RunConfig;
use moyal::suites::{run_suite, Suite};

fn main() -> moyal::Result<()> {
    let mut args = std::env::args().skip(1);
    let suite: Suite = args.next().as_deref().unwrap_or("orbit").parse()?;
    let cfg = match args.next() {
        Some(text) => RunConfig::from_json(&text)?,
        None => RunConfig::default(),
    };
    let report = run_suite(suite, &cfg)?;
    for check in &report.checks {
        println!("{check}");
    }
    println!("{}", if report.pass { "all checks passed" } else { "some checks failed" });
    Ok(())
}
