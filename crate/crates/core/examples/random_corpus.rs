//! Seeded random gentle orders and the built-in self-check.

use gentle_orders::randgen::{generate, GenConfig};
use gentle_orders::{selftest, GentleOrder, InvariantBundle};

fn main() -> gentle_orders::Result<()> {
    let cfg = GenConfig::new(12, 2024).connected(true).transition_fraction(0.3);
    let h = generate(&cfg)?;
    println!("{}", h.to_hep());
    let order = GentleOrder::from_system(h);
    println!("{}", order.presentation().to_gq());
    println!("{}\n", InvariantBundle::compute(&order));

    let summary = selftest::run(200, 1, 30);
    println!("selftest: {} cases, {} checks, {} failures", summary.cases, summary.checks, summary.failures.len());
    Ok(())
}
