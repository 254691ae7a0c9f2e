//! Screen two gentle orders for derived equivalence. Differing invariants
//! prove the orders are not derived equivalent; agreement is inconclusive.
//!
//! ```text
//! cargo run --example screen_pair [A B]
//! ```

use gentle_orders::screen::random_relabeling;
use gentle_orders::{screen, GentleOrder, HalfEdgeSystem, Verdict};
use rand::SeedableRng;

fn load(path: &str) -> GentleOrder {
    let text = std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{path}: {e}"));
    GentleOrder::parse_any(&text).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn main() -> gentle_orders::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (a, b) = if let [a, b] = &args[..] {
        (load(a), load(b))
    } else {
        (
            GentleOrder::from_system(HalfEdgeSystem::from_cycles(2, "(1 2)", "(1 2)")?),
            GentleOrder::from_system(HalfEdgeSystem::from_cycles(2, "()", "(1 2)")?),
        )
    };
    let report = screen(&a, &b)?;
    println!("{report}");

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let copy = random_relabeling(&a, &mut rng);
    let same = screen(&a, &copy)?;
    assert_eq!(same.verdict, Verdict::Inconclusive);
    println!("against a relabelled copy of itself: {}", same.verdict);
    std::process::exit(report.verdict.exit_code());
}
