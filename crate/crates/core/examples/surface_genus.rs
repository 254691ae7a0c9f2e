//! Ribbon surface of a gentle order: genus, boundary and punctured faces,
//! and the quiver-versus-graph dictionary.

use gentle_orders::surface::{dictionary_row_check, surface_profile, RibbonData};
use gentle_orders::{randgen, GentleOrder, HalfEdgeSystem};

fn main() -> gentle_orders::Result<()> {
    let torus = HalfEdgeSystem::from_cycles(4, "(1 2 3 4)", "(1 3)(2 4)")?;
    let r = RibbonData::new(&torus);
    println!(
        "torus: V={} E={} (truncated {}) F={} -> χ={}",
        r.vertices().len(),
        r.edges().len(),
        r.truncated_edges(),
        r.faces().len(),
        r.euler()
    );
    println!("{}", surface_profile(&torus)?);
    println!("{}", dictionary_row_check(&GentleOrder::from_system(torus)));

    // genus distribution on random connected orders
    let mut hist = std::collections::BTreeMap::new();
    for h in randgen::corpus(500, 40, 7, true) {
        *hist.entry(surface_profile(&h)?.genus).or_insert(0) += 1;
    }
    println!("genus histogram over 500 random orders: {hist:?}");
    Ok(())
}
