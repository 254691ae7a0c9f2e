//! Parse a quiver with relations, validate it as a gentle order and convert
//! it to a half-edge system and back.
//!
//! ```text
//! cargo run --example parse_and_validate [FILE.gq|FILE.hep]
//! ```

use gentle_orders::{from_half_edges, Error, GentleOrder, GentlePresentation};

// Two crossing vertices joined by arrows in both directions.
const DOUBLE_KRONECKER: &str = "\
vertex 1
vertex 2
arrow a 1 2
arrow b 2 1
arrow c 1 2
arrow d 2 1
rel b a
rel d c
rel c b
rel a d
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => DOUBLE_KRONECKER.to_owned(),
    };
    let order = GentleOrder::parse_any(&text)?;
    let p = order.presentation();
    println!("{} vertices, {} arrows, {} relations", p.vertex_count(), p.arrow_count(), p.relations().len());
    for v in 0..p.vertex_count() {
        println!("  vertex {:>3}: {:?}", p.vertices()[v], order.classes().kind(v));
    }

    let h = order.system();
    println!("\nhalf-edge system:\n{}", h.to_hep());
    let back = from_half_edges(h);
    println!("back to a quiver:\n{}", back.to_gq());

    // a single arrow is gentle but not a gentle order
    let line = GentlePresentation::parse("vertex 1\nvertex 2\narrow a 1 2\n")?;
    match GentleOrder::new(line) {
        Err(e @ Error::NotGentleOrder { .. }) => println!("rejected: {e}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
