//! AG-invariants, permitted cycles, bicolourability and the order class.

use gentle_orders::invariants::{bicolorability, classify, forbidden_cycles, forbidden_threads};
use gentle_orders::{GentleOrder, HalfEdgeSystem, InvariantBundle};

fn main() -> gentle_orders::Result<()> {
    let examples = [
        ("torus", HalfEdgeSystem::from_cycles(4, "(1 2 3 4)", "(1 3)(2 4)")?),
        ("mixed", HalfEdgeSystem::from_cycles(3, "(1 2 3)", "(2 3)")?),
        ("two loops", HalfEdgeSystem::from_cycles(2, "(1 2)", "(1 2)")?),
        ("Ã4", HalfEdgeSystem::from_cycles(4, "(1 2 3 4)", "()")?),
    ];
    for (name, h) in examples {
        let order = GentleOrder::from_system(h);
        println!("== {name}");
        println!("{}", InvariantBundle::compute(&order));

        for t in forbidden_threads(&order) {
            let arrows: Vec<&str> = t.arrows.iter().map(|&a| order.arrow_name(a)).collect();
            println!(
                "forbidden thread {} -> {}: {}",
                order.vertex_name(t.start),
                order.vertex_name(t.end),
                arrows.join(" ")
            );
        }
        for c in forbidden_cycles(&order) {
            let arrows: Vec<&str> = c.iter().map(|&a| order.arrow_name(a)).collect();
            println!("forbidden cycle: {}", arrows.join(" "));
        }
        let b = bicolorability(&order)?;
        match (&b.coloring, &b.obstruction) {
            (Some(c), _) => println!("colouring {c:?}"),
            (None, Some(o)) => println!("no colouring: {o:?}"),
            _ => {}
        }
        let cls = classify(&order)?;
        println!("class {} ({:?})\n", cls.class, cls.witness);
    }
    Ok(())
}
