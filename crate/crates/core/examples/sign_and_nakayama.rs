//! Sign data on arrows, the Nakayama permutation data of projectives,
//! Calabi-Yau resolutions of simples at transition vertices and the
//! generators of two-sided ideals attached to kappa-stable vertex sets.

use gentle_orders::invariants::{
    ideal_generators, kappa_orbits, kappa_stable_subsets, nakayama_data, sign_involution, simple_resolution,
};
use gentle_orders::{GentleOrder, HalfEdgeSystem};

fn main() -> gentle_orders::Result<()> {
    let h = HalfEdgeSystem::from_cycles(5, "(1 2 3)(4 5)", "(2 4)")?;
    let order = GentleOrder::from_system(h);
    println!("{}", order.presentation().to_gq());

    for char2 in [false, true] {
        let s = sign_involution(&order, char2);
        let n = nakayama_data(&order, char2);
        println!("char 2: {char2}");
        println!("  sgn {:?}  xi {:?}", s.sgn, s.xi);
        println!("  projective tags {:?}  signs {:?}", n.tags, n.signs);
    }

    let names = |vs: &[usize]| vs.iter().map(|&v| order.vertex_name(v).to_owned()).collect::<Vec<_>>();
    for v in order.classes().transition_vertices() {
        let r = simple_resolution(&order, v)?;
        println!(
            "simple at {}: resolution through {:?}, Calabi-Yau dimension {}",
            order.vertex_name(v),
            names(&r.vertices),
            r.cy_dimension
        );
    }

    println!("kappa orbits: {:?}", kappa_orbits(&order).iter().map(|o| names(o)).collect::<Vec<_>>());
    for subset in kappa_stable_subsets(&order) {
        let g = ideal_generators(&order, &subset)?;
        let arrows: Vec<&str> = g.arrows.iter().map(|&a| order.arrow_name(a)).collect();
        println!(
            "I({:?}): idempotents {:?}, arrows {:?}",
            names(&subset),
            names(&g.idempotents),
            arrows
        );
    }
    Ok(())
}
