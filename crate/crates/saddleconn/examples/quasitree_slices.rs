//! Balls, complement intervals, the Hasse tree, slices, and the tree
//! quasi-isometry certificates on the once-marked torus.
//!
//!     cargo run --release --example quasitree_slices

use saddleconn::cert::Semantics;
use saddleconn::farey;
use saddleconn::geom::q_i64;
use saddleconn::graph::{build_sc_graph, build_slope_graph};
use saddleconn::quasitree::{
    build_slices, check_hasse_correspondence, qi_certificate, slice_diameters,
};
use saddleconn::saddle::Slope;
use saddleconn::surface::{Origami, Surface};

fn main() {
    let tr = Surface::from_origami(&Origami::new(1, vec![0], vec![0]).unwrap())
        .unwrap()
        .triangulate()
        .unwrap();
    let gs = build_slope_graph(&build_sc_graph(&tr, &q_i64(300)));
    let deeper = build_slope_graph(&build_sc_graph(&tr, &q_i64(380)));
    let theta0 = Slope::vertical();
    let (tree, slices) = build_slices(&gs, &deeper, &theta0, 2).unwrap();
    println!(
        "tree over {} slopes: {} interval nodes on {} levels",
        gs.slopes.len(),
        tree.nodes.len(),
        tree.levels.len()
    );
    for (k, level) in tree.levels.iter().enumerate() {
        let frontier = level
            .iter()
            .filter(|&&n| tree.nodes[n as usize].frontier)
            .count();
        println!("  level {k}: {} nodes ({frontier} frontier)", level.len());
    }
    let assigned = slices.assignment.iter().flatten().count();
    println!("slices partition {assigned} slopes (root slice = B(3))");

    let g = build_sc_graph(&tr, &q_i64(300));
    let diam = slice_diameters(&gs, &g, &slices);
    let max_slice = diam.iter().filter_map(|d| d.0).max().unwrap_or(0);
    let max_pre = diam.iter().filter_map(|d| d.1).max().unwrap_or(0);
    println!("max slice diameter <= 17: observed {max_slice}");
    println!("max preimage diameter <= 29: observed {max_pre}");

    let bad = check_hasse_correspondence(&gs, &tree, &slices);
    println!("slice/Hasse correspondence violations: {}", bad.len());

    // Tree quasi-isometry with exact oracle distances.
    let gs_ref = &gs;
    let dist = move |x: u32, y: u32| {
        Some(farey::distance(
            &gs_ref.slopes[x as usize],
            &gs_ref.slopes[y as usize],
        ))
    };
    let rep = qi_certificate(
        &tree,
        &slices.assignment,
        &dist,
        18,
        17,
        40,
        9,
        Semantics::ProvesTrueClaim,
    );
    println!(
        "(18,17) tree quasi-isometry over {} exact-distance pairs: {}",
        rep.samples.len(),
        if rep.holds { "holds" } else { "violated" }
    );
}
