//! Funnel straightening: a wiggly combinatorial arc on the torus pulls taut
//! to the diagonal saddle connection, and re-straightening is the identity.
//!
//!     cargo run --release --example straighten_arc

use saddleconn::arc::{straighten, CombinatorialArc};
use saddleconn::geom::Pt;
use saddleconn::surface::{Origami, Surface};
use saddleconn::tri::Side;

fn main() {
    let tr = Surface::from_origami(&Origami::new(1, vec![0], vec![0]).unwrap())
        .unwrap()
        .triangulate()
        .unwrap();
    // Locate the corners at (0,0) and (1,1) and the splitting chord.
    let corner_at = |p: Pt| {
        (0..tr.num_triangles())
            .flat_map(|t| (0..3).map(move |k| (t, k)))
            .find(|&(t, k)| tr.triangle(t)[k] == p)
            .unwrap()
    };
    let start = corner_at(Pt::of_i64(0, 0));
    let end = corner_at(Pt::of_i64(1, 1));
    let chord = (0..3)
        .find(|&e| {
            let v = tr.triangle(start.0);
            let ends = [v[e].clone(), v[(e + 1) % 3].clone()];
            ends.contains(&Pt::of_i64(1, 0)) && ends.contains(&Pt::of_i64(0, 1))
        })
        .unwrap();
    let back = tr.opposite(start.0, chord).0;

    // Cross the chord, come back, cross again: the doubled crossing cancels.
    let arc = CombinatorialArc {
        start,
        portals: vec![
            Side::new(start.0, chord),
            Side::new(back.tri, back.edge),
            Side::new(start.0, chord),
        ],
        end,
    };
    let dec = straighten(&tr, &arc).unwrap();
    println!("wiggly corner-to-corner arc straightens to:");
    for sc in &dec {
        println!("  holonomy ({}, {})", sc.holonomy.x, sc.holonomy.y);
    }

    // Straightening is idempotent.
    let again = straighten(
        &tr,
        &CombinatorialArc::of_saddle_connection(&tr, &dec[0]).unwrap(),
    )
    .unwrap();
    assert_eq!(again.len(), 1);
    assert_eq!(again[0].key(), dec[0].key());
    println!("re-straightening returns the same geodesic");
}
