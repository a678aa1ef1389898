//! Enumerate saddle connections up to a length bound and find the systole.
//!
//!     cargo run --release --example enumerate_saddle_connections

use saddleconn::geom::q_i64;
use saddleconn::saddle::{enumerate, systole};
use saddleconn::surface::{Origami, Surface};

fn main() {
    let torus = Surface::from_origami(&Origami::new(1, vec![0], vec![0]).unwrap())
        .unwrap()
        .triangulate()
        .unwrap();
    println!("once-marked square torus, |v|^2 <= 5:");
    for sc in enumerate(&torus, &q_i64(5)) {
        println!(
            "  holonomy ({}, {})  slope {}  crossings {}",
            sc.holonomy.x,
            sc.holonomy.y,
            sc.slope(),
            sc.segs.len() - 1
        );
    }
    let sys = systole(&torus);
    println!(
        "systole: ({}, {}) of squared length {}",
        sys.holonomy.x,
        sys.holonomy.y,
        sys.length_sq()
    );

    let l_shape = Surface::from_origami(&Origami::new(3, vec![1, 0, 2], vec![2, 1, 0]).unwrap())
        .unwrap()
        .triangulate()
        .unwrap();
    let scs = enumerate(&l_shape, &q_i64(2));
    println!("\nL-origami, |v|^2 <= 2: {} saddle connections", scs.len());
    let units = scs.iter().filter(|s| s.length_sq() == q_i64(1)).count();
    println!("  of unit length: {units} (the six glued edges)");
}
