//! Ladder paths on the once-marked torus: reproduce the Farey-polygon figure
//! from slope -1/4 to slope 2, and verify the four ladder-path properties.
//!
//!     cargo run --release --example ladder_figure

use saddleconn::geom::q_i64;
use saddleconn::ladder::{check_ladder_properties, farey_ladder, ladder_paths};
use saddleconn::saddle::{enumerate, Slope};
use saddleconn::surface::{Origami, Surface};

fn main() {
    let tr = Surface::from_origami(&Origami::new(1, vec![0], vec![0]).unwrap())
        .unwrap()
        .triangulate()
        .unwrap();
    // beta has slope -1/4 (holonomy (-4,1)), alpha slope 2 (holonomy (1,2)).
    let scs = enumerate(&tr, &q_i64(17));
    let beta = scs
        .iter()
        .find(|s| s.slope() == Slope::of_i64(-4, 1))
        .unwrap();
    let alpha = scs
        .iter()
        .find(|s| s.slope() == Slope::of_i64(1, 2))
        .unwrap();
    let (left, right) = ladder_paths(&tr, alpha, beta).unwrap();
    for path in [&left, &right] {
        let slopes: Vec<String> = path.slopes_dedup().iter().map(|s| s.to_string()).collect();
        println!("{:?} ladder (dedup): {}", path.side, slopes.join(", "));
    }
    let violations = check_ladder_properties(&tr, alpha, beta, &left, &right);
    println!("property violations: {}", violations.len());

    // The same two paths from the Stern-Brocot fan directly.
    let (a, b) = farey_ladder(&beta.slope(), &alpha.slope());
    for (name, path) in [("fan a", a), ("fan b", b)] {
        let slopes: Vec<String> = path.iter().map(|s| s.to_string()).collect();
        println!("{name}: {}", slopes.join(", "));
    }
}
