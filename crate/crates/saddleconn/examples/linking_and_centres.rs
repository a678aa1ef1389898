//! The linking-slopes witness search and 4-centre construction on the
//! L-origami (on the once-marked torus the linking hypotheses are vacuous:
//! non-crossing there means Farey-adjacent, and two Farey edges never link).
//!
//!     cargo run --release --example linking_and_centres

use saddleconn::arc::crosses;
use saddleconn::geom::q_i64;
use saddleconn::graph::build_sc_graph;
use saddleconn::ladder::{
    centre_side_distances, check_linking, find_disjoint_ladder_triple, LinkingOutcome,
};
use saddleconn::saddle::enumerate;
use saddleconn::surface::{Origami, Surface};

fn main() {
    let tr = Surface::from_origami(&Origami::new(3, vec![1, 0, 2], vec![2, 1, 0]).unwrap())
        .unwrap()
        .triangulate()
        .unwrap();
    let scs = enumerate(&tr, &q_i64(2));

    // Find a hypothesis-satisfying quadruple and its witness.
    let mut shown = 0;
    'outer: for a1 in &scs {
        for a2 in &scs {
            for a3 in &scs {
                for a4 in &scs {
                    let Ok(LinkingOutcome::Witness {
                        witness,
                        d_to_13,
                        d_to_24,
                        ..
                    }) = check_linking(&tr, a1, a2, a3, a4, &q_i64(64))
                    else {
                        continue;
                    };
                    println!(
                        "linking quadruple with slopes {}, {}, {}, {}:",
                        a1.slope(),
                        a2.slope(),
                        a3.slope(),
                        a4.slope()
                    );
                    println!(
                        "  witness ({}, {}) within {} of {{a1,a3}} and {} of {{a2,a4}} => d <= 2",
                        witness.holonomy.x, witness.holonomy.y, d_to_13, d_to_24
                    );
                    shown += 1;
                    if shown >= 3 {
                        break 'outer;
                    }
                }
            }
        }
    }

    // A 4-centre from the pairwise ladder paths.
    let a = &scs[0];
    let b = scs.iter().find(|s| crosses(&tr, a, s)).unwrap_or(&scs[1]);
    let c = scs.last().unwrap();
    if let Some(fc) = find_disjoint_ladder_triple(&tr, a, b, c).unwrap() {
        println!(
            "\npairwise-disjoint ladder triple for ({}, {}, {}):",
            a.slope(),
            b.slope(),
            c.slope()
        );
        for d in &fc.triple {
            println!("  ({}, {})", d.holonomy.x, d.holonomy.y);
        }
        let g = build_sc_graph(&tr, &q_i64(8));
        if let (Some(ia), Some(ib), Some(ic), Some(icen)) = (
            g.index_of(a),
            g.index_of(b),
            g.index_of(c),
            g.index_of(&fc.centre),
        ) {
            let sides = [
                g.graph.geodesic(ia, ib).unwrap(),
                g.graph.geodesic(ib, ic).unwrap(),
                g.graph.geodesic(ic, ia).unwrap(),
            ];
            let d = centre_side_distances(&g.graph, icen as u32, &sides);
            println!("  centre distances to the triangle sides: {d:?} (all <= 4)");
        }
    }
}
