//! Truncated graphs and their metric utilities: the saddle connection graph,
//! the graph of slopes (Farey on the torus), Gromov products, k-centres, and
//! the bounded-class quotient certificate.
//!
//!     cargo run --release --example slope_graph_metrics

use saddleconn::geom::q_i64;
use saddleconn::graph::{build_sc_graph, build_slope_graph, quotient_graph};
use saddleconn::saddle::Slope;
use saddleconn::surface::{Origami, Surface};

fn main() {
    let tr = Surface::from_origami(&Origami::new(1, vec![0], vec![0]).unwrap())
        .unwrap()
        .triangulate()
        .unwrap();
    let g = build_sc_graph(&tr, &q_i64(50));
    let sg = build_slope_graph(&g);
    println!(
        "torus truncation |v|^2 <= 50: {} saddle connections, {} slopes, {} slope edges",
        g.scs.len(),
        sg.slopes.len(),
        sg.graph.edges().len()
    );

    let v = sg.index_of(&Slope::vertical()).unwrap();
    let t23 = sg.index_of(&Slope::of_i64(3, 2)).unwrap();
    println!(
        "d(1/0, 2/3) at this truncation: {:?} (an upper bound of the true distance)",
        sg.graph.bfs_distance(v, t23)
    );
    let one = sg.index_of(&Slope::of_i64(1, 1)).unwrap();
    println!(
        "Gromov product (1/0 | 2/3)_1 = {:?}",
        sg.graph.gromov_product(v, t23, one)
    );

    // Every triangle sampled here has a 4-centre.
    let m2 = sg.index_of(&Slope::of_i64(-2, 1)).unwrap();
    let c = sg.graph.find_k_centre(v, t23, m2, 4).unwrap();
    println!(
        "4-centre of (1/0, 2/3, -1/2): slope {} at side distances {:?}",
        sg.slopes[c.vertex as usize], c.dist_to_sides
    );

    // The parallel-class quotient of the L-origami saddle connection graph is
    // the graph of slopes, a (2,1)-quasi-isometry.
    let l_shape = Surface::from_origami(&Origami::new(3, vec![1, 0, 2], vec![2, 1, 0]).unwrap())
        .unwrap()
        .triangulate()
        .unwrap();
    let gl = build_sc_graph(&l_shape, &q_i64(4));
    let sgl = build_slope_graph(&gl);
    let (q, _, cert) = quotient_graph(&gl.graph, &sgl.classes(), 1, 200, 17).unwrap();
    println!(
        "L-origami parallel-class quotient: ({}, {})-certificate over {} samples: {}",
        cert.multiplicative,
        cert.additive,
        cert.samples.len(),
        if cert.holds { "holds" } else { "violated" }
    );
    assert_eq!(q.edges(), sgl.graph.edges());
}
