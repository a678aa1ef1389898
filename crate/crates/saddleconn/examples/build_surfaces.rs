//! Build surfaces three ways and inspect their invariants: the once-marked
//! square torus, the 3-square L-origami, and the pillowcase (four poles).
//!
//!     cargo run --release --example build_surfaces

use saddleconn::io::parse_surface;
use saddleconn::surface::{Mat2, Origami, Surface};

fn describe(name: &str, tr: &saddleconn::Triangulation) {
    println!("{name}:");
    println!("  triangles: {}", tr.num_triangles());
    println!("  genus: {}", tr.genus());
    print!("  singularities:");
    for c in 0..tr.num_singularities() {
        print!(" {}pi", tr.cone_angle_pi(c as u32));
    }
    println!();
    println!("  delaunay: {}", tr.is_delaunay());
    println!("  double area: {}", tr.total_double_area());
}

fn main() {
    let torus = Surface::from_origami(&Origami::new(1, vec![0], vec![0]).unwrap()).unwrap();
    describe("once-marked square torus", &torus.triangulate().unwrap());

    let l_shape = Surface::from_origami(&Origami::new(3, vec![1, 0, 2], vec![2, 1, 0]).unwrap())
        .unwrap()
        .triangulate()
        .unwrap();
    describe("L-origami (3 squares)", &l_shape);

    // The pillowcase in the polygons input form: a 1 x 1/2 rectangle with
    // folded top/bottom edges, each split at its midpoint.
    let pillow = parse_surface(
        "polygons {
           polygon r { (0,0) (1/2,0) (1,0) (1,1/2) (1/2,1/2) (0,1/2) }
           glue r.e0 r.e1 -1
           glue r.e3 r.e4 -1
           glue r.e2 r.e5 +1
         }",
    )
    .unwrap();
    describe("pillowcase", &pillow.triangulate().unwrap());

    // Deform the torus by a shear; flips restore the Delaunay condition.
    let shear = Mat2::new(
        saddleconn::geom::q_i64(1),
        saddleconn::geom::q_i64(2),
        saddleconn::geom::q_i64(0),
        saddleconn::geom::q_i64(1),
    );
    let sheared = torus.apply_matrix(&shear).unwrap().triangulate().unwrap();
    describe("sheared torus (shear by 2)", &sheared);
}
