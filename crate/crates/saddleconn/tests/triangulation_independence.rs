//! The same flat torus presented with two different triangulations (split
//! along the main diagonal vs the anti-diagonal) must enumerate the same
//! saddle connections and produce the same ladder paths.

use saddleconn::geom::{q_i64, Pt};
use saddleconn::io::parse_surface;
use saddleconn::ladder::ladder_paths;
use saddleconn::saddle::{enumerate, Slope};
use saddleconn::surface::{Origami, Surface};
use saddleconn::tri::Triangulation;

fn torus_antidiagonal() -> Triangulation {
    // The origami square ear-clips along (1,0)-(0,1).
    Surface::from_origami(&Origami::new(1, vec![0], vec![0]).unwrap())
        .unwrap()
        .triangulate()
        .unwrap()
}

fn torus_maindiagonal() -> Triangulation {
    // Two triangles glued along (0,0)-(1,1) explicitly.
    let src = "polygons {
      polygon lower { (0,0) (1,0) (1,1) }
      polygon upper { (0,0) (1,1) (0,1) }
      glue lower.e2 upper.e0
      glue lower.e0 upper.e1
      glue lower.e1 upper.e2
    }";
    parse_surface(src).unwrap().triangulate().unwrap()
}

fn holonomies(tr: &Triangulation, l_sq: i64) -> Vec<(String, String)> {
    enumerate(tr, &q_i64(l_sq))
        .iter()
        .map(|sc| (sc.holonomy.x.to_string(), sc.holonomy.y.to_string()))
        .collect()
}

#[test]
fn both_presentations_are_the_once_marked_torus() {
    for tr in [torus_antidiagonal(), torus_maindiagonal()] {
        assert_eq!(tr.num_triangles(), 2);
        assert_eq!(tr.num_singularities(), 1);
        assert_eq!(tr.cone_angle_pi(0), 2);
        assert!(tr.is_delaunay());
    }
    // Different splittings: the diagonal realized as a triangulation edge
    // (a single-segment chain) differs between the two presentations.
    let edge_diag = |tr: &Triangulation| {
        enumerate(tr, &q_i64(2))
            .into_iter()
            .find(|sc| sc.segs.len() == 1 && sc.length_sq() == q_i64(2))
            .unwrap()
            .holonomy
            .clone()
    };
    assert_eq!(edge_diag(&torus_antidiagonal()), Pt::of_i64(-1, 1));
    assert_eq!(edge_diag(&torus_maindiagonal()), Pt::of_i64(1, 1));
}

#[test]
fn enumeration_is_triangulation_independent() {
    for l in [2, 5, 13, 25] {
        assert_eq!(
            holonomies(&torus_antidiagonal(), l),
            holonomies(&torus_maindiagonal(), l),
            "bound {l}"
        );
    }
}

#[test]
fn ladders_are_triangulation_independent() {
    let a = torus_antidiagonal();
    let m = torus_maindiagonal();
    let pairs = [((1, 2), (-4, 1)), ((0, 1), (3, 2)), ((3, 1), (1, 3)), ((-2, 1), (2, 1))];
    for ((ax, ay), (bx, by)) in pairs {
        let find = |tr: &Triangulation, x: i64, y: i64| {
            enumerate(tr, &q_i64(x * x + y * y))
                .into_iter()
                .find(|sc| sc.holonomy == Slope::of_i64(x, y).as_vector())
                .unwrap()
        };
        let (la, ra) = ladder_paths(&a, &find(&a, ax, ay), &find(&a, bx, by)).unwrap();
        let (lm, rm) = ladder_paths(&m, &find(&m, ax, ay), &find(&m, bx, by)).unwrap();
        let slopes = |p: &saddleconn::ladder::LadderPath| p.slopes_dedup();
        let mut from_a = [slopes(&la), slopes(&ra)];
        let mut from_m = [slopes(&lm), slopes(&rm)];
        from_a.sort();
        from_m.sort();
        assert_eq!(from_a, from_m, "pair ({ax},{ay}) vs ({bx},{by})");
    }
}
