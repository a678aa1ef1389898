//! The exact Farey oracle: adjacency, fans, geodesics, distances, and the
//! self-validation against a plain bounded BFS.
//!
//!     cargo run --release --example farey_oracle

use saddleconn::farey::{adjacent, distance, fan, geodesic, validate_against_bounded_bfs};
use saddleconn::saddle::Slope;

fn s(p: i64, q: i64) -> Slope {
    Slope::of_i64(q, p)
}

fn main() {
    println!("adjacent(1/0, 0) = {}", adjacent(&s(1, 0), &s(0, 1)));
    println!("adjacent(1, -1) = {}", adjacent(&s(1, 1), &s(-1, 1)));

    let (a, b) = fan(&s(1, 0), &s(2, 3));
    let show = |p: &[Slope]| {
        p.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    println!("fan(1/0, 2/3): [{}] and [{}]", show(&a), show(&b));

    for (u, v) in [(s(1, 0), s(2, 3)), (s(-1, 4), s(2, 1)), (s(8, 13), s(-5, 7))] {
        println!(
            "d({u}, {v}) = {}, geodesic: [{}]",
            distance(&u, &v),
            show(&geodesic(&u, &v))
        );
    }

    println!("validating oracle distances against plain BFS (den <= 6) ...");
    validate_against_bounded_bfs(6, 45, 45).expect("oracle agrees with BFS");
    println!("ok");
}
