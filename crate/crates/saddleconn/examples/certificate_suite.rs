//! Run the full reproducible certificate suite on the once-marked torus and
//! print the report (same pipeline as `saddleconn certify all`).
//!
//!     cargo run --release --example certificate_suite

use saddleconn::geom::q_i64;
use saddleconn::saddle::Slope;
use saddleconn::suite::{run_suite, RunConfig};
use saddleconn::surface::{Origami, Surface};

fn main() {
    let tr = Surface::from_origami(&Origami::new(1, vec![0], vec![0]).unwrap())
        .unwrap()
        .triangulate()
        .unwrap();
    let cfg = RunConfig {
        l_sq: q_i64(20),
        theta0: Slope::vertical(),
        k_max: 1,
        samples: 6,
        seed: 2024,
    };
    let out = run_suite(&tr, &cfg).unwrap();
    print!("{}", out.report());
    println!("artifacts:");
    for (name, bytes) in &out.files {
        println!("  {name} ({} bytes)", bytes.len());
    }
    std::process::exit(if out.all_pass() { 0 } else { 2 });
}
