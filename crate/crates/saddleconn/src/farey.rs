//! Exact Farey-graph oracle for the once-marked square torus.
//!
//! Slopes p/q with edges where |ps - qr| = 1. Fans (the two boundary paths of
//! the polygon of tessellation triangles separating two slopes) come from
//! Stern-Brocot mediant descent after a unimodular change of basis. Distances
//! are exact: any geodesic between two slopes stays on the vertices of their
//! separating polygon (the dual of the Farey tessellation is a tree, so an
//! excursion out of the polygon re-enters through the two endpoints of a
//! boundary edge and can be shortcut), hence BFS over the fan vertices with
//! all |det| = 1 pairs as edges computes the true distance. The crate
//! additionally validates this against a plain bounded BFS before trusting
//! the oracle (see `validate_against_bounded_bfs`).

use crate::saddle::Slope;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, VecDeque};

/// |det| = 1 adjacency of normalized slopes.
pub fn adjacent(u: &Slope, v: &Slope) -> bool {
    u.det(v).abs() == BigInt::one()
}

/// The two boundary paths of the Farey polygon separating `u` from `v`,
/// both running from `u` to `v`. For adjacent slopes both paths are the edge.
pub fn fan(u: &Slope, v: &Slope) -> (Vec<Slope>, Vec<Slope>) {
    assert_ne!(u, v, "fan endpoints must be distinct");
    if adjacent(u, v) {
        return (vec![u.clone(), v.clone()], vec![u.clone(), v.clone()]);
    }
    // Unimodular T with T u = (0,1) (vertical): rows (y_u, -x_u) and (c, d)
    // where c x_u + d y_u = 1.
    let e = u.x.extended_gcd(&u.y);
    debug_assert!(e.gcd.is_one());
    let (c, d) = (e.x, e.y);
    let t_mat = [
        [u.y.clone(), -u.x.clone()],
        [c.clone(), d.clone()],
    ];
    let apply = |m: &[[BigInt; 2]; 2], x: &BigInt, y: &BigInt| -> (BigInt, BigInt) {
        (&m[0][0] * x + &m[0][1] * y, &m[1][0] * x + &m[1][1] * y)
    };
    let (vx, vy) = apply(&t_mat, &v.x, &v.y);
    debug_assert!(!vx.is_zero(), "v must differ from u projectively");
    // Work with slope values along the line: target t = vy / vx.
    let num_r = |n: &BigInt, d_: &BigInt| num_rational::BigRational::new(n.clone(), d_.clone());
    let target = num_r(&vy, &vx);
    // inverse of T (det = 1): [[d, x_u], [-c, y_u]]
    let t_inv = [
        [d, u.x.clone()],
        [-c, u.y.clone()],
    ];
    let back = |p: &BigInt, q: &BigInt| -> Slope {
        // fraction value p/q corresponds to direction (q, p)
        let (x, y) = apply(&t_inv, q, p);
        Slope::new(x, y)
    };
    let floor = target.floor().to_integer();
    let mut lo = (floor.clone(), BigInt::one());
    let mut hi = (floor + 1, BigInt::one());
    let mut path_lo = vec![u.clone(), back(&lo.0, &lo.1)];
    let mut path_hi = vec![u.clone(), back(&hi.0, &hi.1)];
    loop {
        let med = (&lo.0 + &hi.0, &lo.1 + &hi.1);
        let mv = num_r(&med.0, &med.1);
        if mv == target {
            path_lo.push(back(&med.0, &med.1));
            path_hi.push(back(&med.0, &med.1));
            return (path_lo, path_hi);
        }
        if target < mv {
            path_hi.push(back(&med.0, &med.1));
            hi = med;
        } else {
            path_lo.push(back(&med.0, &med.1));
            lo = med;
        }
    }
}

fn fan_vertex_graph(u: &Slope, v: &Slope) -> (Vec<Slope>, Vec<Vec<usize>>) {
    let (a, b) = fan(u, v);
    let mut verts: Vec<Slope> = a.into_iter().chain(b).collect();
    verts.sort();
    verts.dedup();
    let mut adj = vec![Vec::new(); verts.len()];
    for i in 0..verts.len() {
        for j in (i + 1)..verts.len() {
            if adjacent(&verts[i], &verts[j]) {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    (verts, adj)
}

/// Exact Farey-graph distance.
pub fn distance(u: &Slope, v: &Slope) -> u32 {
    if u == v {
        return 0;
    }
    if adjacent(u, v) {
        return 1;
    }
    let (verts, adj) = fan_vertex_graph(u, v);
    let s = verts.binary_search(u).expect("u is a fan vertex");
    let t = verts.binary_search(v).expect("v is a fan vertex");
    bfs(&adj, s, t).expect("fan is connected")
}

/// An exact geodesic from `u` to `v`, vertices in order (deterministic BFS
/// parent choice in slope order).
pub fn geodesic(u: &Slope, v: &Slope) -> Vec<Slope> {
    if u == v {
        return vec![u.clone()];
    }
    if adjacent(u, v) {
        return vec![u.clone(), v.clone()];
    }
    let (verts, adj) = fan_vertex_graph(u, v);
    let s = verts.binary_search(u).unwrap();
    let t = verts.binary_search(v).unwrap();
    let mut parent: Vec<Option<usize>> = vec![None; verts.len()];
    let mut seen = vec![false; verts.len()];
    let mut queue = VecDeque::new();
    seen[s] = true;
    queue.push_back(s);
    while let Some(x) = queue.pop_front() {
        if x == t {
            break;
        }
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some(x);
                queue.push_back(y);
            }
        }
    }
    let mut path = vec![t];
    while let Some(p) = parent[*path.last().unwrap()] {
        path.push(p);
    }
    path.reverse();
    debug_assert_eq!(path[0], s);
    path.into_iter().map(|i| verts[i].clone()).collect()
}

fn bfs(adj: &[Vec<usize>], s: usize, t: usize) -> Option<u32> {
    let mut dist = vec![u32::MAX; adj.len()];
    let mut queue = VecDeque::new();
    dist[s] = 0;
    queue.push_back(s);
    while let Some(x) = queue.pop_front() {
        if x == t {
            return Some(dist[x]);
        }
        for &y in &adj[x] {
            if dist[y] == u32::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    None
}

/// Plain BFS universe of canonical slopes with |x| <= bx, y <= by (plus the
/// vertical). Distances computed here are upper bounds of the true Farey
/// distance; they agree with it once the universe contains a geodesic.
pub struct BoundedFareyGraph {
    verts: Vec<Slope>,
    adj: Vec<Vec<usize>>,
}

impl BoundedFareyGraph {
    pub fn new(bx: i64, by: i64) -> Self {
        let mut verts: Vec<Slope> = Vec::new();
        for x in -bx..=bx {
            for y in 0..=by {
                if (x == 0 && y == 0) || num_integer::gcd(x, y) != 1 {
                    continue;
                }
                if y == 0 && x != 1 {
                    continue;
                }
                verts.push(Slope::of_i64(x, y));
            }
        }
        verts.sort();
        verts.dedup();
        // Neighbors of (x, y) solve x y' - y x' = +-1; enumerate the solution
        // lines (x' , y') = (x0 + k x, y0 + k y) inside the box.
        let index: BTreeMap<Slope, usize> = verts.iter().cloned().zip(0..).collect();
        let mut adj = vec![Vec::new(); verts.len()];
        for (i, s) in verts.iter().enumerate() {
            let e = s.x.extended_gcd(&s.y);
            // x * (-e.y) - y * (-e.x) ... choose base solution of x y' - y x' = 1:
            // y' = e.x ??? Solve: s.x * y0 - s.y * x0 = 1 with e: e.x*s.x + e.y*s.y = 1.
            // Take y0 = e.x, x0 = -e.y.
            let (x0, y0) = (-e.y.clone(), e.x.clone());
            for sgn in [1i64, -1] {
                // (x', y') = sgn*(x0, y0) + k (s.x, s.y)
                let kx = BigInt::from(sgn) * &x0;
                let ky = BigInt::from(sgn) * &y0;
                let lim = 2 * bx.max(by) + 2;
                for k in -lim..=lim {
                    let x = &kx + BigInt::from(k) * &s.x;
                    let y = &ky + BigInt::from(k) * &s.y;
                    if x.is_zero() && y.is_zero() {
                        continue;
                    }
                    let n = Slope::new(x, y);
                    if let Some(&j) = index.get(&n) {
                        if j != i {
                            adj[i].push(j);
                        }
                    }
                }
            }
            adj[i].sort_unstable();
            adj[i].dedup();
        }
        BoundedFareyGraph { verts, adj }
    }

    pub fn distance(&self, u: &Slope, v: &Slope) -> Option<u32> {
        let s = self.verts.binary_search(u).ok()?;
        let t = self.verts.binary_search(v).ok()?;
        bfs(&self.adj, s, t)
    }

    /// Distances from `u` to every universe slope in one sweep.
    pub fn distances_from(&self, u: &Slope) -> Option<Vec<u32>> {
        let s = self.verts.binary_search(u).ok()?;
        let mut dist = vec![u32::MAX; self.adj.len()];
        let mut queue = VecDeque::new();
        dist[s] = 0;
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == u32::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        Some(dist)
    }

    pub fn index_of(&self, v: &Slope) -> Option<usize> {
        self.verts.binary_search(v).ok()
    }

    pub fn slopes(&self) -> &[Slope] {
        &self.verts
    }
}

/// Every pair of slopes with |x|, y <= `den` must have oracle distance equal
/// to the plain bounded BFS over the (bx, by) universe. Returns the first
/// disagreement.
pub fn validate_against_bounded_bfs(den: i64, bx: i64, by: i64) -> Result<(), (Slope, Slope)> {
    let big = BoundedFareyGraph::new(bx, by);
    let mut small: Vec<Slope> = Vec::new();
    for x in -den..=den {
        for y in 0..=den {
            if (x == 0 && y == 0) || num_integer::gcd(x, y) != 1 || (y == 0 && x != 1) {
                continue;
            }
            small.push(Slope::of_i64(x, y));
        }
    }
    small.sort();
    small.dedup();
    use rayon::prelude::*;
    let big = &big;
    let bad: Vec<(Slope, Slope)> = small
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, u)| {
            let dist = big.distances_from(u).expect("universe covers small slopes");
            small[i + 1..].iter().filter_map(move |v| {
                let d_oracle = distance(u, v);
                let d_bfs = dist[big.index_of(v).expect("universe covers small slopes")];
                (d_oracle != d_bfs).then(|| (u.clone(), v.clone()))
            })
        })
        .collect();
    match bad.into_iter().next() {
        None => Ok(()),
        Some(p) => Err(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, q: i64) -> Slope {
        // slope value p/q
        Slope::of_i64(q, p)
    }

    #[test]
    fn adjacency_examples() {
        assert!(adjacent(&Slope::of_i64(1, 0), &Slope::of_i64(0, 1)));
        assert!(!adjacent(&Slope::of_i64(1, 1), &Slope::of_i64(1, -1)));
        assert!(adjacent(&s(2, 3), &s(1, 2)));
    }

    #[test]
    fn fan_examples() {
        // (1/0, 2/3) -> {1/0, 1, 2/3} and {1/0, 0, 1/2, 2/3}
        let (a, b) = fan(&s(1, 0), &s(2, 3));
        let (short, long) = if a.len() < b.len() { (a, b) } else { (b, a) };
        assert_eq!(short, vec![s(1, 0), s(1, 1), s(2, 3)]);
        assert_eq!(long, vec![s(1, 0), s(0, 1), s(1, 2), s(2, 3)]);
    }

    #[test]
    fn fan_figure_example() {
        // Between -1/4 and 2: {-1/4, 0, 1, 2} and {-1/4, -1/3, -1/2, -1, 1/0, 2}
        let (a, b) = fan(&s(-1, 4), &s(2, 1));
        let (short, long) = if a.len() < b.len() { (a, b) } else { (b, a) };
        assert_eq!(short, vec![s(-1, 4), s(0, 1), s(1, 1), s(2, 1)]);
        assert_eq!(
            long,
            vec![s(-1, 4), s(-1, 3), s(-1, 2), s(-1, 1), s(1, 0), s(2, 1)]
        );
        // Edge-paths: consecutive determinants are +-1 throughout.
        for path in [&short, &long] {
            for w in path.windows(2) {
                assert!(adjacent(&w[0], &w[1]));
            }
        }
    }

    #[test]
    fn fan_adjacent_pair() {
        let (a, b) = fan(&s(1, 0), &s(1, 1));
        assert_eq!(a, vec![s(1, 0), s(1, 1)]);
        assert_eq!(b, a);
    }

    #[test]
    fn distance_examples() {
        assert_eq!(distance(&s(1, 0), &s(1, 0)), 0);
        assert_eq!(distance(&s(1, 0), &s(0, 1)), 1);
        // 1/0 to 2/3: path 1/0 - 1 - 2/3
        assert_eq!(distance(&s(1, 0), &s(2, 3)), 2);
        assert_eq!(distance(&s(0, 1), &s(5, 1)), 2);
    }

    #[test]
    fn geodesic_is_edge_path_of_right_length() {
        let pairs = [
            (s(1, 0), s(2, 3)),
            (s(-1, 4), s(2, 1)),
            (s(3, 7), s(-5, 2)),
            (s(8, 13), s(1, 0)),
        ];
        for (u, v) in pairs {
            let g = geodesic(&u, &v);
            assert_eq!(g.len() as u32, distance(&u, &v) + 1);
            assert_eq!(g[0], u);
            assert_eq!(*g.last().unwrap(), v);
            for w in g.windows(2) {
                assert!(adjacent(&w[0], &w[1]));
            }
        }
    }

    #[test]
    fn triangle_inequality_spot_checks() {
        let slopes = [s(1, 0), s(0, 1), s(2, 3), s(-5, 7), s(9, 4), s(-1, 1)];
        for a in &slopes {
            for b in &slopes {
                for c in &slopes {
                    assert!(distance(a, c) <= distance(a, b) + distance(b, c));
                }
            }
        }
    }

    #[test]
    fn oracle_agrees_with_bounded_bfs_small() {
        // Denominators <= 4 here; the acceptance suite runs <= 12.
        validate_against_bounded_bfs(4, 40, 40).unwrap();
    }
}
