//! Truncated saddle connection graphs and graphs of slopes.
//!
//! Every graph here is an induced finite shadow of an infinite graph, so BFS
//! distances are UPPER BOUNDS of the true distances: a path found at this
//! truncation exists in the full graph, while shorter paths may appear at
//! deeper truncations. Certificates that consume these distances must treat
//! them with that bound semantics.

use crate::geom::Q;
use crate::saddle::{enumerate, SaddleConnection, Slope};
use crate::tri::Triangulation;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand_chacha::ChaCha8Rng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use std::collections::{BTreeMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("vertices {0} and {1} are disconnected at this truncation")]
    Disconnected(usize, usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("class {class} has diameter {diameter} > K = {k}")]
    ClassDiameterExceeded { class: usize, diameter: u32, k: u32 },
}

/// Plain undirected graph with the combinatorial metric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
}

impl Graph {
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a == b {
                continue;
            }
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
            l.dedup();
        }
        Graph { adj }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (i, l) in self.adj.iter().enumerate() {
            for &j in l {
                if (i as u32) < j {
                    out.push((i as u32, j));
                }
            }
        }
        out
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&(b as u32)).is_ok()
    }

    /// BFS distances from `src`; `None` marks vertices unreachable at this
    /// truncation.
    pub fn distances_from(&self, src: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.adj.len()];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap();
            for &y in &self.adj[x] {
                if dist[y as usize].is_none() {
                    dist[y as usize] = Some(dx + 1);
                    queue.push_back(y as usize);
                }
            }
        }
        dist
    }

    /// Shortest-path length within this truncation (an upper bound for the
    /// distance in the untruncated graph). `None` when disconnected here.
    pub fn bfs_distance(&self, u: usize, v: usize) -> Option<u32> {
        if u == v {
            return Some(0);
        }
        let mut dist = vec![u32::MAX; self.adj.len()];
        let mut queue = VecDeque::new();
        dist[u] = 0;
        queue.push_back(u);
        while let Some(x) = queue.pop_front() {
            if x == v {
                return Some(dist[x]);
            }
            for &y in &self.adj[x] {
                if dist[y as usize] == u32::MAX {
                    dist[y as usize] = dist[x] + 1;
                    queue.push_back(y as usize);
                }
            }
        }
        None
    }

    /// One deterministic geodesic from `u` to `v` (walk from `u`, always
    /// taking the smallest-index neighbor that decreases BFS distance to `v`).
    pub fn geodesic(&self, u: usize, v: usize) -> Option<Vec<u32>> {
        let dist_to_v: Vec<Option<u32>> = self.distances_from(v);
        dist_to_v[u]?;
        let mut path = vec![u as u32];
        let mut cur = u;
        while cur != v {
            let d = dist_to_v[cur].unwrap();
            let next = self.adj[cur]
                .iter()
                .find(|&&y| dist_to_v[y as usize] == Some(d - 1))
                .expect("BFS distance decreases along some neighbor");
            path.push(*next);
            cur = *next as usize;
        }
        Some(path)
    }

    /// Gromov product (x|y)_z = (d(x,z) + d(y,z) - d(x,y)) / 2 with this
    /// truncation's distances.
    pub fn gromov_product(&self, x: usize, y: usize, z: usize) -> Option<Q> {
        let dxz = self.bfs_distance(x, z)?;
        let dyz = self.bfs_distance(y, z)?;
        let dxy = self.bfs_distance(x, y)?;
        Some(BigRational::new(
            BigInt::from(dxz as i64 + dyz as i64 - dxy as i64),
            BigInt::from(2),
        ))
    }

    fn multi_source_dist(&self, sources: &[u32]) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.adj.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s as usize].is_none() {
                dist[s as usize] = Some(0);
                queue.push_back(s as usize);
            }
        }
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap();
            for &y in &self.adj[x] {
                if dist[y as usize].is_none() {
                    dist[y as usize] = Some(dx + 1);
                    queue.push_back(y as usize);
                }
            }
        }
        dist
    }

    /// Search for a k-centre of the geodesic triangle on (x, y, z): one
    /// deterministic geodesic per side, then the smallest-index vertex within
    /// distance k of all three sides. Returns the witness with its distance
    /// certificates and the sides used, or `None` when no vertex qualifies at
    /// this truncation.
    pub fn find_k_centre(&self, x: usize, y: usize, z: usize, k: u32) -> Option<KCentre> {
        let sides = [
            self.geodesic(x, y)?,
            self.geodesic(y, z)?,
            self.geodesic(z, x)?,
        ];
        let dists: Vec<Vec<Option<u32>>> =
            sides.iter().map(|s| self.multi_source_dist(s)).collect();
        for v in 0..self.adj.len() {
            let d: Vec<u32> = dists
                .iter()
                .filter_map(|dd| dd[v].filter(|&h| h <= k))
                .collect();
            if d.len() == 3 {
                return Some(KCentre {
                    vertex: v as u32,
                    dist_to_sides: [d[0], d[1], d[2]],
                    sides,
                });
            }
        }
        None
    }
}

/// A k-centre witness: within `dist_to_sides[i]` of `sides[i]`.
#[derive(Clone, Debug)]
pub struct KCentre {
    pub vertex: u32,
    pub dist_to_sides: [u32; 3],
    pub sides: [Vec<u32>; 3],
}

/// The truncated saddle connection graph: vertices are the saddle connections
/// of length at most L, edges the non-crossing pairs.
#[derive(Clone, Debug)]
pub struct ScGraph {
    pub graph: Graph,
    pub scs: Vec<SaddleConnection>,
    pub l_sq: Q,
}

impl ScGraph {
    pub fn index_of(&self, sc: &SaddleConnection) -> Option<usize> {
        self.scs.binary_search(sc).ok()
    }
}

/// Induced subgraph of the saddle connection graph on the length-<= L
/// vertices, in deterministic vertex order.
pub fn build_sc_graph(tr: &Triangulation, l_sq: &Q) -> ScGraph {
    let scs = enumerate(tr, l_sq);
    let graph = sc_graph_on(tr, &scs);
    ScGraph {
        graph,
        scs,
        l_sq: l_sq.clone(),
    }
}

/// Adjacency (non-crossing) over an explicit saddle connection list.
pub fn sc_graph_on(tr: &Triangulation, scs: &[SaddleConnection]) -> Graph {
    use crate::arc::{crosses_with_cache, ChainCache};
    let n = scs.len();
    let caches: Vec<ChainCache> = scs.par_iter().map(|sc| ChainCache::new(&sc.segs)).collect();
    let pairs: Vec<(u32, u32)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let (tr, caches) = (&tr, &caches);
            (i + 1..n).filter_map(move |j| {
                if crosses_with_cache(tr, &scs[i], &caches[i], &scs[j], &caches[j]) {
                    None
                } else {
                    Some((i as u32, j as u32))
                }
            })
        })
        .collect();
    Graph::from_edges(n, &pairs)
}

/// The truncated graph of slopes: the quotient of an sc-graph by parallelism.
#[derive(Clone, Debug)]
pub struct SlopeGraph {
    pub graph: Graph,
    pub slopes: Vec<Slope>,
    /// For each slope, the sc-graph vertex indices realizing it.
    pub members: Vec<Vec<u32>>,
    pub l_sq: Q,
}

impl SlopeGraph {
    pub fn index_of(&self, s: &Slope) -> Option<usize> {
        self.slopes.binary_search(s).ok()
    }

    /// The partition of the sc-graph vertex set by slope.
    pub fn classes(&self) -> Vec<Vec<u32>> {
        self.members.clone()
    }
}

/// Vertices are the distinct slopes of `g`'s saddle connections; two slopes
/// are adjacent when some pair of their representatives is adjacent in `g`.
pub fn build_slope_graph(g: &ScGraph) -> SlopeGraph {
    let mut groups: BTreeMap<Slope, Vec<u32>> = BTreeMap::new();
    for (i, sc) in g.scs.iter().enumerate() {
        groups.entry(sc.slope()).or_default().push(i as u32);
    }
    let slopes: Vec<Slope> = groups.keys().cloned().collect();
    let members: Vec<Vec<u32>> = groups.values().cloned().collect();
    let mut slope_of = vec![0u32; g.scs.len()];
    for (si, mem) in members.iter().enumerate() {
        for &v in mem {
            slope_of[v as usize] = si as u32;
        }
    }
    let mut edges = Vec::new();
    for (a, b) in g.graph.edges() {
        let (sa, sb) = (slope_of[a as usize], slope_of[b as usize]);
        if sa != sb {
            edges.push((sa.min(sb), sa.max(sb)));
        }
    }
    SlopeGraph {
        graph: Graph::from_edges(slopes.len(), &edges),
        slopes,
        members,
        l_sq: g.l_sq.clone(),
    }
}

/// One sampled pair of a quasi-isometry certificate.
#[derive(Clone, Debug)]
pub struct QiSample {
    pub u: u32,
    pub v: u32,
    pub d_orig: u32,
    pub d_quot: u32,
    pub holds: bool,
}

/// Certificate for the bounded-class quotient lemma: with classes of diameter
/// at most K, the quotient map is a (K+1, K)-quasi-isometry.
#[derive(Clone, Debug)]
pub struct QuotientCertificate {
    pub k: u32,
    pub multiplicative: u32,
    pub additive: u32,
    pub samples: Vec<QiSample>,
    pub holds: bool,
}

/// Quotient of `g` by a partition whose classes must have diameter <= K in
/// `g` (verified exactly). The certificate samples vertex pairs and checks
///   (K+1)^{-1} d - K <= d_quot <= (K+1) d + K
/// on each; the distances are this graph's own (finite) distances, so the
/// certificate is exact for `g` itself.
pub fn quotient_graph(
    g: &Graph,
    classes: &[Vec<u32>],
    k: u32,
    sample_count: usize,
    seed: u64,
) -> Result<(Graph, Vec<u32>, QuotientCertificate), GraphError> {
    let n = g.len();
    let mut class_of = vec![u32::MAX; n];
    for (ci, class) in classes.iter().enumerate() {
        if class.is_empty() {
            return Err(GraphError::InvalidPartition(format!("class {ci} is empty")));
        }
        for &v in class {
            if v as usize >= n {
                return Err(GraphError::UnknownVertex(v as usize));
            }
            if class_of[v as usize] != u32::MAX {
                return Err(GraphError::InvalidPartition(format!(
                    "vertex {v} appears in two classes"
                )));
            }
            class_of[v as usize] = ci as u32;
        }
    }
    if let Some(v) = class_of.iter().position(|&c| c == u32::MAX) {
        return Err(GraphError::InvalidPartition(format!(
            "vertex {v} is in no class"
        )));
    }
    // Verify class diameters in g.
    for (ci, class) in classes.iter().enumerate() {
        for &v in class {
            let dist = g.distances_from(v as usize);
            for &w in class {
                match dist[w as usize] {
                    Some(d) if d <= k => {}
                    Some(d) => {
                        return Err(GraphError::ClassDiameterExceeded {
                            class: ci,
                            diameter: d,
                            k,
                        })
                    }
                    None => {
                        return Err(GraphError::ClassDiameterExceeded {
                            class: ci,
                            diameter: u32::MAX,
                            k,
                        })
                    }
                }
            }
        }
    }
    let mut edges = Vec::new();
    for (a, b) in g.edges() {
        let (ca, cb) = (class_of[a as usize], class_of[b as usize]);
        if ca != cb {
            edges.push((ca.min(cb), ca.max(cb)));
        }
    }
    let q = Graph::from_edges(classes.len(), &edges);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(sample_count);
    let mut holds = true;
    for _ in 0..sample_count {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        let (Some(d), Some(dq)) = (
            g.bfs_distance(u, v),
            q.bfs_distance(class_of[u] as usize, class_of[v] as usize),
        ) else {
            continue;
        };
        // d <= (K+1)(dq + K)  and  dq <= (K+1) d + K
        let lower_ok = (d as u64) <= (k as u64 + 1) * (dq as u64 + k as u64);
        let upper_ok = (dq as u64) <= (k as u64 + 1) * (d as u64) + k as u64;
        let ok = lower_ok && upper_ok;
        holds &= ok;
        samples.push(QiSample {
            u: u as u32,
            v: v as u32,
            d_orig: d,
            d_quot: dq,
            holds: ok,
        });
    }
    Ok((
        q,
        class_of,
        QuotientCertificate {
            k,
            multiplicative: k + 1,
            additive: k,
            samples,
            holds,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::q_i64;
    use crate::saddle::tests::{l_origami, torus};

    #[test]
    fn torus_sc_graph_at_norm_two() {
        let tr = torus();
        let g = build_sc_graph(&tr, &q_i64(2));
        assert_eq!(g.scs.len(), 4);
        // Edges: exactly the |det| = 1 pairs; {(1,1),(-1,1)} crosses.
        let hol: Vec<(i64, i64)> = crate::saddle::tests::holonomies(&g.scs);
        let idx = |h: (i64, i64)| hol.iter().position(|&x| x == h).unwrap();
        let e11 = idx((1, 1));
        let em11 = idx((-1, 1));
        assert!(!g.graph.has_edge(e11, em11));
        assert_eq!(g.graph.edges().len(), 5); // K4 minus one edge
        for v in 0..4 {
            assert!(!g.graph.has_edge(v, v));
        }
    }

    #[test]
    fn l_origami_unit_graph_is_complete() {
        let tr = l_origami();
        let g = build_sc_graph(&tr, &q_i64(1));
        assert_eq!(g.scs.len(), 6);
        assert_eq!(g.graph.edges().len(), 15);
    }

    #[test]
    fn torus_slope_graph_is_farey() {
        let tr = torus();
        let g = build_sc_graph(&tr, &q_i64(13));
        let sg = build_slope_graph(&g);
        // On the once-marked torus parallel classes are singletons.
        assert_eq!(sg.slopes.len(), g.scs.len());
        for i in 0..sg.slopes.len() {
            for j in (i + 1)..sg.slopes.len() {
                assert_eq!(
                    sg.graph.has_edge(i, j),
                    crate::farey::adjacent(&sg.slopes[i], &sg.slopes[j]),
                    "{} vs {}",
                    sg.slopes[i],
                    sg.slopes[j]
                );
            }
        }
    }

    #[test]
    fn bfs_examples() {
        let tr = torus();
        let g = build_sc_graph(&tr, &q_i64(13));
        let sg = build_slope_graph(&g);
        let v = sg.index_of(&Slope::vertical()).unwrap();
        let s23 = sg.index_of(&Slope::of_i64(3, 2)).unwrap();
        assert_eq!(sg.graph.bfs_distance(v, v), Some(0));
        assert_eq!(sg.graph.bfs_distance(v, s23), Some(2));
        let one = sg.index_of(&Slope::of_i64(1, 1)).unwrap();
        assert_eq!(sg.graph.bfs_distance(v, one), Some(1));
    }

    #[test]
    fn gromov_product_basics() {
        // Path graph a - b - c.
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(g.gromov_product(0, 2, 1), Some(q_i64(0)));
        assert_eq!(g.gromov_product(0, 0, 2), Some(q_i64(2))); // x = y -> d(x,z)
        assert_eq!(g.gromov_product(1, 2, 1), Some(q_i64(0))); // z = x -> 0
        // (x|y)_z + (x|z)_y = d(y,z)
        let gp = |x, y, z| g.gromov_product(x, y, z).unwrap();
        assert_eq!(gp(0, 2, 1) + gp(0, 1, 2), q_i64(1));
    }

    #[test]
    fn k_centre_on_tree_is_median() {
        // Star with three legs of length 2: the median is the centre vertex 0.
        let g = Graph::from_edges(
            7,
            &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)],
        );
        let c = g.find_k_centre(2, 4, 6, 0).unwrap();
        assert_eq!(c.vertex, 0);
        assert_eq!(c.dist_to_sides, [0, 0, 0]);
        // Degenerate triangle.
        let c2 = g.find_k_centre(2, 2, 2, 0).unwrap();
        assert_eq!(c2.dist_to_sides, [0, 0, 0]);
        assert_eq!(c2.vertex, 2);
    }

    #[test]
    fn quotient_trivial_partition_is_isomorphic() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let classes: Vec<Vec<u32>> = (0..4).map(|i| vec![i as u32]).collect();
        let (q, _, cert) = quotient_graph(&g, &classes, 0, 50, 7).unwrap();
        assert_eq!(q.edges(), g.edges());
        assert!(cert.holds);
        assert_eq!((cert.multiplicative, cert.additive), (1, 0));
    }

    #[test]
    fn quotient_parallel_classes_give_slope_graph() {
        let tr = l_origami();
        let g = build_sc_graph(&tr, &q_i64(2));
        let sg = build_slope_graph(&g);
        // Parallel saddle connections are pairwise disjoint: diameter <= 1.
        let (q, _, cert) = quotient_graph(&g.graph, &sg.classes(), 1, 200, 11).unwrap();
        assert!(cert.holds);
        assert_eq!((cert.multiplicative, cert.additive), (2, 1));
        assert_eq!(q.edges(), sg.graph.edges());
    }

    #[test]
    fn quotient_rejects_bad_partitions() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        assert!(matches!(
            quotient_graph(&g, &[vec![0, 1]], 1, 10, 0),
            Err(GraphError::InvalidPartition(_))
        ));
        assert!(matches!(
            quotient_graph(&g, &[vec![0, 2], vec![1]], 1, 10, 0),
            Err(GraphError::ClassDiameterExceeded { .. })
        ));
    }

    #[test]
    fn sc_graph_monotone_in_truncation() {
        let tr = torus();
        let small = build_sc_graph(&tr, &q_i64(5));
        let big = build_sc_graph(&tr, &q_i64(13));
        // Induced subgraph: every small vertex appears in big with the same
        // adjacency restricted to small vertices.
        for (i, sc) in small.scs.iter().enumerate() {
            let bi = big.index_of(sc).unwrap();
            for (j, sc2) in small.scs.iter().enumerate().skip(i + 1) {
                let bj = big.index_of(sc2).unwrap();
                assert_eq!(small.graph.has_edge(i, j), big.graph.has_edge(bi, bj));
            }
        }
        // Distances can only shrink as vertices are added.
        for i in 0..small.scs.len() {
            for j in 0..small.scs.len() {
                let bi = big.index_of(&small.scs[i]).unwrap();
                let bj = big.index_of(&small.scs[j]).unwrap();
                if let Some(ds) = small.graph.bfs_distance(i, j) {
                    let db = big.graph.bfs_distance(bi, bj).unwrap();
                    assert!(db <= ds);
                }
            }
        }
    }
}
