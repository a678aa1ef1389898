//! Balls in the graph of slopes, complement intervals, the Hasse tree, and
//! the slice decomposition with its quasi-isometry certificates.
//!
//! The interval structure here is the finite shadow of the paper-level
//! construction: computed balls are BFS balls of the truncated slope graph
//! (distances are upper bounds, so computed balls are contained in the true
//! ones), and the complement intervals are the circular gaps between the
//! enumerated ball slopes. Nodes whose interval shares an endpoint with the
//! parent's are marked `frontier`: the enumeration is not yet deep enough to
//! exhibit their subdivision, and structural claims are asserted off the
//! frontier only.

use crate::cert::Semantics;
use crate::graph::{Graph, ScGraph, SlopeGraph};
use crate::saddle::Slope;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuasitreeError {
    #[error("basepoint slope is not a vertex of the truncated slope graph")]
    UnknownBasepoint,
    #[error("distance stability failed at slope {slope}: d = {d_shallow:?} at the working truncation but {d_deep:?} one step deeper; rerun with l_sq >= {suggest_l_sq}")]
    StabilityRefusal {
        slope: String,
        d_shallow: Option<u32>,
        d_deep: Option<u32>,
        suggest_l_sq: String,
    },
    #[error("node {0} not in the tree")]
    UnknownNode(usize),
}

/// A complement interval of a ball: the open circular arc from `lo` to `hi`
/// (in the slope angle order); `lo == hi` encodes the full circle minus the
/// basepoint at level 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalNode {
    pub level: u32,
    pub lo: Slope,
    pub hi: Slope,
    pub parent: Option<u32>,
    pub frontier: bool,
}

impl IntervalNode {
    /// Open-interval membership in the circular order.
    pub fn contains(&self, s: &Slope) -> bool {
        if self.lo == self.hi {
            return s != &self.lo;
        }
        if self.lo < self.hi {
            &self.lo < s && s < &self.hi
        } else {
            s > &self.lo || s < &self.hi
        }
    }
}

/// The Hasse diagram of the complement intervals for levels 0..=k_max,
/// rooted at the full circle minus the basepoint.
#[derive(Clone, Debug)]
pub struct HasseTree {
    pub theta0: Slope,
    pub nodes: Vec<IntervalNode>,
    pub children: Vec<Vec<u32>>,
    /// Node ids per level.
    pub levels: Vec<Vec<u32>>,
}

impl HasseTree {
    pub fn root(&self) -> u32 {
        self.levels[0][0]
    }

    /// Exact distance in the finite tree.
    pub fn tree_distance(&self, i: u32, j: u32) -> Result<u32, QuasitreeError> {
        for v in [i, j] {
            if v as usize >= self.nodes.len() {
                return Err(QuasitreeError::UnknownNode(v as usize));
            }
        }
        let (mut a, mut b) = (i, j);
        let mut d = 0;
        while self.nodes[a as usize].level > self.nodes[b as usize].level {
            a = self.nodes[a as usize].parent.unwrap();
            d += 1;
        }
        while self.nodes[b as usize].level > self.nodes[a as usize].level {
            b = self.nodes[b as usize].parent.unwrap();
            d += 1;
        }
        while a != b {
            a = self.nodes[a as usize].parent.unwrap();
            b = self.nodes[b as usize].parent.unwrap();
            d += 2;
        }
        Ok(d)
    }

    pub fn is_tree(&self) -> bool {
        // Rooted, acyclic, connected by construction; verify parent levels.
        self.nodes.iter().enumerate().all(|(i, n)| match n.parent {
            None => n.level == 0 && i as u32 == self.root(),
            Some(p) => self.nodes[p as usize].level + 1 == n.level,
        })
    }
}

/// BFS ball of radius r about the basepoint, as sorted slope-graph vertex ids
/// (the vertex order is the circular slope order). The computed ball is
/// contained in the true ball B(theta0, r).
pub fn ball(gs: &SlopeGraph, theta0: &Slope, r: u32) -> Result<Vec<u32>, QuasitreeError> {
    let b = gs
        .index_of(theta0)
        .ok_or(QuasitreeError::UnknownBasepoint)?;
    let dist = gs.graph.distances_from(b);
    Ok((0..gs.slopes.len() as u32)
        .filter(|&i| matches!(dist[i as usize], Some(d) if d <= r))
        .collect())
}

/// The circular gaps between consecutive ball slopes, as interval nodes at
/// the given level (parents unset).
pub fn complement_intervals(gs: &SlopeGraph, ball_ids: &[u32], level: u32) -> Vec<IntervalNode> {
    assert!(!ball_ids.is_empty());
    let n = ball_ids.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let lo = gs.slopes[ball_ids[i] as usize].clone();
        let hi = gs.slopes[ball_ids[(i + 1) % n] as usize].clone();
        out.push(IntervalNode {
            level,
            lo,
            hi,
            parent: None,
            frontier: false,
        });
    }
    out
}

/// Build the interval tree for levels 0..=k_max over the truncated slope
/// graph, recording frontier flags and per-node child counts.
pub fn build_interval_tree(
    gs: &SlopeGraph,
    theta0: &Slope,
    k_max: u32,
) -> Result<HasseTree, QuasitreeError> {
    let b0 = gs
        .index_of(theta0)
        .ok_or(QuasitreeError::UnknownBasepoint)?;
    let dist = gs.graph.distances_from(b0);
    let mut nodes: Vec<IntervalNode> = vec![IntervalNode {
        level: 0,
        lo: theta0.clone(),
        hi: theta0.clone(),
        parent: None,
        frontier: false,
    }];
    let mut levels: Vec<Vec<u32>> = vec![vec![0]];
    for k in 1..=k_max {
        let ball_ids: Vec<u32> = (0..gs.slopes.len() as u32)
            .filter(|&i| matches!(dist[i as usize], Some(d) if d <= k))
            .collect();
        let gaps = complement_intervals(gs, &ball_ids, k);
        let mut level_ids = Vec::with_capacity(gaps.len());
        for mut gap in gaps {
            // Locate the parent: the unique level-(k-1) interval whose
            // closure contains this gap.
            let parent = levels[(k - 1) as usize]
                .iter()
                .copied()
                .find(|&p| {
                    let pn = &nodes[p as usize];
                    (gap.lo == pn.lo || pn.contains(&gap.lo))
                        && (gap.hi == pn.hi || pn.contains(&gap.hi))
                })
                .expect("every gap refines a unique parent gap");
            let pn = &nodes[parent as usize];
            gap.parent = Some(parent);
            // A child sharing an endpoint with its parent signals that the
            // enumeration is too shallow to exhibit the subdivision there
            // (true intervals accumulate ball slopes at both endpoints).
            gap.frontier = pn.frontier || gap.lo == pn.lo || gap.hi == pn.hi;
            let id = nodes.len() as u32;
            nodes.push(gap);
            level_ids.push(id);
        }
        levels.push(level_ids);
    }
    let mut children = vec![Vec::new(); nodes.len()];
    for (i, n) in nodes.iter().enumerate() {
        if let Some(p) = n.parent {
            children[p as usize].push(i as u32);
        }
    }
    Ok(HasseTree {
        theta0: theta0.clone(),
        nodes,
        children,
        levels,
    })
}

/// The slice decomposition: every slope with stabilized distance d <= k_max+3
/// is assigned to the root slice (d <= 3) or to the unique level-(d-3)
/// interval containing it.
#[derive(Clone, Debug)]
pub struct SliceDecomposition {
    pub theta0: Slope,
    pub k_max: u32,
    /// Per slope-graph vertex: assigned tree node, or None outside the range.
    pub assignment: Vec<Option<u32>>,
    /// Per tree node: member slope-graph vertices.
    pub members: Vec<Vec<u32>>,
    /// Stabilized distances d(theta0, ·).
    pub distances: Vec<Option<u32>>,
}

/// Build slices over the truncated slope graph `gs`, with the stability
/// protocol: a distance is trusted only when it is unchanged in `gs_deeper`
/// (the same construction one truncation step deeper). A distance within the
/// working range that changes triggers a refusal naming the deeper bound.
pub fn build_slices(
    gs: &SlopeGraph,
    gs_deeper: &SlopeGraph,
    theta0: &Slope,
    k_max: u32,
) -> Result<(HasseTree, SliceDecomposition), QuasitreeError> {
    let b = gs
        .index_of(theta0)
        .ok_or(QuasitreeError::UnknownBasepoint)?;
    let b2 = gs_deeper
        .index_of(theta0)
        .ok_or(QuasitreeError::UnknownBasepoint)?;
    let dist = gs.graph.distances_from(b);
    let dist2 = gs_deeper.graph.distances_from(b2);
    let range = k_max + 4;
    for (i, s) in gs.slopes.iter().enumerate() {
        let d1 = dist[i];
        let d2 = gs_deeper.index_of(s).and_then(|j| dist2[j]);
        let in_range = matches!(d1, Some(d) if d <= range) || matches!(d2, Some(d) if d <= range);
        if in_range && d1 != d2 {
            return Err(QuasitreeError::StabilityRefusal {
                slope: s.to_string(),
                d_shallow: d1,
                d_deep: d2,
                suggest_l_sq: gs_deeper.l_sq.to_string(),
            });
        }
    }
    let tree = build_interval_tree(gs, theta0, k_max)?;
    let mut assignment: Vec<Option<u32>> = vec![None; gs.slopes.len()];
    let mut members = vec![Vec::new(); tree.nodes.len()];
    for (i, s) in gs.slopes.iter().enumerate() {
        let Some(d) = dist[i] else { continue };
        if d > k_max + 3 {
            continue;
        }
        let node = if d <= 3 {
            tree.root()
        } else {
            let k = d - 3;
            *tree.levels[k as usize]
                .iter()
                .find(|&&n| tree.nodes[n as usize].contains(s))
                .expect("slope at distance k+3 lies outside B(k), hence in a unique gap")
        };
        assignment[i] = Some(node);
        members[node as usize].push(i as u32);
    }
    Ok((
        tree,
        SliceDecomposition {
            theta0: theta0.clone(),
            k_max,
            assignment,
            members,
            distances: dist,
        },
    ))
}

/// A violation of the slice-adjacency <-> Hasse-adjacency correspondence.
#[derive(Clone, Debug)]
pub enum HasseViolation {
    /// Adjacent slopes whose slices are neither equal nor Hasse-adjacent.
    EdgeNotHasse { u: u32, v: u32 },
    /// A non-frontier Hasse edge with no slope edge between the two slices.
    HasseNotEdge { parent: u32, child: u32 },
}

/// Check both directions of the slice/Hasse correspondence on the computed
/// range (the reverse direction only off the frontier and between non-empty
/// slices, where the truncation exhibits the structure).
pub fn check_hasse_correspondence(
    gs: &SlopeGraph,
    tree: &HasseTree,
    slices: &SliceDecomposition,
) -> Vec<HasseViolation> {
    let mut bad = Vec::new();
    let hasse_adjacent = |a: u32, b: u32| -> bool {
        tree.nodes[a as usize].parent == Some(b) || tree.nodes[b as usize].parent == Some(a)
    };
    for (u, v) in gs.graph.edges() {
        let (Some(a), Some(b)) = (slices.assignment[u as usize], slices.assignment[v as usize])
        else {
            continue;
        };
        if a != b && !hasse_adjacent(a, b) {
            bad.push(HasseViolation::EdgeNotHasse { u, v });
        }
    }
    for (child_id, node) in tree.nodes.iter().enumerate() {
        let Some(parent) = node.parent else { continue };
        if node.frontier {
            continue;
        }
        let (cm, pm) = (
            &slices.members[child_id],
            &slices.members[parent as usize],
        );
        if cm.is_empty() || pm.is_empty() {
            continue;
        }
        let linked = cm.iter().any(|&u| {
            pm.iter()
                .any(|&v| gs.graph.has_edge(u as usize, v as usize))
        });
        if !linked {
            bad.push(HasseViolation::HasseNotEdge {
                parent,
                child: child_id as u32,
            });
        }
    }
    bad
}

/// Diameter upper bound of each slice (pairwise BFS over the slope graph) and
/// of its saddle-connection preimage. `None` for slices with < 2 members.
pub fn slice_diameters(
    gs: &SlopeGraph,
    sc_graph: &ScGraph,
    slices: &SliceDecomposition,
) -> Vec<(Option<u32>, Option<u32>)> {
    let sc_g: &Graph = &sc_graph.graph;
    slices
        .members
        .iter()
        .map(|mem| {
            let slope_diam = pairwise_diameter(&gs.graph, mem);
            let mut sc_ids: Vec<u32> = Vec::new();
            for &m in mem {
                sc_ids.extend(gs.members[m as usize].iter().copied());
            }
            let sc_diam = pairwise_diameter(sc_g, &sc_ids);
            (slope_diam, sc_diam)
        })
        .collect()
}

fn pairwise_diameter(g: &Graph, verts: &[u32]) -> Option<u32> {
    if verts.len() < 2 {
        return None;
    }
    let mut best = 0;
    for &u in verts {
        let dist = g.distances_from(u as usize);
        for &v in verts {
            match dist[v as usize] {
                Some(d) => best = best.max(d),
                None => return Some(u32::MAX),
            }
        }
    }
    Some(best)
}

/// One sampled pair of the tree quasi-isometry certificate.
#[derive(Clone, Debug)]
pub struct QiPair {
    pub x: u32,
    pub y: u32,
    pub d_graph: u32,
    pub d_tree: u32,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct QiReport {
    pub multiplicative: u32,
    pub additive: u32,
    pub samples: Vec<QiPair>,
    pub holds: bool,
    pub semantics: Semantics,
}

/// Check d_T(I x, I y) <= K d(x,y) + C and d(x,y) <= K (d_T + C) over
/// stratified sampled pairs of assigned vertices. `dist` supplies the graph
/// distance (exact oracle distances give proves-true-claim semantics; BFS
/// upper bounds give at-truncation).
pub fn qi_certificate(
    tree: &HasseTree,
    assignment: &[Option<u32>],
    dist: &dyn Fn(u32, u32) -> Option<u32>,
    k_mult: u32,
    c_add: u32,
    sample_count: usize,
    seed: u64,
    semantics: Semantics,
) -> QiReport {
    let verts: Vec<u32> = (0..assignment.len() as u32)
        .filter(|&i| assignment[i as usize].is_some())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Stratify into near / mid / far buckets by graph distance.
    let mut buckets: [Vec<(u32, u32, u32)>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    let mut attempts = 0usize;
    while buckets.iter().map(Vec::len).sum::<usize>() < 3 * sample_count
        && attempts < 200 * sample_count
    {
        attempts += 1;
        let (Some(&x), Some(&y)) = (verts.choose(&mut rng), verts.choose(&mut rng)) else {
            break;
        };
        let Some(d) = dist(x, y) else { continue };
        let b = if d <= 2 {
            0
        } else if d <= 5 {
            1
        } else {
            2
        };
        if buckets[b].len() < sample_count {
            buckets[b].push((x, y, d));
        }
    }
    let mut samples = Vec::new();
    let mut holds = true;
    for (x, y, d) in buckets.into_iter().flatten() {
        let ix = assignment[x as usize].unwrap();
        let iy = assignment[y as usize].unwrap();
        let dt = tree.tree_distance(ix, iy).expect("assigned nodes");
        let up = (dt as u64) <= (k_mult as u64) * (d as u64) + c_add as u64;
        let lo = (d as u64) <= (k_mult as u64) * (dt as u64 + c_add as u64);
        let ok = up && lo;
        holds &= ok;
        samples.push(QiPair {
            x,
            y,
            d_graph: d,
            d_tree: dt,
            holds: ok,
        });
    }
    QiReport {
        multiplicative: k_mult,
        additive: c_add,
        samples,
        holds,
        semantics,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::q_i64;
    use crate::graph::{build_sc_graph, build_slope_graph};
    use crate::saddle::tests::torus;

    fn slope(p: i64, q: i64) -> Slope {
        Slope::of_i64(q, p)
    }

    fn torus_slope_graph(l_sq: i64) -> SlopeGraph {
        build_slope_graph(&build_sc_graph(&torus(), &q_i64(l_sq)))
    }

    #[test]
    fn ball_examples() {
        let gs = torus_slope_graph(50);
        let v = slope(1, 0);
        let b0 = ball(&gs, &v, 0).unwrap();
        assert_eq!(b0.len(), 1);
        assert_eq!(gs.slopes[b0[0] as usize], v);
        // r = 1: the vertical plus all enumerated integer slopes n/1, whose
        // canonical vectors have |x| = 1.
        use num_traits::Signed;
        let is_integer_slope = |s: &Slope| s.x.abs() == 1.into();
        let b1 = ball(&gs, &v, 1).unwrap();
        for &i in &b1 {
            let s = &gs.slopes[i as usize];
            assert!(s == &v || is_integer_slope(s), "unexpected {s}");
        }
        let integers = gs.slopes.iter().filter(|s| is_integer_slope(s)).count();
        assert_eq!(b1.len(), integers + 1);
        assert!(matches!(
            ball(&gs, &slope(1000, 7), 1),
            Err(QuasitreeError::UnknownBasepoint)
        ));
    }

    #[test]
    fn complement_interval_basics() {
        let gs = torus_slope_graph(50);
        let v = slope(1, 0);
        let b0 = ball(&gs, &v, 0).unwrap();
        let iv0 = complement_intervals(&gs, &b0, 0);
        assert_eq!(iv0.len(), 1);
        assert_eq!(iv0[0].lo, iv0[0].hi);
        assert!(iv0[0].contains(&slope(2, 3)));
        assert!(!iv0[0].contains(&v));

        let b1 = ball(&gs, &v, 1).unwrap();
        let iv1 = complement_intervals(&gs, &b1, 1);
        assert_eq!(iv1.len(), b1.len());
        // Nesting: every level-1 gap lies in the single level-0 interval.
        for g in &iv1 {
            assert!(iv0[0].contains(&g.lo) || g.lo == v);
        }
    }

    #[test]
    fn interval_tree_structure() {
        let gs = torus_slope_graph(200);
        let tree = build_interval_tree(&gs, &slope(1, 0), 2).unwrap();
        assert!(tree.is_tree());
        assert_eq!(tree.levels.len(), 3);
        assert_eq!(tree.levels[0].len(), 1);
        // Non-frontier children never share an endpoint with their parent.
        for (i, n) in tree.nodes.iter().enumerate() {
            if let Some(p) = n.parent {
                let pn = &tree.nodes[p as usize];
                if !n.frontier {
                    assert!(n.lo != pn.lo && n.hi != pn.hi, "node {i}");
                }
            }
        }
        // tree_distance examples
        let root = tree.root();
        let child = tree.children[root as usize][0];
        assert_eq!(tree.tree_distance(root, root).unwrap(), 0);
        assert_eq!(tree.tree_distance(root, child).unwrap(), 1);
        if tree.children[root as usize].len() > 1 {
            let sib = tree.children[root as usize][1];
            assert_eq!(tree.tree_distance(child, sib).unwrap(), 2);
        }
    }

    #[test]
    fn subdivision_grows_with_truncation() {
        let shallow = torus_slope_graph(100);
        let deep = torus_slope_graph(400);
        let t1 = build_interval_tree(&shallow, &slope(1, 0), 1).unwrap();
        let t2 = build_interval_tree(&deep, &slope(1, 0), 1).unwrap();
        // Child count of the root is non-decreasing (strictly grows here).
        assert!(t2.children[t2.root() as usize].len() > t1.children[t1.root() as usize].len());
    }

    #[test]
    fn slices_partition_and_root_is_b3() {
        let gs = torus_slope_graph(200);
        let deeper = torus_slope_graph(260);
        let v = slope(1, 0);
        let (tree, slices) = build_slices(&gs, &deeper, &v, 1).unwrap();
        // Root slice = all slopes at distance <= 3.
        let root = tree.root();
        for (i, d) in slices.distances.iter().enumerate() {
            match (d, slices.assignment[i]) {
                (Some(d), Some(node)) if *d <= 3 => assert_eq!(node, root),
                (Some(d), Some(node)) => {
                    assert_eq!(tree.nodes[node as usize].level, *d - 3);
                    assert!(tree.nodes[node as usize].contains(&gs.slopes[i]));
                }
                (Some(d), None) => assert!(*d > slices.k_max + 3),
                (None, a) => assert!(a.is_none()),
            }
        }
        // Each assigned slope in exactly one slice.
        let total: usize = slices.members.iter().map(Vec::len).sum();
        let assigned = slices.assignment.iter().flatten().count();
        assert_eq!(total, assigned);
    }

    #[test]
    fn hasse_correspondence_on_torus() {
        let gs = torus_slope_graph(200);
        let deeper = torus_slope_graph(260);
        let (tree, slices) = build_slices(&gs, &deeper, &slope(1, 0), 1).unwrap();
        let bad = check_hasse_correspondence(&gs, &tree, &slices);
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn stability_protocol_refuses_on_changed_distance() {
        // Synthetic shallow/deeper slope graphs: the deeper one reveals a
        // shortcut for an in-range distance, so build_slices must refuse.
        use crate::graph::Graph;
        let slopes = vec![
            Slope::of_i64(1, 0),
            Slope::of_i64(1, 1),
            Slope::of_i64(1, 2),
            Slope::vertical(),
        ];
        let singleton = |n: usize| (0..n as u32).map(|i| vec![i]).collect::<Vec<_>>();
        let shallow = SlopeGraph {
            graph: Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]),
            slopes: slopes.clone(),
            members: singleton(4),
            l_sq: q_i64(4),
        };
        let deeper = SlopeGraph {
            graph: Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]),
            slopes: slopes.clone(),
            members: singleton(4),
            l_sq: q_i64(5),
        };
        match build_slices(&shallow, &deeper, &slopes[0], 0) {
            Err(QuasitreeError::StabilityRefusal {
                slope,
                d_shallow,
                d_deep,
                suggest_l_sq,
            }) => {
                assert_eq!(slope, "1/0");
                assert_eq!(d_shallow, Some(3));
                assert_eq!(d_deep, Some(1));
                assert_eq!(suggest_l_sq, "5");
            }
            other => panic!("expected refusal, got {other:?}"),
        }
        // With stable inputs the same basepoint succeeds.
        assert!(build_slices(&shallow, &shallow, &slopes[0], 0).is_ok());
    }

    #[test]
    fn qi_certificate_on_torus_with_oracle() {
        let gs = torus_slope_graph(200);
        let deeper = torus_slope_graph(260);
        let (tree, slices) = build_slices(&gs, &deeper, &slope(1, 0), 2).unwrap();
        let gs_ref = &gs;
        let dist = move |x: u32, y: u32| -> Option<u32> {
            Some(crate::farey::distance(
                &gs_ref.slopes[x as usize],
                &gs_ref.slopes[y as usize],
            ))
        };
        let report = qi_certificate(
            &tree,
            &slices.assignment,
            &dist,
            18,
            17,
            30,
            17,
            Semantics::ProvesTrueClaim,
        );
        assert!(report.holds);
        assert!(!report.samples.is_empty());
    }
}
