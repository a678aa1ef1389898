//! The reproducible certificate suite: enumerate, build the graphs, sample
//! ladder/bottleneck/linking/centre instances, build the quasitree, and emit
//! every certificate with its artifacts. A fixed seed determines all
//! sampling; two runs with equal config produce byte-identical outputs.

use crate::cert::{csv, graph_dot, CertKind, Certificate, Semantics};
use crate::geom::Q;
use crate::graph::{build_sc_graph, build_slope_graph, quotient_graph, Graph};
use crate::ladder::{
    check_bottleneck, check_ladder_properties, check_linking, four_centre, ladder_paths,
    FourCentreOutcome, LinkingOutcome,
};
use crate::quasitree::{
    build_slices, check_hasse_correspondence, qi_certificate, slice_diameters, QuasitreeError,
};
use crate::saddle::{SaddleConnection, Slope};
use crate::tri::Triangulation;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub l_sq: Q,
    pub theta0: Slope,
    pub k_max: u32,
    pub samples: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            l_sq: crate::geom::q_i64(16),
            theta0: Slope::vertical(),
            k_max: 1,
            samples: 8,
            seed: 1,
        }
    }
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("input error: {0}")]
    Input(String),
    #[error(transparent)]
    Stability(QuasitreeError),
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Clone, Debug)]
pub struct SuiteOutput {
    pub certificates: Vec<Certificate>,
    /// (file name, content) pairs, deterministic order.
    pub files: Vec<(String, Vec<u8>)>,
}

impl SuiteOutput {
    pub fn all_pass(&self) -> bool {
        self.certificates.iter().all(|c| c.pass)
    }

    pub fn report(&self) -> String {
        let mut out = String::new();
        for c in &self.certificates {
            out.push_str(&c.render());
        }
        out
    }
}

fn sc_csv_row(sc: &SaddleConnection) -> Vec<String> {
    vec![
        sc.holonomy.x.to_string(),
        sc.holonomy.y.to_string(),
        sc.start.to_string(),
        sc.end.to_string(),
        sc.slope().to_string(),
    ]
}

/// A simple random path between two vertices: a randomized depth-first search
/// with seeded neighbor order.
pub fn random_path(g: &Graph, u: usize, v: usize, rng: &mut ChaCha8Rng) -> Option<Vec<u32>> {
    let n = g.len();
    let mut seen = vec![false; n];
    let mut stack: Vec<(usize, Vec<u32>)> = vec![(u, vec![u as u32])];
    seen[u] = true;
    while let Some((x, path)) = stack.pop() {
        if x == v {
            return Some(path);
        }
        let mut nbrs: Vec<u32> = g.neighbors(x).to_vec();
        use rand::seq::SliceRandom;
        nbrs.shuffle(rng);
        for y in nbrs {
            if !seen[y as usize] {
                seen[y as usize] = true;
                let mut p = path.clone();
                p.push(y);
                stack.push((y as usize, p));
            }
        }
    }
    None
}

/// Run the whole pipeline on a triangulated surface.
pub fn run_suite(tr: &Triangulation, cfg: &RunConfig) -> Result<SuiteOutput, SuiteError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut files: Vec<(String, Vec<u8>)> = Vec::new();
    let mut certs: Vec<Certificate> = Vec::new();

    // Stage 1: enumeration.
    let g_main = build_sc_graph(tr, &cfg.l_sq);
    if g_main.scs.is_empty() {
        return Err(SuiteError::Input(
            "length bound is below the systole; nothing to enumerate".into(),
        ));
    }
    files.push((
        "enumeration.csv".into(),
        csv(
            &["holonomy_x", "holonomy_y", "start", "end", "slope"],
            &g_main.scs.iter().map(sc_csv_row).collect::<Vec<_>>(),
        )
        .into_bytes(),
    ));

    // Stage 2: graphs.
    let sg_main = build_slope_graph(&g_main);
    let sc_labels: Vec<String> = g_main
        .scs
        .iter()
        .map(|s| format!("({},{})", s.holonomy.x, s.holonomy.y))
        .collect();
    files.push((
        "sc_graph.dot".into(),
        graph_dot("saddle_connections", &sc_labels, &g_main.graph.edges()).into_bytes(),
    ));
    let slope_labels: Vec<String> = sg_main.slopes.iter().map(|s| s.to_string()).collect();
    files.push((
        "slope_graph.dot".into(),
        graph_dot("slopes", &slope_labels, &sg_main.graph.edges()).into_bytes(),
    ));

    // Stage 3: sampled ladder pairs; entries may exceed the main truncation,
    // so certificates run on a covering graph.
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut attempts = 0;
    while pairs.len() < cfg.samples && attempts < 200 * cfg.samples.max(1) {
        attempts += 1;
        let i = rng.random_range(0..g_main.scs.len());
        let j = rng.random_range(0..g_main.scs.len());
        if i == j || g_main.scs[i].slope() == g_main.scs[j].slope() {
            continue;
        }
        pairs.push((i, j));
    }
    let mut ladder_rows: Vec<Vec<String>> = Vec::new();
    let mut ladder_violations = 0usize;
    let mut cover_l_sq = &cfg.l_sq * crate::geom::q_i64(4);
    let mut ladders = Vec::new();
    for (pid, &(i, j)) in pairs.iter().enumerate() {
        let alpha = &g_main.scs[i];
        let beta = &g_main.scs[j];
        let (l, r) = ladder_paths(tr, alpha, beta)
            .map_err(|e| SuiteError::Internal(format!("ladder construction: {e}")))?;
        let bad = check_ladder_properties(tr, alpha, beta, &l, &r);
        ladder_violations += bad.len();
        for path in [&l, &r] {
            for (k, e) in path.entries.iter().enumerate() {
                cover_l_sq = cover_l_sq.max(e.length_sq());
                ladder_rows.push(vec![
                    pid.to_string(),
                    format!("{:?}", path.side),
                    k.to_string(),
                    e.holonomy.x.to_string(),
                    e.holonomy.y.to_string(),
                    e.slope().to_string(),
                ]);
            }
        }
        ladders.push((i, j, l, r));
    }
    files.push((
        "ladders.csv".into(),
        csv(
            &["pair", "side", "i", "holonomy_x", "holonomy_y", "slope"],
            &ladder_rows,
        )
        .into_bytes(),
    ));
    certs.push(Certificate {
        kind: CertKind::LadderProperties,
        pass: ladder_violations == 0,
        constants: vec![("pairs".into(), pairs.len().to_string())],
        witnesses: vec![format!("violations={ladder_violations}")],
        semantics: Semantics::ProvesTrueClaim,
        notes: vec!["endpoints, pairwise disjointness, slope signs, monotonicity".into()],
    });

    // Stage 4: bottleneck certificates on a covering graph.
    let g_cover = build_sc_graph(tr, &cover_l_sq);
    let mut bottleneck_fail = 0usize;
    let mut bottleneck_instances = 0usize;
    for (i, j, l, r) in &ladders {
        let (Some(vi), Some(vj)) = (
            g_cover.index_of(&g_main.scs[*i]),
            g_cover.index_of(&g_main.scs[*j]),
        ) else {
            continue;
        };
        let Some(path) = random_path(&g_cover.graph, vj, vi, &mut rng) else {
            continue;
        };
        for lp in [l, r] {
            let ids: Vec<u32> = lp
                .entries
                .iter()
                .map(|e| {
                    g_cover
                        .index_of(e)
                        .expect("covering graph contains ladder entries")
                        as u32
                })
                .collect();
            let cert = check_bottleneck(&g_cover, &ids, &path)
                .map_err(|e| SuiteError::Internal(e.to_string()))?;
            bottleneck_instances += 1;
            if !cert.holds() {
                bottleneck_fail += 1;
            }
        }
    }
    certs.push(Certificate {
        kind: CertKind::Bottleneck,
        pass: bottleneck_fail == 0,
        constants: vec![
            ("neighbourhood".into(), "3".into()),
            ("instances".into(), bottleneck_instances.to_string()),
        ],
        witnesses: vec![format!("failures={bottleneck_fail}")],
        semantics: Semantics::ProvesTrueClaim,
        notes: vec!["found witnesses use upper-bound distances".into()],
    });

    // Stage 5: linking certificates (hypothesis-satisfying quadruples are
    // sampled by rejection; some surfaces admit none at this truncation).
    let cap = &cfg.l_sq * crate::geom::q_i64(8);
    let mut linking_found = 0usize;
    let mut linking_fail = 0usize;
    let mut linking_attempts = 0usize;
    while linking_found < cfg.samples && linking_attempts < 500 * cfg.samples.max(1) {
        linking_attempts += 1;
        let pick: Vec<&SaddleConnection> = (0..4)
            .filter_map(|_| g_main.scs.as_slice().choose(&mut rng))
            .collect();
        if pick.len() < 4 {
            break;
        }
        match check_linking(tr, pick[0], pick[1], pick[2], pick[3], &cap) {
            Ok(LinkingOutcome::Witness { .. }) => linking_found += 1,
            Ok(LinkingOutcome::TruncationFailure { .. }) => {
                linking_found += 1;
                linking_fail += 1;
            }
            Err(_) => {}
        }
    }
    certs.push(Certificate {
        kind: CertKind::Linking,
        pass: linking_fail == 0,
        constants: vec![
            ("distance".into(), "2".into()),
            ("quadruples".into(), linking_found.to_string()),
        ],
        witnesses: vec![format!("truncation_failures={linking_fail}")],
        semantics: Semantics::ProvesTrueClaim,
        notes: if linking_found == 0 {
            vec!["no hypothesis-satisfying quadruple at this truncation (vacuous on the once-marked torus)".into()]
        } else {
            Vec::new()
        },
    });

    // Stage 6: 4-centres on sampled triangles.
    let mut centre_fail = 0usize;
    let mut centre_instances = 0usize;
    for _ in 0..cfg.samples {
        let a = g_main.scs.as_slice().choose(&mut rng);
        let b = g_main.scs.as_slice().choose(&mut rng);
        let c = g_main.scs.as_slice().choose(&mut rng);
        let (Some(a), Some(b), Some(c)) = (a, b, c) else {
            continue;
        };
        if a.key() == b.key() || b.key() == c.key() || a.key() == c.key() {
            continue;
        }
        centre_instances += 1;
        match four_centre(tr, a, b, c, &g_cover)
            .map_err(|e| SuiteError::Internal(e.to_string()))?
        {
            FourCentreOutcome::Certified { .. } => {}
            FourCentreOutcome::NotFoundAtTruncation => centre_fail += 1,
        }
    }
    certs.push(Certificate {
        kind: CertKind::Centre,
        pass: centre_fail == 0,
        constants: vec![
            ("k".into(), "4".into()),
            ("triangles".into(), centre_instances.to_string()),
        ],
        witnesses: vec![format!("failures={centre_fail}")],
        semantics: Semantics::AtTruncation,
        notes: vec!["sides are within-truncation geodesics".into()],
    });

    // Stage 7: the parallel-class quotient is the slope graph, a (2,1)
    // quasi-isometry.
    let (quot, _, qcert) = quotient_graph(&g_main.graph, &sg_main.classes(), 1, 4 * cfg.samples, cfg.seed)
        .map_err(|e| SuiteError::Internal(e.to_string()))?;
    let quotient_matches = quot.edges() == sg_main.graph.edges();
    certs.push(Certificate {
        kind: CertKind::Qi,
        pass: qcert.holds && quotient_matches,
        constants: vec![
            ("multiplicative".into(), "2".into()),
            ("additive".into(), "1".into()),
            ("sampled_pairs".into(), qcert.samples.len().to_string()),
        ],
        witnesses: vec![format!(
            "quotient_equals_slope_graph={quotient_matches}"
        )],
        semantics: Semantics::ProvesTrueClaim,
        notes: vec!["parallel classes have diameter <= 1".into()],
    });

    // Stage 8: quasitree, slices, Hasse correspondence, and tree QI.
    let deeper_l_sq = &cfg.l_sq + (&cfg.l_sq / crate::geom::q_i64(4)).ceil();
    let g_deeper = build_sc_graph(tr, &deeper_l_sq);
    let sg_deeper = build_slope_graph(&g_deeper);
    let (tree, slices) = build_slices(&sg_main, &sg_deeper, &cfg.theta0, cfg.k_max)
        .map_err(SuiteError::Stability)?;
    // Tree DOT and slice CSV.
    let tree_labels: Vec<String> = tree
        .nodes
        .iter()
        .map(|n| {
            if n.lo == n.hi {
                format!("level 0: RP1 - {{{}}}", n.lo)
            } else {
                format!("level {}: ({}, {})", n.level, n.lo, n.hi)
            }
        })
        .collect();
    let tree_edges: Vec<(u32, u32)> = tree
        .nodes
        .iter()
        .enumerate()
        .filter_map(|(i, n)| n.parent.map(|p| (p, i as u32)))
        .collect();
    files.push((
        "tree.dot".into(),
        graph_dot("hasse_tree", &tree_labels, &tree_edges).into_bytes(),
    ));
    let mut slice_rows = Vec::new();
    for (i, s) in sg_main.slopes.iter().enumerate() {
        let (Some(node), Some(d)) = (slices.assignment[i], slices.distances[i]) else {
            continue;
        };
        slice_rows.push(vec![
            s.to_string(),
            tree.nodes[node as usize].level.to_string(),
            node.to_string(),
            d.to_string(),
        ]);
    }
    files.push((
        "slices.csv".into(),
        csv(&["slope", "level", "interval", "distance"], &slice_rows).into_bytes(),
    ));
    // Hasse checks.
    let hasse_bad = check_hasse_correspondence(&sg_main, &tree, &slices);
    certs.push(Certificate {
        kind: CertKind::Hasse,
        pass: tree.is_tree() && hasse_bad.is_empty(),
        constants: vec![
            ("nodes".into(), tree.nodes.len().to_string()),
            ("k_max".into(), cfg.k_max.to_string()),
        ],
        witnesses: vec![format!("violations={}", hasse_bad.len())],
        semantics: Semantics::AtTruncation,
        notes: vec!["slice adjacency <-> Hasse adjacency off the frontier".into()],
    });
    // Slice diameters (<= 17) and saddle-connection preimages (<= 29).
    let diam = slice_diameters(&sg_main, &g_main, &slices);
    let mut worst_slope = 0u32;
    let mut worst_sc = 0u32;
    let mut diam_ok = true;
    for (ds, dsc) in &diam {
        if let Some(d) = ds {
            worst_slope = worst_slope.max(*d);
            diam_ok &= *d <= 17;
        }
        if let Some(d) = dsc {
            worst_sc = worst_sc.max(*d);
            diam_ok &= *d <= 29;
        }
    }
    certs.push(Certificate {
        kind: CertKind::SliceDiameter,
        pass: diam_ok,
        constants: vec![
            ("slice_bound".into(), "17".into()),
            ("preimage_bound".into(), "29".into()),
        ],
        witnesses: vec![
            format!("max_slice_diameter={worst_slope}"),
            format!("max_preimage_diameter={worst_sc}"),
        ],
        semantics: Semantics::ProvesTrueClaim,
        notes: vec!["diameters are upper bounds, so the <= claims are sound".into()],
    });
    // Tree QI certificates: (18,17) on slopes, (30,29) on saddle connections.
    let sg_ref = &sg_main;
    let slope_dist =
        move |x: u32, y: u32| sg_ref.graph.bfs_distance(x as usize, y as usize);
    let qi_slopes = qi_certificate(
        &tree,
        &slices.assignment,
        &slope_dist,
        18,
        17,
        cfg.samples.max(4),
        cfg.seed ^ 0x5aa5,
        Semantics::AtTruncation,
    );
    // Saddle connection assignment: through the slope of each sc.
    let sc_assignment: Vec<Option<u32>> = g_main
        .scs
        .iter()
        .map(|sc| {
            sg_main
                .index_of(&sc.slope())
                .and_then(|si| slices.assignment[si])
        })
        .collect();
    let g_ref = &g_main;
    let sc_dist = move |x: u32, y: u32| g_ref.graph.bfs_distance(x as usize, y as usize);
    let qi_scs = qi_certificate(
        &tree,
        &sc_assignment,
        &sc_dist,
        30,
        29,
        cfg.samples.max(4),
        cfg.seed ^ 0xa55a,
        Semantics::AtTruncation,
    );
    for (name, rep) in [("slopes", &qi_slopes), ("saddle-connections", &qi_scs)] {
        certs.push(Certificate {
            kind: CertKind::Qi,
            pass: rep.holds,
            constants: vec![
                ("target".into(), name.into()),
                ("multiplicative".into(), rep.multiplicative.to_string()),
                ("additive".into(), rep.additive.to_string()),
                ("sampled_pairs".into(), rep.samples.len().to_string()),
            ],
            witnesses: rep
                .samples
                .iter()
                .filter(|s| !s.holds)
                .map(|s| format!("violation x={} y={} d={} dT={}", s.x, s.y, s.d_graph, s.d_tree))
                .collect(),
            semantics: rep.semantics,
            notes: Vec::new(),
        });
    }

    let mut out = SuiteOutput {
        certificates: certs,
        files,
    };
    out.files.push((
        "certificates.txt".into(),
        out.report().into_bytes(),
    ));
    Ok(out)
}
