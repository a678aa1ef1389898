//! Flat geodesics: transverse intersections, combinatorial arcs, funnel
//! straightening, and bicorn arcs.
//!
//! Arcs are tracked by their crossing sequences through the triangulation.
//! Straightening develops the crossed corridor into the plane and pulls the
//! arc taut with a funnel whose predicates are exact; a portal endpoint that
//! becomes collinear with a funnel leg is treated as lying on the geodesic,
//! splitting it there, so the output is the saddle-connection decomposition of
//! the geodesic representative.

use crate::geom::{cross_sign, HalfTrans, Pt, Q, SegHit};
use crate::saddle::{SaddleConnection, SegInTri};
use crate::tri::{Side, Triangulation};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ArcError {
    #[error("the two saddle connections are identical")]
    Identical,
    #[error("segment chain does not lie on this surface")]
    SurfaceMismatch,
    #[error("arc is degenerate (null-homotopic into a singularity)")]
    NullArc,
    #[error("invalid combinatorial arc: {0}")]
    InvalidArc(String),
    #[error("straightening invariant violated: {0}")]
    Internal(String),
}

/// A transverse interior intersection of two chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    /// Chart where the intersection was found.
    pub tri: usize,
    /// The point in that chart.
    pub point: Pt,
    /// (segment index, parameter) along the first chain.
    pub along_a: (usize, Q),
    /// (segment index, parameter) along the second chain.
    pub along_b: (usize, Q),
    /// Sign of cross(dir_a, dir_b) at the point (chart independent).
    pub sign: i8,
}

fn check_chain_on_surface(tr: &Triangulation, segs: &[SegInTri]) -> Result<(), ArcError> {
    for s in segs {
        if s.tri >= tr.num_triangles() {
            return Err(ArcError::SurfaceMismatch);
        }
        let v = tr.triangle(s.tri);
        for p in [&s.a, &s.b] {
            for e in 0..3 {
                if crate::geom::orient(&v[e], &v[(e + 1) % 3], p) < 0 {
                    return Err(ArcError::SurfaceMismatch);
                }
            }
        }
    }
    Ok(())
}

/// Homogeneous integer form of a segment endpoint pair, bounded so that 3x3
/// orientation determinants cannot overflow i128. Used as a fast certain-miss
/// filter before exact rational intersection.
#[derive(Clone, Copy)]
struct HSeg {
    a: [i128; 3],
    b: [i128; 3],
}

const HCOORD_BOUND: i128 = 1 << 30;

fn homog(p: &Pt) -> Option<[i128; 3]> {
    let dx = p.x.denom();
    let dy = p.y.denom();
    let l = dx.lcm(dy);
    let x: i128 = (p.x.numer() * (&l / dx)).try_into().ok()?;
    let y: i128 = (p.y.numer() * (&l / dy)).try_into().ok()?;
    let w: i128 = (&l).try_into().ok()?;
    if x.abs() < HCOORD_BOUND && y.abs() < HCOORD_BOUND && w < HCOORD_BOUND {
        Some([x, y, w])
    } else {
        None
    }
}

fn hseg(s: &SegInTri) -> Option<HSeg> {
    Some(HSeg {
        a: homog(&s.a)?,
        b: homog(&s.b)?,
    })
}

/// Sign of the orientation of homogeneous points (positive weights).
fn orient3(p: &[i128; 3], q: &[i128; 3], r: &[i128; 3]) -> i8 {
    let d = p[0] * (q[1] * r[2] - r[1] * q[2]) - p[1] * (q[0] * r[2] - r[0] * q[2])
        + p[2] * (q[0] * r[1] - r[0] * q[1]);
    match d.cmp(&0) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}

/// True when the closed segments certainly do not meet.
fn certainly_disjoint(x: &HSeg, y: &HSeg) -> bool {
    let s1 = orient3(&x.a, &x.b, &y.a);
    let s2 = orient3(&x.a, &x.b, &y.b);
    if s1 == s2 && s1 != 0 {
        return true;
    }
    let s3 = orient3(&y.a, &y.b, &x.a);
    let s4 = orient3(&y.a, &y.b, &x.b);
    s3 == s4 && s3 != 0
}

/// All transverse interior intersection points of two segment chains, ordered
/// along the first chain. Points at triangle vertices (singularities) and
/// parallel overlaps are not intersections.
pub fn chain_crossings(tr: &Triangulation, a: &[SegInTri], b: &[SegInTri]) -> Vec<Crossing> {
    // Key identifying a surface point: interior points by chart, edge points
    // by the canonical side of the undirected edge.
    #[derive(PartialEq, Eq, PartialOrd, Ord)]
    enum PtKey {
        Interior(usize, Pt),
        OnEdge(Side, Pt),
    }
    let mut by_tri: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (j, s) in b.iter().enumerate() {
        by_tri.entry(s.tri).or_default().push(j);
    }
    let ha: Vec<Option<HSeg>> = a.iter().map(hseg).collect();
    let hb: Vec<Option<HSeg>> = b.iter().map(hseg).collect();
    let mut found: BTreeMap<PtKey, Crossing> = BTreeMap::new();
    for (i, sa) in a.iter().enumerate() {
        let Some(bjs) = by_tri.get(&sa.tri) else {
            continue;
        };
        let da = sa.b.sub(&sa.a);
        for &j in bjs {
            let sb = &b[j];
            if let (Some(x), Some(y)) = (&ha[i], &hb[j]) {
                if certainly_disjoint(x, y) {
                    continue;
                }
            }
            let SegHit::Point { p, ta, tb } = crate::geom::seg_intersect(&sa.a, &sa.b, &sb.a, &sb.b)
            else {
                continue;
            };
            let db = sb.b.sub(&sb.a);
            let sgn = cross_sign(&da, &db);
            if sgn == 0 {
                continue;
            }
            let v = tr.triangle(sa.tri);
            if v.contains(&p) {
                continue;
            }
            let mut key = PtKey::Interior(sa.tri, p.clone());
            for e in 0..3 {
                if crate::geom::orient(&v[e], &v[(e + 1) % 3], &p) == 0 {
                    let side = Side::new(sa.tri, e);
                    let canon = tr.canonical_side(side);
                    // transition(canon) maps the partner chart (where p lives
                    // when side != canon) into the canonical chart.
                    let cp = if canon == side {
                        p.clone()
                    } else {
                        tr.transition(canon.tri, canon.edge).apply(&p)
                    };
                    key = PtKey::OnEdge(canon, cp);
                    break;
                }
            }
            let cand = Crossing {
                tri: sa.tri,
                point: p,
                along_a: (i, ta),
                along_b: (j, tb),
                sign: sgn,
            };
            found
                .entry(key)
                .and_modify(|c| {
                    debug_assert_eq!(c.sign, cand.sign);
                    if cand.along_a < c.along_a {
                        c.along_a = cand.along_a.clone();
                        c.tri = cand.tri;
                        c.point = cand.point.clone();
                    }
                    if cand.along_b < c.along_b {
                        c.along_b = cand.along_b.clone();
                    }
                })
                .or_insert(cand);
        }
    }
    let mut out: Vec<Crossing> = found.into_values().collect();
    out.sort_by(|x, y| x.along_a.cmp(&y.along_a));
    out
}

/// Precomputed per-chain data for repeated crossing tests.
pub struct ChainCache {
    by_tri: BTreeMap<usize, Vec<usize>>,
    h: Vec<Option<HSeg>>,
}

impl ChainCache {
    pub fn new(segs: &[SegInTri]) -> ChainCache {
        let mut by_tri: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (j, s) in segs.iter().enumerate() {
            by_tri.entry(s.tri).or_default().push(j);
        }
        ChainCache {
            by_tri,
            h: segs.iter().map(hseg).collect(),
        }
    }
}

/// Are two distinct chains transversely crossing somewhere? (Boolean-only
/// fast path of [`chain_crossings`]: any non-vertex, non-parallel meeting
/// point witnesses a crossing.)
fn chains_cross(
    tr: &Triangulation,
    a: &[SegInTri],
    ca: &ChainCache,
    b: &[SegInTri],
    cb: &ChainCache,
) -> bool {
    for (t, ais) in &ca.by_tri {
        let Some(bjs) = cb.by_tri.get(t) else {
            continue;
        };
        let v = tr.triangle(*t);
        for &i in ais {
            for &j in bjs {
                if let (Some(x), Some(y)) = (&ca.h[i], &cb.h[j]) {
                    if certainly_disjoint(x, y) {
                        continue;
                    }
                }
                let (sa, sb) = (&a[i], &b[j]);
                let SegHit::Point { p, .. } =
                    crate::geom::seg_intersect(&sa.a, &sa.b, &sb.a, &sb.b)
                else {
                    continue;
                };
                if v.contains(&p) {
                    continue;
                }
                if cross_sign(&sa.b.sub(&sa.a), &sb.b.sub(&sb.a)) == 0 {
                    continue;
                }
                return true;
            }
        }
    }
    false
}

fn same_geodesic(a: &SaddleConnection, b: &SaddleConnection) -> bool {
    if a.segs.len() != b.segs.len() || a.holonomy != b.holonomy {
        return false;
    }
    if a.segs == b.segs {
        return true;
    }
    a.segs
        .iter()
        .zip(b.segs.iter().rev())
        .all(|(x, y)| x.tri == y.tri && x.a == y.b && x.b == y.a)
}

/// Do the interiors of two saddle connections intersect transversely?
/// Identical or parallel saddle connections do not cross; meeting only at
/// singularities is not crossing.
pub fn crosses(tr: &Triangulation, a: &SaddleConnection, b: &SaddleConnection) -> bool {
    if same_geodesic(a, b) {
        return false;
    }
    chains_cross(
        tr,
        &a.segs,
        &ChainCache::new(&a.segs),
        &b.segs,
        &ChainCache::new(&b.segs),
    )
}

/// `crosses` against precomputed caches (for the all-pairs graph build).
pub fn crosses_with_cache(
    tr: &Triangulation,
    a: &SaddleConnection,
    ca: &ChainCache,
    b: &SaddleConnection,
    cb: &ChainCache,
) -> bool {
    if same_geodesic(a, b) {
        return false;
    }
    chains_cross(tr, &a.segs, ca, &b.segs, cb)
}

/// `crosses` with the surface-membership preconditions checked.
pub fn crosses_checked(
    tr: &Triangulation,
    a: &SaddleConnection,
    b: &SaddleConnection,
) -> Result<bool, ArcError> {
    check_chain_on_surface(tr, &a.segs)?;
    check_chain_on_surface(tr, &b.segs)?;
    Ok(crosses(tr, a, b))
}

/// Transverse interior intersections of two saddle connections, ordered along
/// the first. Saddle connections are geodesics, hence automatically in
/// minimal position; general arcs must be straightened first.
pub fn interior_intersections(
    tr: &Triangulation,
    a: &SaddleConnection,
    b: &SaddleConnection,
) -> Vec<Crossing> {
    if a.key() == b.key() {
        return Vec::new();
    }
    chain_crossings(tr, &a.segs, &b.segs)
}

/// An arc recorded combinatorially: endpoints at singular corners plus the
/// ordered sequence of crossed edges. `portals[i]` is an edge of the triangle
/// reached after `i` crossings, through which the arc exits it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialArc {
    pub start: (usize, usize),
    pub portals: Vec<Side>,
    pub end: (usize, usize),
}

impl CombinatorialArc {
    pub fn validate(&self, tr: &Triangulation) -> Result<(), ArcError> {
        let (t0, k0) = self.start;
        if t0 >= tr.num_triangles() || k0 >= 3 {
            return Err(ArcError::InvalidArc("start corner out of range".into()));
        }
        let (te, ke) = self.end;
        if te >= tr.num_triangles() || ke >= 3 {
            return Err(ArcError::InvalidArc("end corner out of range".into()));
        }
        let mut t = t0;
        for (i, p) in self.portals.iter().enumerate() {
            if p.tri != t || p.edge >= 3 {
                return Err(ArcError::InvalidArc(format!(
                    "portal {i} is not an edge of the current triangle"
                )));
            }
            t = tr.opposite(p.tri, p.edge).0.tri;
        }
        if te != t {
            return Err(ArcError::InvalidArc(
                "end corner does not lie in the final triangle".into(),
            ));
        }
        Ok(())
    }

    /// The crossing sequence of a saddle connection (portals with the exact
    /// entry points dropped).
    pub fn of_saddle_connection(
        tr: &Triangulation,
        sc: &SaddleConnection,
    ) -> Result<CombinatorialArc, ArcError> {
        let polyline_portals = portals_of_polyline(tr, &sc.segs)?;
        let start = corner_of_point(tr, sc.segs[0].tri, &sc.segs[0].a)
            .ok_or_else(|| ArcError::InvalidArc("chain does not start at a corner".into()))?;
        let last = sc.segs.last().unwrap();
        let end = corner_of_point(tr, last.tri, &last.b)
            .ok_or_else(|| ArcError::InvalidArc("chain does not end at a corner".into()))?;
        Ok(CombinatorialArc {
            start,
            portals: polyline_portals,
            end,
        })
    }
}

fn corner_of_point(tr: &Triangulation, t: usize, p: &Pt) -> Option<(usize, usize)> {
    (0..3).find(|&k| &tr.triangle(t)[k] == p).map(|k| (t, k))
}

/// Recover the portal sequence of a connected polyline of segments: between
/// consecutive segments in different charts, find the glued edge carrying the
/// shared point.
fn portals_of_polyline(tr: &Triangulation, segs: &[SegInTri]) -> Result<Vec<Side>, ArcError> {
    let mut portals = Vec::new();
    for i in 0..segs.len().saturating_sub(1) {
        let cur = &segs[i];
        let nxt = &segs[i + 1];
        if cur.tri == nxt.tri && cur.b == nxt.a {
            continue; // interior joint, no crossing
        }
        let mut matched = false;
        for e in 0..3 {
            let (s2, _) = tr.opposite(cur.tri, e);
            if s2.tri != nxt.tri {
                continue;
            }
            let g = tr.transition(cur.tri, e);
            if g.apply(&nxt.a) == cur.b {
                portals.push(Side::new(cur.tri, e));
                matched = true;
                break;
            }
        }
        if !matched {
            return Err(ArcError::InvalidArc(format!(
                "polyline breaks between pieces {i} and {}",
                i + 1
            )));
        }
    }
    Ok(portals)
}

struct DevPortal {
    left: Pt,
    right: Pt,
    left_corner: (usize, usize),
    right_corner: (usize, usize),
}

/// Straighten a combinatorial arc to its flat geodesic representative and
/// return the saddle-connection decomposition, ordered from the arc's start.
pub fn straighten(
    tr: &Triangulation,
    arc: &CombinatorialArc,
) -> Result<Vec<SaddleConnection>, ArcError> {
    arc.validate(tr)?;
    // Cancel immediate backtracks: crossing an edge and re-crossing it next
    // bounds a bigon inside one triangle, so the pair is null-homotopic.
    let mut reduced: Vec<Side> = Vec::with_capacity(arc.portals.len());
    for &p in &arc.portals {
        if let Some(&top) = reduced.last() {
            if tr.opposite(top.tri, top.edge).0 == p {
                reduced.pop();
                continue;
            }
        }
        reduced.push(p);
    }
    let arc = &CombinatorialArc {
        start: arc.start,
        portals: reduced,
        end: arc.end,
    };
    let n = arc.portals.len();
    // Develop the corridor. devs[i] maps the chart of the triangle reached
    // after i crossings into the search plane.
    let mut devs: Vec<HalfTrans> = Vec::with_capacity(n + 1);
    let mut tris: Vec<usize> = Vec::with_capacity(n + 1);
    devs.push(HalfTrans::new(
        1,
        tr.triangle(arc.start.0)[arc.start.1].neg(),
    ));
    tris.push(arc.start.0);
    for p in &arc.portals {
        let g = tr.transition(p.tri, p.edge);
        let d = devs.last().unwrap().compose(&g);
        tris.push(tr.opposite(p.tri, p.edge).0.tri);
        devs.push(d);
    }
    let start_pt = Pt::zero();
    let goal = devs[n].apply(&tr.triangle(arc.end.0)[arc.end.1]);
    let portals: Vec<DevPortal> = arc
        .portals
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let d = &devs[i];
            let a = d.apply(&tr.triangle(p.tri)[p.edge]);
            let b = d.apply(&tr.triangle(p.tri)[(p.edge + 1) % 3]);
            let ca = (p.tri, p.edge);
            let cb = (p.tri, (p.edge + 1) % 3);
            if d.sigma == 1 {
                DevPortal {
                    left: b,
                    right: a,
                    left_corner: cb,
                    right_corner: ca,
                }
            } else {
                DevPortal {
                    left: a,
                    right: b,
                    left_corner: ca,
                    right_corner: cb,
                }
            }
        })
        .collect();
    let bends = funnel(&start_pt, arc.start, &goal, arc.end, &portals)?;
    if bends.len() < 2 {
        return Err(ArcError::NullArc);
    }
    // Cut the taut path into saddle connections at its bend vertices.
    let mut out = Vec::with_capacity(bends.len() - 1);
    for w in bends.windows(2) {
        let (p0, c0, i0) = &w[0];
        let (p1, c1, i1) = &w[1];
        out.push(build_leg(
            tr, &devs, &tris, &portals, p0, *c0, *i0, p1, *c1, *i1,
        )?);
    }
    Ok(out)
}

type Bend = (Pt, (usize, usize), isize);

/// Exact funnel over a developed portal sequence. Returns the taut path as
/// (point, corner, portal index) triples; index -1 is the start, n the goal.
/// Collinearity with a funnel leg bends the path at the nearer leg vertex, so
/// every singularity lying on the geodesic becomes a bend.
fn funnel(
    start: &Pt,
    start_corner: (usize, usize),
    goal: &Pt,
    end_corner: (usize, usize),
    portals: &[DevPortal],
) -> Result<Vec<Bend>, ArcError> {
    let n = portals.len();
    let mut path: Vec<Bend> = vec![(start.clone(), start_corner, -1)];
    let mut apex = start.clone();
    let mut pl = start.clone();
    let mut pr = start.clone();
    let mut plc = start_corner;
    let mut prc = start_corner;
    let mut li: isize = -1;
    let mut ri: isize = -1;
    let mut i: usize = 0;
    let mut steps: u64 = 0;
    let max_steps = (4 * (n as u64 + 2) * (n as u64 + 2)).max(1 << 16);
    while i <= n {
        steps += 1;
        if steps > max_steps {
            return Err(ArcError::Internal("funnel failed to converge".into()));
        }
        let (r_new, rc, l_new, lc) = if i < n {
            (
                portals[i].right.clone(),
                portals[i].right_corner,
                portals[i].left.clone(),
                portals[i].left_corner,
            )
        } else {
            (goal.clone(), end_corner, goal.clone(), end_corner)
        };
        // Right leg update.
        if apex == pr {
            pr = r_new;
            prc = rc;
            ri = i as isize;
        } else if pr != r_new {
            let d_r = pr.sub(&apex);
            let d_new = r_new.sub(&apex);
            let c1 = cross_sign(&d_r, &d_new);
            if c1 == 0 {
                if d_new.norm_sq() < d_r.norm_sq() {
                    pr = r_new;
                    prc = rc;
                    ri = i as isize;
                }
            } else if c1 > 0 {
                let bend = apex != pl && cross_sign(&pl.sub(&apex), &d_new) >= 0;
                if bend {
                    path.push((pl.clone(), plc, li));
                    apex = pl.clone();
                    pr = apex.clone();
                    prc = plc;
                    ri = li;
                    i = (li + 1) as usize;
                    continue;
                }
                pr = r_new;
                prc = rc;
                ri = i as isize;
            }
        }
        // Left leg update.
        if apex == pl {
            pl = l_new;
            plc = lc;
            li = i as isize;
        } else if pl != l_new {
            let d_l = pl.sub(&apex);
            let d_new = l_new.sub(&apex);
            let c1 = cross_sign(&d_l, &d_new);
            if c1 == 0 {
                if d_new.norm_sq() < d_l.norm_sq() {
                    pl = l_new;
                    plc = lc;
                    li = i as isize;
                }
            } else if c1 < 0 {
                let bend = apex != pr && cross_sign(&pr.sub(&apex), &d_new) <= 0;
                if bend {
                    path.push((pr.clone(), prc, ri));
                    apex = pr.clone();
                    pl = apex.clone();
                    plc = prc;
                    li = ri;
                    i = (ri + 1) as usize;
                    continue;
                }
                pl = l_new;
                plc = lc;
                li = i as isize;
            }
        }
        i += 1;
    }
    if &path.last().unwrap().0 != goal {
        path.push((goal.clone(), end_corner, n as isize));
    }
    Ok(path)
}

/// Build the saddle connection for one taut-path leg from its bracketing
/// bends, mapping the developed segment back through the corridor charts.
#[allow(clippy::too_many_arguments)]
fn build_leg(
    tr: &Triangulation,
    devs: &[HalfTrans],
    tris: &[usize],
    portals: &[DevPortal],
    p0: &Pt,
    c0: (usize, usize),
    i0: isize,
    p1: &Pt,
    c1: (usize, usize),
    i1: isize,
) -> Result<SaddleConnection, ArcError> {
    debug_assert!(p0 != p1);
    let mut hits: Vec<(usize, Pt)> = Vec::new();
    let lo = i0 + 1;
    for i in lo..i1 {
        let i = i as usize;
        let (a, b) = (&portals[i].left, &portals[i].right);
        match crate::geom::seg_intersect(p0, p1, a, b) {
            SegHit::Point { p, tb, .. } => {
                if &p == p0 || &p == p1 {
                    continue; // grazes the bend vertex at a fan portal
                }
                if tb.is_zero() || tb.is_one() {
                    return Err(ArcError::Internal(
                        "leg passes through an unbent portal vertex".into(),
                    ));
                }
                hits.push((i, p));
            }
            SegHit::Overlap => {
                // The leg runs along this portal edge; it contributes no
                // proper crossing.
                continue;
            }
            SegHit::Empty => {
                return Err(ArcError::Internal("leg misses a corridor portal".into()));
            }
        }
    }
    for w in hits.windows(2) {
        if w[1].0 != w[0].0 + 1 {
            return Err(ArcError::Internal("leg crossing sequence has a gap".into()));
        }
    }
    let mut segs: Vec<SegInTri> = Vec::new();
    if hits.is_empty() {
        // The leg lies in a single triangle of the corridor: both endpoints
        // are vertices of it, so it is a triangulation edge. Normalize to the
        // canonical glued side so equal geodesics compare equal.
        let lo_t = lo.max(0) as usize;
        let hi_t = (i1 as usize).min(tris.len() - 1);
        let mut placed = false;
        for ti in lo_t..=hi_t {
            let inv = devs[ti].inverse();
            let (a, b) = (inv.apply(p0), inv.apply(p1));
            let v = tr.triangle(tris[ti]);
            if v.contains(&a) && v.contains(&b) {
                segs.push(canonical_edge_seg(tr, tris[ti], a, b)?);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(ArcError::Internal(
                "crossing-free leg fits no corridor triangle".into(),
            ));
        }
    } else {
        let first_tri = hits[0].0; // piece before hit k lives in the portal's triangle
        let mut entry = p0.clone();
        for (k, (i, x)) in hits.iter().enumerate() {
            let ti = *i; // triangle index in corridor = portal index (edge of tris[i])
            let inv = devs[ti].inverse();
            segs.push(SegInTri {
                tri: tris[ti],
                a: inv.apply(&entry),
                b: inv.apply(x),
            });
            entry = x.clone();
            let _ = k;
        }
        let last_ti = hits.last().unwrap().0 + 1;
        let inv = devs[last_ti].inverse();
        segs.push(SegInTri {
            tri: tris[last_ti],
            a: inv.apply(&entry),
            b: inv.apply(p1),
        });
        let _ = first_tri;
    }
    let sigma_first = devs[(lo.max(0) as usize).min(devs.len() - 1)].sigma;
    let sigma_last = if hits.is_empty() {
        sigma_first
    } else {
        devs[hits.last().unwrap().0 + 1].sigma
    };
    let sigma_total = sigma_first * sigma_last;
    // For a rebased whole-edge leg the forward holonomy lives in the new
    // chart; in the generic case it is the developed displacement.
    let hol = if hits.is_empty() {
        segs[0].b.sub(&segs[0].a)
    } else {
        p1.sub(p0)
    };
    Ok(crate::arc::canonicalize_chain(
        tr.corner_class(c0.0, c0.1),
        tr.corner_class(c1.0, c1.1),
        hol,
        segs,
        sigma_total,
    ))
}

/// Express a whole-edge segment in the canonical glued side's chart.
fn canonical_edge_seg(
    tr: &Triangulation,
    tri: usize,
    a: Pt,
    b: Pt,
) -> Result<SegInTri, ArcError> {
    let v = tr.triangle(tri);
    let e = (0..3)
        .find(|&e| {
            let ends = [&v[e], &v[(e + 1) % 3]];
            ends.contains(&&a) && ends.contains(&&b)
        })
        .ok_or_else(|| ArcError::Internal("vertex-to-vertex leg is not an edge".into()))?;
    let side = Side::new(tri, e);
    let canon = tr.canonical_side(side);
    if canon == side {
        Ok(SegInTri { tri, a, b })
    } else {
        let g = tr.transition(canon.tri, canon.edge);
        Ok(SegInTri {
            tri: canon.tri,
            a: g.apply(&a),
            b: g.apply(&b),
        })
    }
}

/// Shared canonicalization with the enumerator (same conventions).
pub(crate) fn canonicalize_chain(
    start: u32,
    end: u32,
    holonomy_fwd: Pt,
    segs: Vec<SegInTri>,
    sigma_total: i8,
) -> SaddleConnection {
    use num_traits::Signed;
    let canonical = {
        let flip =
            holonomy_fwd.y.is_negative() || (holonomy_fwd.y.is_zero() && holonomy_fwd.x.is_negative());
        if flip {
            holonomy_fwd.neg()
        } else {
            holonomy_fwd.clone()
        }
    };
    let fwd_realizes = holonomy_fwd == canonical;
    let rev_holonomy = if sigma_total == 1 {
        holonomy_fwd.neg()
    } else {
        holonomy_fwd
    };
    let rev_realizes = rev_holonomy == canonical;
    let rev = |segs: &[SegInTri]| -> Vec<SegInTri> {
        segs.iter()
            .rev()
            .map(|s| SegInTri {
                tri: s.tri,
                a: s.b.clone(),
                b: s.a.clone(),
            })
            .collect()
    };
    let (segs, start, end) = match (fwd_realizes, rev_realizes) {
        (true, false) => (segs, start, end),
        (false, true) => (rev(&segs), end, start),
        _ => {
            let r = rev(&segs);
            if segs <= r {
                (segs, start, end)
            } else {
                (r, end, start)
            }
        }
    };
    SaddleConnection {
        start,
        end,
        holonomy: canonical,
        segs,
        sigma_total,
    }
}

/// Which side of the oriented first arc a bicorn's b-part leaves on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcSide {
    /// The paper's `+` side.
    Right,
    /// The paper's `-` side.
    Left,
}

/// One bicorn arc of a pair of saddle connections.
#[derive(Clone, Debug)]
pub struct BicornArc {
    pub index: usize,
    pub side: ArcSide,
    pub body: BicornBody,
    /// True when the b-part ends at an earlier intersection point (the arc
    /// returns along the first saddle connection).
    pub has_c_part: bool,
}

#[derive(Clone, Debug)]
pub enum BicornBody {
    /// gamma_0 = the second saddle connection.
    Beta,
    /// gamma_{n+1} = the first saddle connection.
    Alpha,
    Composite(CombinatorialArc),
}

/// Clip an oriented chain between two positions (inclusive), dropping
/// zero-length pieces.
fn clip_chain(segs: &[SegInTri], from: &(usize, Q), to: &(usize, Q)) -> Vec<SegInTri> {
    debug_assert!(from <= to);
    let mut out = Vec::new();
    for (i, s) in segs.iter().enumerate().take(to.0 + 1).skip(from.0) {
        let d = s.b.sub(&s.a);
        let t0 = if i == from.0 { from.1.clone() } else { Q::zero() };
        let t1 = if i == to.0 { to.1.clone() } else { Q::one() };
        if t0 >= t1 {
            continue;
        }
        out.push(SegInTri {
            tri: s.tri,
            a: s.a.add(&d.scale(&t0)),
            b: s.a.add(&d.scale(&t1)),
        });
    }
    out
}

fn reverse_chain(segs: &[SegInTri]) -> Vec<SegInTri> {
    segs.iter()
        .rev()
        .map(|s| SegInTri {
            tri: s.tri,
            a: s.b.clone(),
            b: s.a.clone(),
        })
        .collect()
}

/// Construct the bicorn arcs gamma_0, ..., gamma_{n+1} of a pair of saddle
/// connections for the requested side. The first arc is oriented by its
/// stored canonical chain; its start is the basepoint p_0.
pub fn bicorn_arcs(
    tr: &Triangulation,
    alpha: &SaddleConnection,
    beta: &SaddleConnection,
    side: ArcSide,
) -> Result<Vec<BicornArc>, ArcError> {
    if alpha.key() == beta.key() {
        return Err(ArcError::Identical);
    }
    let crossings = interior_intersections(tr, alpha, beta);
    let n = crossings.len();
    let mut out = Vec::with_capacity(n + 2);
    out.push(BicornArc {
        index: 0,
        side,
        body: BicornBody::Beta,
        has_c_part: false,
    });
    // Rank of each crossing along beta.
    let mut beta_order: Vec<usize> = (0..n).collect();
    beta_order.sort_by(|&x, &y| crossings[x].along_b.cmp(&crossings[y].along_b));
    let mut rank_of = vec![0usize; n];
    for (r, &ci) in beta_order.iter().enumerate() {
        rank_of[ci] = r;
    }
    for i in 1..=n {
        let ci = i - 1; // crossing index of p_i (0-based)
        let sigma = crossings[ci].sign;
        // Traverse beta forward (+1) or backward (-1) so the b-part leaves on
        // the requested side of alpha: cross(d_alpha, eps * d_beta) < 0 for
        // Right, > 0 for Left.
        let eps: i8 = match side {
            ArcSide::Right => -sigma,
            ArcSide::Left => sigma,
        };
        // Walk along beta from p_i until the first p_j with j < i (1-based
        // along alpha), or beta's endpoint.
        let mut stop: Option<usize> = None; // crossing index of p_j
        let mut r = rank_of[ci] as isize;
        loop {
            r += if eps == 1 { 1 } else { -1 };
            if r < 0 || r >= n as isize {
                break;
            }
            let cj = beta_order[r as usize];
            if cj + 1 < i {
                stop = Some(cj);
                break;
            }
        }
        let pi_beta = &crossings[ci].along_b;
        let b_part: Vec<SegInTri> = match (eps, stop) {
            (1, None) => clip_chain(&beta.segs, pi_beta, &(beta.segs.len() - 1, Q::one())),
            (1, Some(cj)) => clip_chain(&beta.segs, pi_beta, &crossings[cj].along_b),
            (-1, None) => reverse_chain(&clip_chain(&beta.segs, &(0, Q::zero()), pi_beta)),
            (-1, Some(cj)) => {
                reverse_chain(&clip_chain(&beta.segs, &crossings[cj].along_b, pi_beta))
            }
            _ => unreachable!(),
        };
        let a_part = clip_chain(&alpha.segs, &(0, Q::zero()), &crossings[ci].along_a);
        let mut polyline = a_part;
        polyline.extend(b_part);
        let has_c = stop.is_some();
        if let Some(cj) = stop {
            let c_part = reverse_chain(&clip_chain(
                &alpha.segs,
                &(0, Q::zero()),
                &crossings[cj].along_a,
            ));
            polyline.extend(c_part);
        }
        let portals = portals_of_polyline(tr, &polyline)?;
        let start = corner_of_point(tr, polyline[0].tri, &polyline[0].a)
            .ok_or_else(|| ArcError::InvalidArc("bicorn must start at a singularity".into()))?;
        let last = polyline.last().unwrap();
        let end = corner_of_point(tr, last.tri, &last.b)
            .ok_or_else(|| ArcError::InvalidArc("bicorn must end at a singularity".into()))?;
        out.push(BicornArc {
            index: i,
            side,
            body: BicornBody::Composite(CombinatorialArc {
                start,
                portals,
                end,
            }),
            has_c_part: has_c,
        });
    }
    out.push(BicornArc {
        index: n + 1,
        side,
        body: BicornBody::Alpha,
        has_c_part: false,
    });
    Ok(out)
}

/// Straighten a bicorn arc: the geodesic representative's saddle-connection
/// decomposition, ordered from p_0.
pub fn straighten_bicorn(
    tr: &Triangulation,
    alpha: &SaddleConnection,
    beta: &SaddleConnection,
    b: &BicornArc,
) -> Result<Vec<SaddleConnection>, ArcError> {
    match &b.body {
        BicornBody::Alpha => Ok(vec![alpha.clone()]),
        BicornBody::Beta => Ok(vec![beta.clone()]),
        BicornBody::Composite(arc) => straighten(tr, arc),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::q_i64;
    use crate::saddle::{enumerate, tests::torus, validate_sc};

    fn sc_with_holonomy(tr: &Triangulation, x: i64, y: i64) -> SaddleConnection {
        let want = crate::saddle::Slope::of_i64(x, y);
        let l = q_i64(x * x + y * y);
        enumerate(tr, &l)
            .into_iter()
            .find(|sc| sc.holonomy == want.as_vector())
            .expect("saddle connection with this holonomy")
    }

    #[test]
    fn torus_crossing_examples() {
        let tr = torus();
        let h = sc_with_holonomy(&tr, 1, 0);
        let v = sc_with_holonomy(&tr, 0, 1);
        let d12 = sc_with_holonomy(&tr, 1, 2);
        assert!(!crosses(&tr, &h, &v));
        assert!(crosses(&tr, &h, &d12));
        assert!(!crosses(&tr, &h, &h));
        assert_eq!(crosses(&tr, &d12, &h), crosses(&tr, &h, &d12));
    }

    /// On the once-marked torus the interior crossing count of primitive
    /// vectors u, v is |det(u, v)| - 1.
    #[test]
    fn torus_crossing_count_oracle() {
        let tr = torus();
        let pairs = [
            ((0, 1), (3, 2), 2),
            ((0, 1), (1, 1), 0),
            ((1, 0), (1, 2), 1),
            ((1, 2), (2, 1), 2),
            ((1, 1), (-1, 1), 1),
            ((2, 3), (1, 2), 0),
            ((1, 3), (-2, 1), 6),
            ((3, 1), (1, 3), 7),
            // Crossings landing exactly on glued triangulation edges.
            ((-2, 1), (2, 1), 3),
            ((-1, 2), (1, 2), 3),
            ((1, 0), (0, 1), 0),
        ];
        for ((ax, ay), (bx, by), want) in pairs {
            let a = sc_with_holonomy(&tr, ax, ay);
            let b = sc_with_holonomy(&tr, bx, by);
            let pts = interior_intersections(&tr, &a, &b);
            assert_eq!(
                pts.len(),
                want,
                "({ax},{ay}) x ({bx},{by}): got {}",
                pts.len()
            );
            let det = (ax * by - ay * bx).unsigned_abs() as usize;
            assert_eq!(want + 1, det);
            // Symmetry of the count.
            assert_eq!(interior_intersections(&tr, &b, &a).len(), want);
        }
    }

    #[test]
    fn straighten_fixes_saddle_connections() {
        let tr = torus();
        for (x, y) in [(1, 0), (1, 1), (1, 2), (3, 2), (-2, 1)] {
            let sc = sc_with_holonomy(&tr, x, y);
            let arc = CombinatorialArc::of_saddle_connection(&tr, &sc).unwrap();
            let got = straighten(&tr, &arc).unwrap();
            assert_eq!(got.len(), 1);
            assert_eq!(got[0].key(), sc.key(), "({x},{y})");
        }
    }

    #[test]
    fn straighten_staircase_to_diagonal() {
        let tr = torus();
        // The square splits along the chord (1,0)-(0,1). The arc from the
        // corner at (0,0) to the corner at (1,1), crossing that chord once, is
        // homotopic to the diagonal saddle connection (1,1).
        let (t0, k0) = (0..tr.num_triangles())
            .flat_map(|t| (0..3).map(move |k| (t, k)))
            .find(|&(t, k)| tr.triangle(t)[k] == Pt::of_i64(0, 0))
            .unwrap();
        let (t1, k1) = (0..tr.num_triangles())
            .flat_map(|t| (0..3).map(move |k| (t, k)))
            .find(|&(t, k)| tr.triangle(t)[k] == Pt::of_i64(1, 1))
            .unwrap();
        assert_ne!(t0, t1);
        let chord = (0..3)
            .find(|&e| {
                let v = tr.triangle(t0);
                let ends = [v[e].clone(), v[(e + 1) % 3].clone()];
                ends.contains(&Pt::of_i64(1, 0)) && ends.contains(&Pt::of_i64(0, 1))
            })
            .unwrap();
        assert_eq!(tr.opposite(t0, chord).0.tri, t1);
        let arc = CombinatorialArc {
            start: (t0, k0),
            portals: vec![Side::new(t0, chord)],
            end: (t1, k1),
        };
        let got = straighten(&tr, &arc).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].holonomy, Pt::of_i64(1, 1));
        assert_eq!(got[0].segs.len(), 2);

        // Same arc but wiggling across the chord, back, and across again: the
        // doubled crossing cancels and the geodesic is unchanged.
        let back = tr.opposite(t0, chord).0;
        let arc2 = CombinatorialArc {
            start: (t0, k0),
            portals: vec![
                Side::new(t0, chord),
                Side::new(back.tri, back.edge),
                Side::new(t0, chord),
            ],
            end: (t1, k1),
        };
        let got2 = straighten(&tr, &arc2).unwrap();
        assert_eq!(got2.len(), 1);
        assert_eq!(got2[0].holonomy, Pt::of_i64(1, 1));
    }

    #[test]
    fn straighten_null_arc() {
        let tr = torus();
        let arc = CombinatorialArc {
            start: (0, 0),
            portals: vec![],
            end: (0, 0),
        };
        assert!(matches!(straighten(&tr, &arc), Err(ArcError::NullArc)));
    }

    #[test]
    fn bicorn_construction_examples() {
        let tr = torus();
        let alpha = sc_with_holonomy(&tr, 0, 1);
        let beta = sc_with_holonomy(&tr, 3, 1);
        // i(alpha, beta) = |det| - 1 = 2, so 4 entries per side.
        for side in [ArcSide::Right, ArcSide::Left] {
            let arcs = bicorn_arcs(&tr, &alpha, &beta, side).unwrap();
            assert_eq!(arcs.len(), 4);
            assert!(matches!(arcs[0].body, BicornBody::Beta));
            assert!(matches!(arcs[3].body, BicornBody::Alpha));
            // First bicorn is a unicorn: no p_j with 0 < j < 1 exists.
            assert!(!arcs[1].has_c_part);
            for b in &arcs[1..3] {
                let dec = straighten_bicorn(&tr, &alpha, &beta, b).unwrap();
                assert!(!dec.is_empty());
                for sc in &dec {
                    validate_sc(&tr, sc).unwrap();
                }
            }
        }
        // Identical inputs rejected.
        assert!(matches!(
            bicorn_arcs(&tr, &alpha, &alpha, ArcSide::Right),
            Err(ArcError::Identical)
        ));
    }

    #[test]
    fn disjoint_pair_has_no_interior_bicorns() {
        let tr = torus();
        let alpha = sc_with_holonomy(&tr, 0, 1);
        let beta = sc_with_holonomy(&tr, 1, 1);
        let arcs = bicorn_arcs(&tr, &alpha, &beta, ArcSide::Right).unwrap();
        assert_eq!(arcs.len(), 2);
    }

    /// Ladder lemma at the straightened level: the four bicorn arcs
    /// gamma_i^+, gamma_i^-, gamma_{i+1}^+, gamma_{i+1}^- have pairwise
    /// disjoint representatives, so no saddle connection of one straightening
    /// transversely crosses a saddle connection of another.
    #[test]
    fn straightening_preserves_bicorn_disjointness() {
        for tr in [torus(), crate::saddle::tests::l_origami()] {
            let pool = enumerate(&tr, &q_i64(5));
            let mut rng_pairs = Vec::new();
            for a in &pool {
                for b in &pool {
                    if a.slope() != b.slope() {
                        rng_pairs.push((a, b));
                    }
                }
            }
            for (alpha, beta) in rng_pairs.into_iter().step_by(17).take(8) {
                let plus = bicorn_arcs(&tr, alpha, beta, ArcSide::Right).unwrap();
                let minus = bicorn_arcs(&tr, alpha, beta, ArcSide::Left).unwrap();
                let dec = |b: &BicornArc| straighten_bicorn(&tr, alpha, beta, b).unwrap();
                for i in 0..plus.len() - 1 {
                    let quad = [
                        dec(&plus[i]),
                        dec(&minus[i]),
                        dec(&plus[i + 1]),
                        dec(&minus[i + 1]),
                    ];
                    for x in 0..4 {
                        for y in (x + 1)..4 {
                            for sx in &quad[x] {
                                for sy in &quad[y] {
                                    assert!(
                                        !crosses(&tr, sx, sy),
                                        "bicorns {x} and {y} cross at i={i}"
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn straightening_idempotent_on_bicorn_output() {
        let tr = torus();
        let alpha = sc_with_holonomy(&tr, -1, 2);
        let beta = sc_with_holonomy(&tr, 2, 1);
        for side in [ArcSide::Right, ArcSide::Left] {
            for b in bicorn_decompositions(&tr, &alpha, &beta, side) {
                for sc in &b {
                    let arc = CombinatorialArc::of_saddle_connection(&tr, sc).unwrap();
                    let again = straighten(&tr, &arc).unwrap();
                    assert_eq!(again.len(), 1);
                    assert_eq!(again[0].key(), sc.key());
                }
            }
        }
    }

    fn bicorn_decompositions(
        tr: &Triangulation,
        alpha: &SaddleConnection,
        beta: &SaddleConnection,
        side: ArcSide,
    ) -> Vec<Vec<SaddleConnection>> {
        bicorn_arcs(tr, alpha, beta, side)
            .unwrap()
            .iter()
            .map(|b| straighten_bicorn(tr, alpha, beta, b).unwrap())
            .collect()
    }

    #[test]
    fn surface_mismatch_detected() {
        let tr = torus();
        let l = crate::saddle::tests::l_origami();
        let sc_l = enumerate(&l, &q_i64(2)).pop().unwrap();
        let sc_t = sc_with_holonomy(&tr, 1, 0);
        assert!(crosses_checked(&l, &sc_l, &sc_l.clone()).is_ok());
        assert!(crosses_checked(&tr, &sc_t, &sc_l).is_err() || sc_l.segs.len() == 1);
    }
}
