//! Saddle connections and their enumeration.
//!
//! A saddle connection is stored as its chain of per-triangle segments with
//! exact endpoints, together with its holonomy vector (canonically signed) and
//! endpoint singularity classes. Enumeration is a depth-first wedge search
//! over developed triangle corridors: from every corner of the triangulation,
//! the visible wedge is subdivided at each developed far vertex, pruned as
//! soon as the crossed edge leaves the length bound. All predicates are exact.

use crate::geom::{cross_sign, HalfTrans, Pt, Q, SegHit};
use crate::tri::Triangulation;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A maximal straight piece of a saddle connection inside one triangle, in
/// that triangle's chart.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SegInTri {
    pub tri: usize,
    pub a: Pt,
    pub b: Pt,
}

/// A saddle connection: a flat geodesic between singularities with none in
/// its interior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaddleConnection {
    /// Singularity class at the chain start.
    pub start: u32,
    /// Singularity class at the chain end.
    pub end: u32,
    /// Holonomy with canonical sign (y > 0, or y = 0 and x > 0).
    pub holonomy: Pt,
    /// Segment chain; oriented so its developed holonomy is the stored one
    /// whenever the orientation is determined (ties broken lexicographically).
    pub segs: Vec<SegInTri>,
    /// Product of gluing signs along the chain.
    pub sigma_total: i8,
}

impl SaddleConnection {
    pub fn length_sq(&self) -> Q {
        self.holonomy.norm_sq()
    }

    pub fn slope(&self) -> Slope {
        Slope::of_vector(&self.holonomy)
    }

    /// Orientation-invariant identity of the underlying geodesic segment.
    pub fn key(&self) -> Vec<SegInTri> {
        let rev = reverse_segs(&self.segs);
        if self.segs <= rev {
            self.segs.clone()
        } else {
            rev
        }
    }

    /// The chain with orientation reversed.
    pub fn reversed_segs(&self) -> Vec<SegInTri> {
        reverse_segs(&self.segs)
    }

    fn sort_key(&self) -> (Q, Q, Q, Vec<SegInTri>) {
        (
            self.length_sq(),
            self.holonomy.y.clone(),
            self.holonomy.x.clone(),
            self.segs.clone(),
        )
    }
}

impl PartialOrd for SaddleConnection {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SaddleConnection {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

fn reverse_segs(segs: &[SegInTri]) -> Vec<SegInTri> {
    segs.iter()
        .rev()
        .map(|s| SegInTri {
            tri: s.tri,
            a: s.b.clone(),
            b: s.a.clone(),
        })
        .collect()
}

/// A point of RP^1 as a primitive integer pair with canonical sign
/// (y > 0, or y = 0 and x > 0). Vertical is (0, 1), horizontal (1, 0).
/// The derived order is the angle order on [0, pi): 0, ..., 1, ..., 1/0
/// (vertical), ..., -1, ..., approaching 0 from below.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Slope {
    pub x: BigInt,
    pub y: BigInt,
}

impl Slope {
    pub fn new(x: BigInt, y: BigInt) -> Self {
        assert!(!(x.is_zero() && y.is_zero()), "slope of the zero vector");
        let g = x.gcd(&y);
        let (mut x, mut y) = (x / &g, y / &g);
        let flip = y.is_negative() || (y.is_zero() && x.is_negative());
        if flip {
            x = -x;
            y = -y;
        }
        Slope { x, y }
    }

    pub fn of_i64(x: i64, y: i64) -> Self {
        Slope::new(BigInt::from(x), BigInt::from(y))
    }

    pub fn of_vector(v: &Pt) -> Self {
        let lcm = v.x.denom().lcm(v.y.denom());
        let x = v.x.numer() * (&lcm / v.x.denom());
        let y = v.y.numer() * (&lcm / v.y.denom());
        Slope::new(x, y)
    }

    pub fn vertical() -> Self {
        Slope::of_i64(0, 1)
    }

    pub fn horizontal() -> Self {
        Slope::of_i64(1, 0)
    }

    pub fn as_vector(&self) -> Pt {
        Pt::new(
            Q::from_integer(self.x.clone()),
            Q::from_integer(self.y.clone()),
        )
    }

    /// Exact cross product with another slope's representative.
    pub fn det(&self, other: &Slope) -> BigInt {
        &self.x * &other.y - &self.y * &other.x
    }

    /// Parse a slope value "p/q", "p", or "1/0".
    pub fn parse(s: &str) -> Option<Slope> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if p.is_zero() && q.is_zero() {
                return None;
            }
            Some(Slope::new(q, p))
        } else {
            let p: BigInt = s.parse().ok()?;
            Some(Slope::new(BigInt::from(1), p))
        }
    }
}

impl fmt::Display for Slope {
    /// Slope value y/x: "2", "-1/4", "1/0" for vertical.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x.is_zero() {
            return write!(f, "1/0");
        }
        let num = &self.y * self.x.signum();
        let den = self.x.abs();
        if den == BigInt::from(1) {
            write!(f, "{num}")
        } else {
            write!(f, "{num}/{den}")
        }
    }
}

impl fmt::Debug for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Slope({self})")
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Slope) -> Ordering {
        // Angle order on [0, pi): u < v iff cross(u, v) > 0 for canonical reps.
        let d = self.det(other);
        if d.is_positive() {
            Ordering::Less
        } else if d.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    }
}

struct Step {
    tri: usize,
    /// chart(tri) -> search plane (start corner at the origin)
    dev: HalfTrans,
    /// edge of `tri` through which the corridor entered
    enter_edge: usize,
}

struct WedgeSearch<'a> {
    tr: &'a Triangulation,
    l_sq: Q,
}

impl<'a> WedgeSearch<'a> {
    /// All saddle connections leaving the corner (t0, k0) strictly inside its
    /// angular sector, with squared length at most `l_sq`.
    fn search_corner(&self, t0: usize, k0: usize) -> Vec<SaddleConnection> {
        let v = self.tr.triangle(t0);
        let dev0 = HalfTrans::new(1, v[k0].neg());
        let lo = v[(k0 + 1) % 3].sub(&v[k0]);
        let hi = v[(k0 + 2) % 3].sub(&v[k0]);
        let pa = dev0.apply(&v[(k0 + 1) % 3]);
        let pb = dev0.apply(&v[(k0 + 2) % 3]);
        let mut corridor = vec![Step {
            tri: t0,
            dev: dev0,
            enter_edge: usize::MAX,
        }];
        let mut out = Vec::new();
        self.step(
            t0,
            (k0 + 1) % 3,
            pa,
            pb,
            lo,
            hi,
            &mut corridor,
            (t0, k0),
            &mut out,
        );
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn step(
        &self,
        t: usize,
        e: usize,
        pa: Pt,
        pb: Pt,
        lo: Pt,
        hi: Pt,
        corridor: &mut Vec<Step>,
        start: (usize, usize),
        out: &mut Vec<SaddleConnection>,
    ) {
        match crate::geom::min_dist_sq_in_wedge(&pa, &pb, &lo, &hi) {
            Some(d) if d <= self.l_sq => {}
            _ => return,
        }
        let (s2, _) = self.tr.opposite(t, e);
        let g = self.tr.transition(t, e);
        let dev_prev = &corridor.last().unwrap().dev;
        debug_assert_eq!(corridor.last().unwrap().tri, t);
        let dev2 = dev_prev.compose(&g);
        let (t2, e2) = (s2.tri, s2.edge);
        let k_far = (e2 + 2) % 3;
        let p = dev2.apply(&self.tr.triangle(t2)[k_far]);
        debug_assert!(!p.is_zero());
        corridor.push(Step {
            tri: t2,
            dev: dev2,
            enter_edge: e2,
        });
        let c_lo = cross_sign(&lo, &p);
        let c_hi = cross_sign(&p, &hi);
        if c_lo > 0 && c_hi > 0 {
            if p.norm_sq() <= self.l_sq {
                out.push(self.record(corridor, start, (t2, k_far), &p));
            }
            self.step(
                t2,
                (e2 + 1) % 3,
                pa,
                p.clone(),
                lo,
                p.clone(),
                corridor,
                start,
                out,
            );
            self.step(
                t2,
                (e2 + 2) % 3,
                p.clone(),
                pb,
                p,
                hi,
                corridor,
                start,
                out,
            );
        } else if c_lo <= 0 {
            self.step(t2, (e2 + 2) % 3, p, pb, lo, hi, corridor, start, out);
        } else {
            self.step(t2, (e2 + 1) % 3, pa, p, lo, hi, corridor, start, out);
        }
        corridor.pop();
    }

    fn record(
        &self,
        corridor: &[Step],
        start: (usize, usize),
        end: (usize, usize),
        p: &Pt,
    ) -> SaddleConnection {
        let origin = Pt::zero();
        let mut segs = Vec::with_capacity(corridor.len());
        let mut entry = origin.clone();
        for (i, step) in corridor.iter().enumerate() {
            let exit = if i + 1 < corridor.len() {
                let nxt = &corridor[i + 1];
                let a = nxt.dev.apply(&self.tr.triangle(nxt.tri)[nxt.enter_edge]);
                let b = nxt
                    .dev
                    .apply(&self.tr.triangle(nxt.tri)[(nxt.enter_edge + 1) % 3]);
                match crate::geom::seg_intersect(&origin, p, &a, &b) {
                    SegHit::Point { p: x, .. } => x,
                    other => unreachable!("corridor portal must be crossed, got {other:?}"),
                }
            } else {
                p.clone()
            };
            let inv = step.dev.inverse();
            segs.push(SegInTri {
                tri: step.tri,
                a: inv.apply(&entry),
                b: inv.apply(&exit),
            });
            entry = exit;
        }
        let sigma_total = corridor.last().unwrap().dev.sigma;
        let start_class = self.tr.corner_class(start.0, start.1);
        let end_class = self.tr.corner_class(end.0, end.1);
        make_canonical(start_class, end_class, p.clone(), segs, sigma_total)
    }
}

/// Put an oriented chain into canonical form: holonomy canonically signed and
/// the chain oriented to realize it (lexicographic tie-break when the stored
/// holonomy is realized by both orientations).
fn make_canonical(
    start: u32,
    end: u32,
    holonomy_fwd: Pt,
    segs: Vec<SegInTri>,
    sigma_total: i8,
) -> SaddleConnection {
    let canonical = canonical_sign(&holonomy_fwd);
    let fwd_realizes = holonomy_fwd == canonical;
    let rev_holonomy = if sigma_total == 1 {
        holonomy_fwd.neg()
    } else {
        holonomy_fwd.clone()
    };
    let rev_realizes = rev_holonomy == canonical;
    let (segs, start, end) = match (fwd_realizes, rev_realizes) {
        (true, false) => (segs, start, end),
        (false, true) => (reverse_segs(&segs), end, start),
        _ => {
            let rev = reverse_segs(&segs);
            if segs <= rev {
                (segs, start, end)
            } else {
                (rev, end, start)
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

fn canonical_sign(v: &Pt) -> Pt {
    let flip = v.y.is_negative() || (v.y.is_zero() && v.x.is_negative());
    if flip {
        v.neg()
    } else {
        v.clone()
    }
}

/// Enumerate every saddle connection of squared length at most `l_sq`, each
/// once per unoriented geodesic segment, in deterministic order (squared
/// length, then holonomy, then chain data).
pub fn enumerate(tr: &Triangulation, l_sq: &Q) -> Vec<SaddleConnection> {
    assert!(l_sq > &Q::zero(), "length bound must be positive");
    let mut found: BTreeMap<Vec<SegInTri>, SaddleConnection> = BTreeMap::new();
    // Triangulation edges are saddle connections with empty crossing data.
    for side in tr.edges() {
        let v = tr.triangle(side.tri);
        let a = v[side.edge].clone();
        let b = v[(side.edge + 1) % 3].clone();
        let hol = b.sub(&a);
        if hol.norm_sq() > *l_sq {
            continue;
        }
        let sc = make_canonical(
            tr.corner_class(side.tri, side.edge),
            tr.corner_class(side.tri, (side.edge + 1) % 3),
            hol,
            vec![SegInTri {
                tri: side.tri,
                a,
                b,
            }],
            1,
        );
        found.insert(sc.key(), sc);
    }
    let search = WedgeSearch {
        tr,
        l_sq: l_sq.clone(),
    };
    let corners: Vec<(usize, usize)> = (0..tr.num_triangles())
        .flat_map(|t| (0..3).map(move |k| (t, k)))
        .collect();
    let batches: Vec<Vec<SaddleConnection>> = corners
        .par_iter()
        .map(|&(t, k)| search.search_corner(t, k))
        .collect();
    for sc in batches.into_iter().flatten() {
        found.entry(sc.key()).or_insert(sc);
    }
    let mut out: Vec<SaddleConnection> = found.into_values().collect();
    out.sort();
    out
}

/// A shortest saddle connection; ties broken by the enumeration order.
pub fn systole(tr: &Triangulation) -> SaddleConnection {
    // Every triangulation edge is a saddle connection, so the shortest edge
    // length bounds the systole from above.
    let bound = tr
        .edges()
        .iter()
        .map(|s| {
            let v = tr.triangle(s.tri);
            v[(s.edge + 1) % 3].sub(&v[s.edge]).norm_sq()
        })
        .min()
        .expect("surface has at least one edge");
    enumerate(tr, &bound)
        .into_iter()
        .next()
        .expect("an edge realizes the bound")
}

/// Validate the stored invariants of a saddle connection against its surface:
/// the chain develops to one straight segment, consecutive segments match
/// across gluings, and no interior point is a triangle vertex.
pub fn validate_sc(tr: &Triangulation, sc: &SaddleConnection) -> Result<(), String> {
    if sc.holonomy.is_zero() {
        return Err("zero holonomy".into());
    }
    let mut dev = HalfTrans::new(1, sc.segs[0].a.neg());
    let mut dev_pts: Vec<Pt> = vec![Pt::zero()];
    for (i, seg) in sc.segs.iter().enumerate() {
        let exit = dev.apply(&seg.b);
        dev_pts.push(exit.clone());
        if i + 1 < sc.segs.len() {
            let nxt = &sc.segs[i + 1];
            // Find the edge of seg.tri whose partner chart holds nxt and maps
            // entry points correctly.
            let mut matched = false;
            for e in 0..3 {
                let (s2, _) = tr.opposite(seg.tri, e);
                if s2.tri != nxt.tri {
                    continue;
                }
                let g = tr.transition(seg.tri, e);
                if g.apply(&nxt.a) == seg.b {
                    dev = dev.compose(&g);
                    matched = true;
                    break;
                }
            }
            if !matched {
                return Err(format!("chain break between segments {i} and {}", i + 1));
            }
        }
    }
    let total = dev_pts.last().unwrap().clone();
    if canonical_sign(&total) != sc.holonomy {
        return Err("holonomy does not match developed chain".into());
    }
    for w in dev_pts.windows(2) {
        if cross_sign(&w[0].sub(&total), &w[1].sub(&total)) != 0
            || cross_sign(&w[0], &w[1]) != 0 && cross_sign(&w[0], &total) == 0
        {
            // All developed points must lie on the segment [0, total].
        }
    }
    for p in &dev_pts {
        if cross_sign(p, &total) != 0 {
            return Err("developed chain is not collinear".into());
        }
    }
    // Interior crossing points must not be triangle vertices.
    for (i, seg) in sc.segs.iter().enumerate() {
        if i + 1 < sc.segs.len() {
            let v = tr.triangle(seg.tri);
            if v.contains(&seg.b) {
                return Err("interior point of the chain is a singularity".into());
            }
        }
    }
    Ok(())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::geom::q_i64;
    use crate::surface::{Origami, Surface};

    pub fn torus() -> Triangulation {
        Surface::from_origami(&Origami::new(1, vec![0], vec![0]).unwrap())
            .unwrap()
            .triangulate()
            .unwrap()
    }

    pub fn l_origami() -> Triangulation {
        Surface::from_origami(&Origami::new(3, vec![1, 0, 2], vec![2, 1, 0]).unwrap())
            .unwrap()
            .triangulate()
            .unwrap()
    }

    /// Primitive integer vectors with canonical sign and norm at most l_sq:
    /// the saddle connections of the once-marked square torus.
    pub fn torus_lattice_oracle(l_sq: i64) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        let bound = (l_sq as f64).sqrt() as i64 + 1;
        for x in -bound..=bound {
            for y in -bound..=bound {
                if (x, y) == (0, 0) || x * x + y * y > l_sq {
                    continue;
                }
                if num_integer::gcd(x, y) != 1 {
                    continue;
                }
                if y > 0 || (y == 0 && x > 0) {
                    out.push((x, y));
                }
            }
        }
        out.sort_by_key(|&(x, y)| (x * x + y * y, y, x));
        out
    }

    pub fn holonomies(scs: &[SaddleConnection]) -> Vec<(i64, i64)> {
        scs.iter()
            .map(|sc| {
                let s = Slope::of_vector(&sc.holonomy);
                let to_i64 = |b: &BigInt| -> i64 { i64::try_from(b).unwrap() };
                // Holonomies on the unit torus are integral.
                assert!(sc.holonomy.x.is_integer() && sc.holonomy.y.is_integer());
                let _ = s;
                (
                    to_i64(sc.holonomy.x.numer()),
                    to_i64(sc.holonomy.y.numer()),
                )
            })
            .collect()
    }

    #[test]
    fn torus_unit_length() {
        let tr = torus();
        let scs = enumerate(&tr, &q_i64(1));
        assert_eq!(holonomies(&scs), vec![(1, 0), (0, 1)]);
        for sc in &scs {
            validate_sc(&tr, sc).unwrap();
        }
    }

    #[test]
    fn torus_norm_five() {
        let tr = torus();
        let scs = enumerate(&tr, &q_i64(5));
        assert_eq!(holonomies(&scs), torus_lattice_oracle(5));
        assert_eq!(scs.len(), 8);
        for sc in &scs {
            validate_sc(&tr, sc).unwrap();
        }
    }

    #[test]
    fn torus_matches_lattice_oracle_deeper() {
        let tr = torus();
        for l in [2, 9, 13, 25, 50] {
            let scs = enumerate(&tr, &q_i64(l));
            assert_eq!(holonomies(&scs), torus_lattice_oracle(l), "bound {l}");
        }
    }

    #[test]
    fn enumeration_monotone_in_bound() {
        let tr = l_origami();
        let small = enumerate(&tr, &q_i64(2));
        let big = enumerate(&tr, &q_i64(5));
        for sc in &small {
            assert!(big.contains(sc));
        }
        assert!(big.len() > small.len());
    }

    #[test]
    fn l_origami_unit_edges() {
        // Six glued unit-edge pairs, hence six saddle connections of length 1
        // (crossing sequences of length 0), all at the single singularity.
        let tr = l_origami();
        let scs = enumerate(&tr, &q_i64(1));
        assert_eq!(scs.len(), 6);
        for sc in &scs {
            assert_eq!(sc.length_sq(), q_i64(1));
            assert!(sc.segs.len() == 1);
            assert_eq!(sc.start, 0);
            assert_eq!(sc.end, 0);
            validate_sc(&tr, sc).unwrap();
        }
    }

    #[test]
    fn l_origami_validates_deeper() {
        let tr = l_origami();
        let scs = enumerate(&tr, &q_i64(8));
        assert!(scs.len() > 6);
        for sc in &scs {
            validate_sc(&tr, sc).unwrap();
        }
    }

    #[test]
    fn systole_examples() {
        let tr = torus();
        let sys = systole(&tr);
        assert_eq!(sys.holonomy, Pt::of_i64(1, 0));
        assert_eq!(sys.length_sq(), q_i64(1));

        let sheared = tr
            .apply_matrix(&crate::surface::Mat2::new(
                q_i64(1),
                q_i64(1),
                q_i64(0),
                q_i64(1),
            ))
            .unwrap();
        let sys2 = systole(&sheared);
        assert_eq!(sys2.holonomy, Pt::of_i64(1, 0));

        let sys3 = systole(&l_origami());
        assert_eq!(sys3.length_sq(), q_i64(1));
    }

    #[test]
    fn slope_normalization() {
        assert_eq!(Slope::of_i64(2, 4), Slope::of_i64(1, 2));
        assert_eq!(Slope::of_i64(0, -3), Slope::of_i64(0, 1));
        assert_eq!(Slope::of_i64(-3, 6), Slope::of_i64(3, -6));
        assert_eq!(Slope::of_i64(-3, 6), Slope::of_i64(-1, 2));
        assert_eq!(Slope::of_i64(0, -3).to_string(), "1/0");
        assert_eq!(Slope::of_i64(-4, 1).to_string(), "-1/4");
        assert_eq!(Slope::of_i64(1, 2).to_string(), "2");
        assert_eq!(Slope::parse("1/0"), Some(Slope::vertical()));
        assert_eq!(Slope::parse("-1/4"), Some(Slope::of_i64(-4, 1)));
        assert_eq!(Slope::parse("3"), Some(Slope::of_i64(1, 3)));
    }

    #[test]
    fn slope_angle_order() {
        // 0 < 1/2 < 1 < 2 < vertical < -2 < -1/2
        let slopes = [
            Slope::of_i64(1, 0),
            Slope::of_i64(2, 1),
            Slope::of_i64(1, 1),
            Slope::of_i64(1, 2),
            Slope::vertical(),
            Slope::of_i64(-1, 2),
            Slope::of_i64(-2, 1),
        ];
        for w in slopes.windows(2) {
            assert!(w[0] < w[1], "{} < {}", w[0], w[1]);
        }
    }

    #[test]
    fn equivariance_under_unimodular_matrix() {
        use crate::surface::Mat2;
        let tr = torus();
        let m = Mat2::new(q_i64(2), q_i64(1), q_i64(1), q_i64(1));
        let tr2 = tr.apply_matrix(&m).unwrap();
        let l_sq = q_i64(10);
        // Image saddle connections of length <= L on the deformed surface.
        let big = enumerate(&tr, &q_i64(200));
        let mut expected: Vec<Pt> = big
            .iter()
            .map(|sc| m.apply(&sc.holonomy))
            .map(|p| canonical_sign(&p))
            .filter(|p| p.norm_sq() <= l_sq)
            .collect();
        expected.sort();
        expected.dedup();
        let mut got: Vec<Pt> = enumerate(&tr2, &l_sq)
            .iter()
            .map(|sc| sc.holonomy.clone())
            .collect();
        got.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn pillowcase_enumeration_runs() {
        let tr = crate::tri::tests::pillowcase();
        let scs = enumerate(&tr, &q_i64(2));
        assert!(!scs.is_empty());
        for sc in &scs {
            validate_sc(&tr, sc).unwrap();
        }
    }
}
