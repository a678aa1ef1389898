//! Triangulations of half-translation surfaces.
//!
//! Polygons are ear-clipped into Euclidean triangles whose vertices are the
//! polygon corners, gluings are resolved into a side-pairing of triangle
//! edges, and the triangulation is flipped to the (exact) Delaunay condition
//! so that all downstream enumeration and straightening is deterministic.
//!
//! Cone angles are computed exactly, in units of pi, by walking the corner
//! cycle around each vertex class and counting half-turns of the running
//! direction product; no angle is ever evaluated numerically.

use crate::geom::{cross, dot, incircle, orient, sign, HalfTrans, Pt, Q};
use crate::surface::{EdgeRef, Surface, SurfaceError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TriError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("ear clipping failed on polygon {0}; polygon must be simple")]
    EarClip(usize),
    #[error("Delaunay flip requires a strictly convex developed quadrilateral (edge t{0}.e{1})")]
    NonConvexFlip(usize, usize),
    #[error("Delaunay violation on an edge glued to its own triangle (t{0}.e{1}) is unsupported")]
    SelfAdjacentFlip(usize, usize),
    #[error("corner cycle around a vertex class does not close to a multiple of \u{3c0}")]
    BadConeAngle,
}

/// One glued side of a triangle edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Side {
    pub tri: usize,
    pub edge: usize,
}

impl Side {
    pub fn new(tri: usize, edge: usize) -> Self {
        Side { tri, edge }
    }
}

/// A triangulated half-translation surface. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    /// CCW triangles, each in its own chart.
    tris: Vec<[Pt; 3]>,
    /// Partner side and gluing sign of each side.
    opp: Vec<[(Side, i8); 3]>,
    /// Singularity class of each corner.
    vclass: Vec<[u32; 3]>,
    /// Cone angle of each class, in units of pi.
    cone_pi: Vec<u32>,
    /// True when every class is flat (angle 2pi) and kept as a marked point.
    all_removable: bool,
}

impl Surface {
    /// Triangulate: ear-clip every polygon and flip to the Delaunay condition.
    pub fn triangulate(&self) -> Result<Triangulation, TriError> {
        self.validate()?;
        Triangulation::build(self)
    }
}

struct RingEdge {
    /// Either an original polygon boundary edge or an interior chord id.
    tag: EdgeTag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum EdgeTag {
    Boundary(EdgeRef),
    Chord(usize),
}

impl Triangulation {
    fn build(s: &Surface) -> Result<Triangulation, TriError> {
        let mut tris: Vec<[Pt; 3]> = Vec::new();
        // Slot bookkeeping: where each polygon boundary edge and each chord ended up.
        let mut boundary_slot: Vec<(EdgeRef, Side)> = Vec::new();
        let mut chord_sides: Vec<Vec<Side>> = Vec::new();

        for (pi, poly) in s.polygons.iter().enumerate() {
            let n = poly.len();
            let mut ring_v: Vec<usize> = (0..n).collect();
            let mut ring_e: Vec<RingEdge> = (0..n)
                .map(|e| RingEdge {
                    tag: EdgeTag::Boundary(EdgeRef { poly: pi, edge: e }),
                })
                .collect();
            // ring_e[i] is the edge from ring_v[i] to ring_v[(i+1) % len].
            let pt = |vi: usize| poly.vertices[vi].clone();
            while ring_v.len() > 3 {
                let m = ring_v.len();
                let mut ear = None;
                'scan: for i in 0..m {
                    let ip = (i + m - 1) % m;
                    let inx = (i + 1) % m;
                    let (a, b, c) = (pt(ring_v[ip]), pt(ring_v[i]), pt(ring_v[inx]));
                    if orient(&a, &b, &c) <= 0 {
                        continue;
                    }
                    for (j, &vj) in ring_v.iter().enumerate() {
                        if j == ip || j == i || j == inx {
                            continue;
                        }
                        let p = pt(vj);
                        if orient(&a, &b, &p) >= 0
                            && orient(&b, &c, &p) >= 0
                            && orient(&c, &a, &p) >= 0
                        {
                            continue 'scan;
                        }
                    }
                    ear = Some(i);
                    break;
                }
                let i = ear.ok_or(TriError::EarClip(pi))?;
                let m = ring_v.len();
                let ip = (i + m - 1) % m;
                let inx = (i + 1) % m;
                let t = tris.len();
                tris.push([pt(ring_v[ip]), pt(ring_v[i]), pt(ring_v[inx])]);
                let chord = chord_sides.len();
                chord_sides.push(vec![Side::new(t, 2)]);
                for (slot, ring_idx) in [(0, ip), (1, i)] {
                    match ring_e[ring_idx].tag {
                        EdgeTag::Boundary(er) => boundary_slot.push((er, Side::new(t, slot))),
                        EdgeTag::Chord(cid) => chord_sides[cid].push(Side::new(t, slot)),
                    }
                }
                // Replace edges (ip -> i), (i -> inx) with the chord (ip -> inx).
                ring_e[ip] = RingEdge {
                    tag: EdgeTag::Chord(chord),
                };
                ring_v.remove(i);
                ring_e.remove(i);
            }
            let t = tris.len();
            tris.push([pt(ring_v[0]), pt(ring_v[1]), pt(ring_v[2])]);
            for (slot, ring_idx) in [(0, 0), (1, 1), (2, 2)] {
                match ring_e[ring_idx].tag {
                    EdgeTag::Boundary(er) => boundary_slot.push((er, Side::new(t, slot))),
                    EdgeTag::Chord(cid) => chord_sides[cid].push(Side::new(t, slot)),
                }
            }
        }

        // Assemble side pairing.
        let mut opp = vec![[(Side::new(usize::MAX, 0), 0i8); 3]; tris.len()];
        let mut set = |a: Side, b: Side, sgn: i8| {
            opp[a.tri][a.edge] = (b, sgn);
            opp[b.tri][b.edge] = (a, sgn);
        };
        for sides in &chord_sides {
            debug_assert_eq!(sides.len(), 2);
            set(sides[0], sides[1], 1);
        }
        let mut slot_of = std::collections::BTreeMap::new();
        for (er, side) in &boundary_slot {
            slot_of.insert(*er, *side);
        }
        for g in &s.gluings {
            set(slot_of[&g.a], slot_of[&g.b], g.sign);
        }

        let mut tr = Triangulation {
            tris,
            opp,
            vclass: Vec::new(),
            cone_pi: Vec::new(),
            all_removable: false,
        };
        tr.check_transitions()?;
        tr.delaunay_flips()?;
        tr.compute_classes()?;
        Ok(tr)
    }

    fn check_transitions(&self) -> Result<(), TriError> {
        for t in 0..self.tris.len() {
            for e in 0..3 {
                let (s2, sgn) = self.opp[t][e];
                debug_assert!(s2.tri != usize::MAX, "unset side t{t}.e{e}");
                let g = self.transition_raw(t, e);
                // g must also carry the second endpoint correctly.
                let a2 = &self.tris[s2.tri][s2.edge];
                let b = &self.tris[t][(e + 1) % 3];
                if &g.apply(a2) != b || sgn != g.sigma {
                    return Err(TriError::Surface(SurfaceError::BadGluing(
                        t, e, s2.tri, s2.edge,
                    )));
                }
            }
        }
        Ok(())
    }

    fn transition_raw(&self, t: usize, e: usize) -> HalfTrans {
        let (s2, sgn) = self.opp[t][e];
        let a = &self.tris[t][e];
        let b2 = &self.tris[s2.tri][(s2.edge + 1) % 3];
        let c = if sgn == 1 { a.sub(b2) } else { a.add(b2) };
        HalfTrans::new(sgn, c)
    }

    /// Transition map from the partner side's chart into the chart of `t`,
    /// across edge `e` of triangle `t`.
    pub fn transition(&self, t: usize, e: usize) -> HalfTrans {
        self.transition_raw(t, e)
    }

    pub fn opposite(&self, t: usize, e: usize) -> (Side, i8) {
        self.opp[t][e]
    }

    pub fn num_triangles(&self) -> usize {
        self.tris.len()
    }

    pub fn triangle(&self, t: usize) -> &[Pt; 3] {
        &self.tris[t]
    }

    pub fn corner_class(&self, t: usize, k: usize) -> u32 {
        self.vclass[t][k]
    }

    pub fn num_singularities(&self) -> usize {
        self.cone_pi.len()
    }

    pub fn cone_angle_pi(&self, class: u32) -> u32 {
        self.cone_pi[class as usize]
    }

    pub fn all_marked_points_removable(&self) -> bool {
        self.all_removable
    }

    /// Canonical list of undirected edges: the lexicographically smaller side.
    pub fn edges(&self) -> Vec<Side> {
        let mut out = Vec::new();
        for t in 0..self.tris.len() {
            for e in 0..3 {
                let (s2, _) = self.opp[t][e];
                if (t, e) <= (s2.tri, s2.edge) {
                    out.push(Side::new(t, e));
                }
            }
        }
        out
    }

    /// The canonical representative of the undirected edge through `side`.
    pub fn canonical_side(&self, side: Side) -> Side {
        let (s2, _) = self.opp[side.tri][side.edge];
        if (side.tri, side.edge) <= (s2.tri, s2.edge) {
            side
        } else {
            s2
        }
    }

    pub fn total_double_area(&self) -> Q {
        let mut acc = Q::zero();
        for t in &self.tris {
            acc += cross(&t[1].sub(&t[0]), &t[2].sub(&t[0]));
        }
        acc
    }

    pub fn euler_characteristic(&self) -> i64 {
        let f = self.tris.len() as i64;
        let e = 3 * f / 2;
        let v = self.cone_pi.len() as i64;
        v - e + f
    }

    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic()) / 2
    }

    /// Exact local Delaunay test on every edge.
    pub fn is_delaunay(&self) -> bool {
        self.first_violation().is_none()
    }

    fn first_violation(&self) -> Option<Side> {
        for t in 0..self.tris.len() {
            for e in 0..3 {
                let (s2, _) = self.opp[t][e];
                if (t, e) > (s2.tri, s2.edge) {
                    continue;
                }
                let g = self.transition_raw(t, e);
                let d = g.apply(&self.tris[s2.tri][(s2.edge + 2) % 3]);
                let [a, b, c] = &self.tris[t];
                if incircle(a, b, c, &d) > 0 {
                    return Some(Side::new(t, e));
                }
            }
        }
        None
    }

    fn delaunay_flips(&mut self) -> Result<(), TriError> {
        // Flip the first strictly violating edge until none remains. Exact
        // arithmetic plus strict violation guarantees termination; cocircular
        // configurations are left as produced by ear clipping.
        while let Some(side) = self.first_violation() {
            self.flip(side)?;
        }
        Ok(())
    }

    fn flip(&mut self, side: Side) -> Result<(), TriError> {
        let (t, e) = (side.tri, side.edge);
        let (s2, sgn) = self.opp[t][e];
        let (t2, e2) = (s2.tri, s2.edge);
        if t == t2 {
            return Err(TriError::SelfAdjacentFlip(t, e));
        }
        let g = self.transition_raw(t, e);
        let a = self.tris[t][e].clone();
        let b = self.tris[t][(e + 1) % 3].clone();
        let c = self.tris[t][(e + 2) % 3].clone();
        let d = g.apply(&self.tris[t2][(e2 + 2) % 3]);
        // Quad a, d, b, c must be strictly convex at a and b.
        if !(orient(&c, &a, &d) > 0 && orient(&d, &b, &c) > 0) {
            return Err(TriError::NonConvexFlip(t, e));
        }
        // Outer sides before the flip, with the chart-relocation sign applied
        // to sides that migrate from t2's chart into t's chart.
        let old_sides = [
            (Side::new(t2, (e2 + 1) % 3), sgn), // becomes a -> d
            (Side::new(t2, (e2 + 2) % 3), sgn), // becomes d -> b
            (Side::new(t, (e + 1) % 3), 1),     // b -> c
            (Side::new(t, (e + 2) % 3), 1),     // c -> a
        ];
        let old_partner: Vec<(Side, i8)> = old_sides
            .iter()
            .map(|(s, _)| self.opp[s.tri][s.edge])
            .collect();
        // New triangles, both in t's chart: (a, d, c) in slot t, (d, b, c) in slot t2.
        self.tris[t] = [a.clone(), d.clone(), c.clone()];
        self.tris[t2] = [d, b, c];
        let new_sides = [
            Side::new(t, 0),  // a -> d
            Side::new(t2, 0), // d -> b
            Side::new(t2, 1), // b -> c
            Side::new(t, 2),  // c -> a
        ];
        // Diagonal d -> c / c -> d between the two new triangles, same chart.
        self.opp[t][1] = (Side::new(t2, 2), 1);
        self.opp[t2][2] = (Side::new(t, 1), 1);
        let relocate = |s: Side| -> Option<(Side, i8)> {
            old_sides
                .iter()
                .zip(new_sides.iter())
                .find(|((os, _), _)| *os == s)
                .map(|((_, m), ns)| (*ns, *m))
        };
        for (i, (ns, (_, m_self))) in new_sides.iter().zip(old_sides.iter()).enumerate() {
            let (p_old, sgn_old) = old_partner[i];
            let (p_new, m_partner) = relocate(p_old).unwrap_or((p_old, 1));
            let new_sgn = m_self * sgn_old * m_partner;
            self.opp[ns.tri][ns.edge] = (p_new, new_sgn);
            self.opp[p_new.tri][p_new.edge] = (*ns, new_sgn);
        }
        debug_assert!(self.check_transitions().is_ok());
        Ok(())
    }

    /// Rotate counterclockwise around the vertex at corner (t, k): the next
    /// corner of the same vertex class.
    pub fn rotate_ccw(&self, t: usize, k: usize) -> (usize, usize) {
        let (s2, _) = self.opp[t][(k + 2) % 3];
        (s2.tri, s2.edge)
    }

    fn compute_classes(&mut self) -> Result<(), TriError> {
        let nt = self.tris.len();
        let mut class = vec![[u32::MAX; 3]; nt];
        let mut cone = Vec::new();
        for t0 in 0..nt {
            for k0 in 0..3 {
                if class[t0][k0] != u32::MAX {
                    continue;
                }
                let id = cone.len() as u32;
                let mut cycle = Vec::new();
                let (mut t, mut k) = (t0, k0);
                loop {
                    class[t][k] = id;
                    cycle.push((t, k));
                    let (t1, k1) = self.rotate_ccw(t, k);
                    t = t1;
                    k = k1;
                    if (t, k) == (t0, k0) {
                        break;
                    }
                }
                cone.push(self.cycle_angle_pi(&cycle)?);
            }
        }
        let flat: Vec<usize> = cone
            .iter()
            .enumerate()
            .filter(|(_, &a)| a == 2)
            .map(|(i, _)| i)
            .collect();
        let all_removable = flat.len() == cone.len();
        if !flat.is_empty() && !all_removable {
            return Err(TriError::Surface(SurfaceError::MixedRemovable(flat)));
        }
        // Gauss-Bonnet: sum over classes of (angle - 2pi) = -2pi chi.
        let f = nt as i64;
        let chi = cone.len() as i64 - 3 * f / 2 + f;
        let defect: i64 = cone.iter().map(|&a| a as i64 - 2).sum();
        if defect != -2 * chi {
            return Err(TriError::Surface(SurfaceError::GaussBonnet(defect, chi)));
        }
        self.vclass = class;
        self.cone_pi = cone;
        self.all_removable = all_removable;
        Ok(())
    }

    /// Total angle of a corner cycle, exactly, in units of pi. Accumulates the
    /// product of per-corner complex numbers (dot + i cross) and counts
    /// half-turn crossings from exact signs.
    fn cycle_angle_pi(&self, cycle: &[(usize, usize)]) -> Result<u32, TriError> {
        let mut h: u32 = 0;
        let mut re = BigInt::from(1);
        let mut im = BigInt::from(0);
        for &(t, k) in cycle {
            let v = &self.tris[t];
            let u = v[(k + 1) % 3].sub(&v[k]);
            let w = v[(k + 2) % 3].sub(&v[k]);
            let d = dot(&u, &w);
            let x = cross(&u, &w);
            debug_assert!(sign(&x) > 0, "triangles must be CCW and nondegenerate");
            // Integer direction of the corner angle.
            let denom_lcm = d.denom().lcm(x.denom());
            let zd = d.numer() * (&denom_lcm / d.denom());
            let zx = x.numer() * (&denom_lcm / x.denom());
            let nre = &re * &zd - &im * &zx;
            let nim = &re * &zx + &im * &zd;
            re = nre;
            im = nim;
            // Reduce to keep the integers small.
            let g = re.gcd(&im);
            if !g.is_zero() {
                re /= &g;
                im /= &g;
            }
            let flip = h % 2 == 1;
            let (qre, qim) = if flip {
                (-re.clone(), -im.clone())
            } else {
                (re.clone(), im.clone())
            };
            if qim.is_positive() {
                // still within the current half-turn
            } else if qim.is_zero() {
                if qre.is_positive() {
                    return Err(TriError::BadConeAngle);
                }
                h += 1;
            } else {
                h += 1;
            }
        }
        // The cycle closes only when the product is back on the positive real axis.
        let flip = h % 2 == 1;
        let (qre, qim) = if flip { (-re, -im) } else { (re, im) };
        if !qim.is_zero() || !qre.is_positive() {
            return Err(TriError::BadConeAngle);
        }
        Ok(h)
    }

    /// Transform every chart by a positive-determinant matrix and restore the
    /// Delaunay condition.
    pub fn apply_matrix(&self, m: &crate::surface::Mat2) -> Result<Triangulation, TriError> {
        if sign(&m.det()) <= 0 {
            return Err(TriError::Surface(SurfaceError::NonPositiveDet));
        }
        let mut tr = self.clone();
        for t in &mut tr.tris {
            for p in t.iter_mut() {
                *p = m.apply(p);
            }
        }
        tr.check_transitions()?;
        tr.delaunay_flips()?;
        tr.compute_classes()?;
        Ok(tr)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::geom::q_i64;
    use crate::surface::{Mat2, Origami};

    pub fn torus() -> Triangulation {
        Surface::from_origami(&Origami::new(1, vec![0], vec![0]).unwrap())
            .unwrap()
            .triangulate()
            .unwrap()
    }

    pub fn l_origami() -> Triangulation {
        // 3 squares, h = (1 2), v = (1 3) in 1-based cycle notation.
        Surface::from_origami(&Origami::new(3, vec![1, 0, 2], vec![2, 1, 0]).unwrap())
            .unwrap()
            .triangulate()
            .unwrap()
    }

    pub fn two_square_torus() -> Triangulation {
        Surface::from_origami(&Origami::new(2, vec![1, 0], vec![1, 0]).unwrap())
            .unwrap()
            .triangulate()
            .unwrap()
    }

    #[test]
    fn torus_triangulation() {
        let tr = torus();
        assert_eq!(tr.num_triangles(), 2);
        assert_eq!(tr.num_singularities(), 1);
        assert_eq!(tr.cone_angle_pi(0), 2);
        assert!(tr.all_marked_points_removable());
        assert_eq!(tr.genus(), 1);
        assert!(tr.is_delaunay());
        assert_eq!(tr.total_double_area(), q_i64(2));
    }

    #[test]
    fn l_origami_classes() {
        let tr = l_origami();
        assert_eq!(tr.num_triangles(), 6);
        // One singularity of cone angle 6pi; genus 2 by Gauss-Bonnet.
        assert_eq!(tr.num_singularities(), 1);
        assert_eq!(tr.cone_angle_pi(0), 6);
        assert_eq!(tr.genus(), 2);
        assert!(!tr.all_marked_points_removable());
        assert_eq!(tr.total_double_area(), q_i64(6));
    }

    #[test]
    fn two_square_torus_classes() {
        // Corner chasing: two flat classes of angle 2pi each (a single class
        // of 4pi would violate Gauss-Bonnet on a genus-1 surface).
        let tr = two_square_torus();
        assert_eq!(tr.num_singularities(), 2);
        assert_eq!(tr.cone_angle_pi(0), 2);
        assert_eq!(tr.cone_angle_pi(1), 2);
        assert_eq!(tr.genus(), 1);
        assert!(tr.all_marked_points_removable());
    }

    #[test]
    fn sheared_torus_needs_flips() {
        let s = Surface::from_origami(&Origami::new(1, vec![0], vec![0]).unwrap()).unwrap();
        // Shear twice so the initial split is no longer Delaunay.
        let shear = Mat2::new(q_i64(1), q_i64(2), q_i64(0), q_i64(1));
        let t = s.apply_matrix(&shear).unwrap().triangulate().unwrap();
        assert!(t.is_delaunay());
        assert_eq!(t.total_double_area(), q_i64(2));
        assert_eq!(t.num_singularities(), 1);
        assert_eq!(t.cone_angle_pi(0), 2);
    }

    #[test]
    fn pillowcase_has_four_poles() {
        // The pillowcase: a 1 x 1/2 rectangle with top and bottom edges folded
        // onto themselves (sign -1, split at their midpoints) and the vertical
        // edges identified by translation. Sphere with four cone points of
        // angle pi.
        let tr = pillowcase();
        assert_eq!(tr.num_singularities(), 4);
        for c in 0..4 {
            assert_eq!(tr.cone_angle_pi(c), 1);
        }
        assert_eq!(tr.genus(), 0);
    }

    pub fn pillowcase() -> Triangulation {
        use crate::geom::parse_q;
        use crate::surface::{EdgeRef, Gluing, Polygon};
        let p = |x: &str, y: &str| Pt::new(parse_q(x).unwrap(), parse_q(y).unwrap());
        let hexagon = Polygon {
            vertices: vec![
                p("0", "0"),
                p("1/2", "0"),
                p("1", "0"),
                p("1", "1/2"),
                p("1/2", "1/2"),
                p("0", "1/2"),
            ],
        };
        let glue = |e1: usize, e2: usize, sign: i8| Gluing {
            a: EdgeRef { poly: 0, edge: e1 },
            b: EdgeRef { poly: 0, edge: e2 },
            sign,
        };
        let s = Surface {
            polygons: vec![hexagon],
            gluings: vec![glue(0, 1, -1), glue(3, 4, -1), glue(2, 5, 1)],
        };
        s.triangulate().unwrap()
    }

    #[test]
    fn doubled_square_with_minus_one_gluings_is_flat_torus() {
        // Gluing two unit squares edgewise by z -> -z + c on all four pairs
        // yields a flat torus with two removable marked classes.
        use crate::surface::{EdgeRef, Gluing, Polygon};
        let sq = Polygon {
            vertices: vec![
                Pt::of_i64(0, 0),
                Pt::of_i64(1, 0),
                Pt::of_i64(1, 1),
                Pt::of_i64(0, 1),
            ],
        };
        let glue = |e1: usize, e2: usize| Gluing {
            a: EdgeRef { poly: 0, edge: e1 },
            b: EdgeRef { poly: 1, edge: e2 },
            sign: -1,
        };
        let s = Surface {
            polygons: vec![sq.clone(), sq],
            gluings: vec![glue(0, 0), glue(1, 1), glue(2, 2), glue(3, 3)],
        };
        let tr = s.triangulate().unwrap();
        assert_eq!(tr.num_singularities(), 2);
        assert_eq!(tr.genus(), 1);
        assert!(tr.all_marked_points_removable());
    }

    #[test]
    fn in_circle_holds_on_all_edges_after_build() {
        for tr in [torus(), l_origami(), two_square_torus()] {
            for side in tr.edges() {
                let (s2, _) = tr.opposite(side.tri, side.edge);
                let g = tr.transition(side.tri, side.edge);
                let d = g.apply(&tr.triangle(s2.tri)[(s2.edge + 2) % 3]);
                let [a, b, c] = tr.triangle(side.tri);
                assert!(incircle(a, b, c, &d) <= 0);
            }
        }
    }

    #[test]
    fn matrix_preserves_combinatorial_area() {
        let tr = l_origami();
        let m = Mat2::new(q_i64(2), q_i64(1), q_i64(1), q_i64(1));
        let tr2 = tr.apply_matrix(&m).unwrap();
        // det = 1, so the area is preserved.
        assert_eq!(tr2.total_double_area(), tr.total_double_area());
        assert_eq!(tr2.num_singularities(), 1);
        assert_eq!(tr2.cone_angle_pi(0), 6);
    }
}
