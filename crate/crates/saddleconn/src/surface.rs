//! Half-translation surfaces as glued polygons with exact rational vertices.
//!
//! A [`Surface`] is a list of simple polygons together with a pairing of their
//! boundary edges by maps `z -> z + c` (sign +1) or `z -> -z + c` (sign -1).
//! The singularity data (cone angles, marked points) lives on the triangulated
//! form; see [`crate::tri`].

use crate::geom::{cross, sign, Pt, Q};
use num_traits::Zero;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("polygon {0} has fewer than 3 vertices")]
    TooFewVertices(usize),
    #[error("polygon {0} is not positively oriented (signed area must be > 0)")]
    NotCcw(usize),
    #[error("polygon {0} has a repeated vertex")]
    RepeatedVertex(usize),
    #[error("edge ({0}, e{1}) is glued more than once")]
    DoubleGlued(usize, usize),
    #[error("edge ({0}, e{1}) is not glued")]
    Unglued(usize, usize),
    #[error("edge ({0}, e{1}) is glued to itself")]
    SelfGlued(usize, usize),
    #[error("gluing of ({0}, e{1}) to ({2}, e{3}) is incompatible: glued edges must have equal length and compatible direction for the declared sign")]
    BadGluing(usize, usize, usize, usize),
    #[error("invalid gluing reference ({0}, e{1})")]
    BadEdgeRef(usize, usize),
    #[error("origami is disconnected; orbits of <h, v>: {0:?}")]
    Disconnected(Vec<Vec<usize>>),
    #[error("permutation is not a bijection on 1..={0}")]
    BadPermutation(usize),
    #[error("matrix must have positive determinant")]
    NonPositiveDet,
    #[error("surface mixes removable (angle 2\u{3c0}) vertex classes with genuine singularities; remove the flat vertices or mark every class: {0:?}")]
    MixedRemovable(Vec<usize>),
    #[error("Gauss-Bonnet violated: total angle defect {0}\u{3c0} != -2\u{3c0}\u{3c7} with \u{3c7} = {1}")]
    GaussBonnet(i64, i64),
}

/// A simple polygon with CCW vertices in its own chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    pub vertices: Vec<Pt>,
}

impl Polygon {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Twice the signed area.
    pub fn double_area(&self) -> Q {
        let n = self.vertices.len();
        let mut acc = Q::zero();
        for i in 0..n {
            acc += cross(&self.vertices[i], &self.vertices[(i + 1) % n]);
        }
        acc
    }
}

/// One side of a glued edge: polygon index and boundary edge index
/// (edge `e` runs from vertex `e` to vertex `e+1 mod n`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRef {
    pub poly: usize,
    pub edge: usize,
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}.e{}", self.poly, self.edge)
    }
}

/// An unordered gluing of two distinct boundary edges with a sign:
/// +1 for `z -> z + c`, -1 for `z -> -z + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub a: EdgeRef,
    pub b: EdgeRef,
    pub sign: i8,
}

/// A half-translation surface presented as glued polygons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surface {
    pub polygons: Vec<Polygon>,
    pub gluings: Vec<Gluing>,
}

/// A square-tiled translation surface given by the right- and top-neighbor
/// permutations of its unit squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Origami {
    pub n: usize,
    /// h[i] = index (0-based) of the square to the right of square i.
    pub h: Vec<usize>,
    /// v[i] = index (0-based) of the square above square i.
    pub v: Vec<usize>,
}

impl Origami {
    pub fn new(n: usize, h: Vec<usize>, v: Vec<usize>) -> Result<Self, SurfaceError> {
        for p in [&h, &v] {
            if p.len() != n || !is_permutation(p) {
                return Err(SurfaceError::BadPermutation(n));
            }
        }
        let o = Origami { n, h, v };
        let orbits = o.orbits();
        if orbits.len() != 1 {
            return Err(SurfaceError::Disconnected(
                orbits
                    .into_iter()
                    .map(|orb| orb.into_iter().map(|i| i + 1).collect())
                    .collect(),
            ));
        }
        Ok(o)
    }

    fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut orbits = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(i) = stack.pop() {
                orbit.push(i);
                for j in [self.h[i], self.v[i], inv_at(&self.h, i), inv_at(&self.v, i)] {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits.sort();
        orbits
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

fn inv_at(p: &[usize], i: usize) -> usize {
    p.iter().position(|&x| x == i).expect("permutation")
}

/// A 2x2 matrix with exact rational entries, acting on charts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub a: Q,
    pub b: Q,
    pub c: Q,
    pub d: Q,
}

impl Mat2 {
    pub fn new(a: Q, b: Q, c: Q, d: Q) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        use num_traits::One;
        Mat2::new(Q::one(), Q::zero(), Q::zero(), Q::one())
    }

    pub fn det(&self) -> Q {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn apply(&self, p: &Pt) -> Pt {
        Pt::new(&self.a * &p.x + &self.b * &p.y, &self.c * &p.x + &self.d * &p.y)
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        Some(Mat2::new(
            &self.d / &det,
            -&self.b / &det,
            -&self.c / &det,
            &self.a / &det,
        ))
    }
}

impl Surface {
    /// Validate polygon shapes and the edge pairing. Called by constructors;
    /// exposed for inputs assembled by hand.
    pub fn validate(&self) -> Result<(), SurfaceError> {
        for (pi, poly) in self.polygons.iter().enumerate() {
            if poly.len() < 3 {
                return Err(SurfaceError::TooFewVertices(pi));
            }
            let n = poly.len();
            for i in 0..n {
                for j in (i + 1)..n {
                    if poly.vertices[i] == poly.vertices[j] {
                        return Err(SurfaceError::RepeatedVertex(pi));
                    }
                }
            }
            if sign(&poly.double_area()) <= 0 {
                return Err(SurfaceError::NotCcw(pi));
            }
        }
        // Every boundary edge glued exactly once, to a distinct edge.
        let mut partner: Vec<Vec<Option<(EdgeRef, i8)>>> = self
            .polygons
            .iter()
            .map(|p| vec![None; p.len()])
            .collect();
        for g in &self.gluings {
            for e in [g.a, g.b] {
                if e.poly >= self.polygons.len() || e.edge >= self.polygons[e.poly].len() {
                    return Err(SurfaceError::BadEdgeRef(e.poly, e.edge));
                }
            }
            if g.a == g.b {
                return Err(SurfaceError::SelfGlued(g.a.poly, g.a.edge));
            }
            for (e, o) in [(g.a, g.b), (g.b, g.a)] {
                let slot = &mut partner[e.poly][e.edge];
                if slot.is_some() {
                    return Err(SurfaceError::DoubleGlued(e.poly, e.edge));
                }
                *slot = Some((o, g.sign));
            }
        }
        for (pi, slots) in partner.iter().enumerate() {
            for (ei, slot) in slots.iter().enumerate() {
                if slot.is_none() {
                    return Err(SurfaceError::Unglued(pi, ei));
                }
            }
        }
        // Direction compatibility: with both boundaries CCW, the identified
        // edges must satisfy sigma * dir' = -dir.
        for g in &self.gluings {
            let da = self.edge_vector(g.a);
            let db = self.edge_vector(g.b);
            let want = if g.sign == 1 { db.neg() } else { db };
            if da != want {
                return Err(SurfaceError::BadGluing(
                    g.a.poly, g.a.edge, g.b.poly, g.b.edge,
                ));
            }
        }
        Ok(())
    }

    pub fn edge_vector(&self, e: EdgeRef) -> Pt {
        let poly = &self.polygons[e.poly];
        let n = poly.len();
        poly.vertices[(e.edge + 1) % n].sub(&poly.vertices[e.edge])
    }

    /// Total area (each polygon counted once).
    pub fn double_area(&self) -> Q {
        self.polygons.iter().map(|p| p.double_area()).sum()
    }

    /// Apply a positive-determinant matrix to every chart.
    pub fn apply_matrix(&self, m: &Mat2) -> Result<Surface, SurfaceError> {
        if sign(&m.det()) <= 0 {
            return Err(SurfaceError::NonPositiveDet);
        }
        let polygons = self
            .polygons
            .iter()
            .map(|p| Polygon {
                vertices: p.vertices.iter().map(|q| m.apply(q)).collect(),
            })
            .collect();
        let s = Surface {
            polygons,
            gluings: self.gluings.clone(),
        };
        s.validate()?;
        Ok(s)
    }

    /// The square-tiled translation surface of an origami: square `i` is the
    /// unit square in its own chart, its right edge glued to the left edge of
    /// square `h(i)` and its top edge to the bottom edge of square `v(i)`.
    pub fn from_origami(o: &Origami) -> Result<Surface, SurfaceError> {
        let square = Polygon {
            vertices: vec![
                Pt::of_i64(0, 0),
                Pt::of_i64(1, 0),
                Pt::of_i64(1, 1),
                Pt::of_i64(0, 1),
            ],
        };
        let mut gluings = Vec::with_capacity(2 * o.n);
        for i in 0..o.n {
            // right edge (e1) of i to left edge (e3) of h(i)
            gluings.push(Gluing {
                a: EdgeRef { poly: i, edge: 1 },
                b: EdgeRef {
                    poly: o.h[i],
                    edge: 3,
                },
                sign: 1,
            });
            // top edge (e2) of i to bottom edge (e0) of v(i)
            gluings.push(Gluing {
                a: EdgeRef { poly: i, edge: 2 },
                b: EdgeRef {
                    poly: o.v[i],
                    edge: 0,
                },
                sign: 1,
            });
        }
        let s = Surface {
            polygons: vec![square; o.n],
            gluings,
        };
        s.validate()?;
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn square_torus() -> Surface {
        Surface::from_origami(&Origami::new(1, vec![0], vec![0]).unwrap()).unwrap()
    }

    #[test]
    fn origami_validation() {
        assert!(Origami::new(1, vec![0], vec![0]).is_ok());
        // transitive: 3 squares, h = (1 2), v = (1 3) in 1-based cycle notation
        assert!(Origami::new(3, vec![1, 0, 2], vec![2, 1, 0]).is_ok());
        // disconnected: h = id, v = id on 2 squares
        match Origami::new(2, vec![0, 1], vec![0, 1]) {
            Err(SurfaceError::Disconnected(orbits)) => {
                assert_eq!(orbits, vec![vec![1], vec![2]]);
            }
            other => panic!("expected disconnection, got {other:?}"),
        }
        assert!(Origami::new(2, vec![0, 0], vec![0, 1]).is_err());
    }

    #[test]
    fn torus_surface_valid() {
        let s = square_torus();
        assert_eq!(s.polygons.len(), 1);
        assert_eq!(s.gluings.len(), 2);
        assert_eq!(s.double_area(), crate::geom::q_i64(2));
    }

    #[test]
    fn matrix_action() {
        let s = square_torus();
        let id = Mat2::identity();
        assert_eq!(s.apply_matrix(&id).unwrap(), s);

        // shear (1,1;0,1): unit square becomes a parallelogram
        let shear = Mat2::new(
            crate::geom::q_i64(1),
            crate::geom::q_i64(1),
            crate::geom::q_i64(0),
            crate::geom::q_i64(1),
        );
        let t = s.apply_matrix(&shear).unwrap();
        assert_eq!(t.polygons[0].vertices[2], Pt::of_i64(2, 1));
        assert_eq!(t.double_area(), crate::geom::q_i64(2));

        // rotation by 90 degrees: (0,-1;1,0)
        let rot = Mat2::new(
            crate::geom::q_i64(0),
            crate::geom::q_i64(-1),
            crate::geom::q_i64(1),
            crate::geom::q_i64(0),
        );
        assert!(s.apply_matrix(&rot).is_ok());

        let refl = Mat2::new(
            crate::geom::q_i64(1),
            crate::geom::q_i64(0),
            crate::geom::q_i64(0),
            crate::geom::q_i64(-1),
        );
        assert!(matches!(
            s.apply_matrix(&refl),
            Err(SurfaceError::NonPositiveDet)
        ));
    }

    #[test]
    fn matrix_functoriality() {
        let s = square_torus();
        let m1 = Mat2::new(
            crate::geom::q_i64(1),
            crate::geom::q_i64(1),
            crate::geom::q_i64(0),
            crate::geom::q_i64(1),
        );
        let m2 = Mat2::new(
            crate::geom::q_i64(2),
            crate::geom::q_i64(1),
            crate::geom::q_i64(1),
            crate::geom::q_i64(1),
        );
        let lhs = s.apply_matrix(&m1).unwrap().apply_matrix(&m2).unwrap();
        let rhs = s.apply_matrix(&m2.mul(&m1)).unwrap();
        assert_eq!(lhs, rhs);
    }
}
