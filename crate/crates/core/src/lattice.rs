//! The overlattice `N = Z^n + sum Z g` and fans of toric resolutions.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::group::AbelianGroup;
use crate::matrix;
use crate::rational::{dot, format_vector, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overlattice {
    dimension: usize,
    /// Rows form a Z-basis of N, dual to `dual_basis`.
    basis: Vec<Vec<Q>>,
    /// Rows form a Z-basis of M0 = Hom(N, Z).
    dual_basis: Vec<Vec<i64>>,
    index: u64,
}

pub fn build_lattice(group: &AbelianGroup) -> Overlattice {
    let dual_basis = group.invariant_basis().to_vec();
    let m = matrix::to_rational(&dual_basis);
    let basis = matrix::inverse(&matrix::transpose(&m)).expect("M0 has full rank");
    let index = matrix::determinant(&m).abs();
    debug_assert!(index.is_integer());
    Overlattice {
        dimension: group.dimension(),
        basis,
        dual_basis,
        index: index.to_integer() as u64,
    }
}

impl Overlattice {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn dual_basis(&self) -> &[Vec<i64>] {
        &self.dual_basis
    }

    /// `[N : Z^n]`, equal to `|G|`.
    pub fn index(&self) -> u64 {
        self.index
    }

    /// Coordinates of `v` in the basis of N.
    pub fn coordinates(&self, v: &[Q]) -> Vec<Q> {
        self.dual_basis.iter().map(|m| dot(v, m)).collect()
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.coordinates(v).iter().all(|c| c.is_integer())
    }

    /// `v` is a nonzero point of N that is not a proper multiple of another.
    pub fn is_primitive(&self, v: &[Q]) -> bool {
        let c = self.coordinates(v);
        if !c.iter().all(|x| x.is_integer()) {
            return false;
        }
        c.iter().fold(0i64, |g, x| g.gcd(&x.to_integer())) == 1
    }

    /// Determinant of `vectors` measured in N-coordinates.
    pub fn det(&self, vectors: &[&[Q]]) -> Q {
        let rows: Vec<Vec<Q>> = vectors.iter().map(|v| self.coordinates(v)).collect();
        matrix::determinant(&rows)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RayKind {
    Exceptional,
    /// Parallel to `e_i` but equal to `e_i / k` with `k >= 2`.
    CoordinateBranch,
    CoordinatePlain,
}

impl RayKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RayKind::Exceptional => "exceptional",
            RayKind::CoordinateBranch => "coordinate-branch",
            RayKind::CoordinatePlain => "coordinate-plain",
        }
    }
}

impl fmt::Display for RayKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ray {
    pub id: usize,
    pub vector: Vec<Q>,
    pub kind: RayKind,
}

impl Ray {
    /// Classifies `vector` by shape alone.
    pub fn kind_of(vector: &[Q]) -> RayKind {
        let nonzero: Vec<&Q> = vector.iter().filter(|x| !x.is_zero()).collect();
        match nonzero.as_slice() {
            [x] if x.is_one() => RayKind::CoordinatePlain,
            [_] => RayKind::CoordinateBranch,
            _ => RayKind::Exceptional,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("ray {ray} has length {got}, expected {expected}")]
    RayLength {
        ray: usize,
        expected: usize,
        got: usize,
    },
    #[error("cone {cone} references ray {ray}, but there are only {rays} rays")]
    RayIndexOutOfRange {
        cone: usize,
        ray: usize,
        rays: usize,
    },
    #[error("fan has no cones")]
    Empty,
    #[error("automatic resolution needs dimension 2, got {0}")]
    DimensionUnsupported(usize),
}

/// A simplicial fan. Rays are kept in lexicographic order of their
/// coordinates and `Ray::id` is the position in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    rays: Vec<Ray>,
    cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Builds a fan from raw ray vectors and cones given as indices into
    /// `vectors`. Rays are re-sorted and cone indices remapped.
    pub fn new(
        dimension: usize,
        vectors: Vec<Vec<Q>>,
        cones: Vec<Vec<usize>>,
    ) -> Result<Fan, FanError> {
        for (ray, v) in vectors.iter().enumerate() {
            if v.len() != dimension {
                return Err(FanError::RayLength {
                    ray,
                    expected: dimension,
                    got: v.len(),
                });
            }
        }
        for (cone, c) in cones.iter().enumerate() {
            if let Some(&ray) = c.iter().find(|&&r| r >= vectors.len()) {
                return Err(FanError::RayIndexOutOfRange {
                    cone,
                    ray,
                    rays: vectors.len(),
                });
            }
        }
        if cones.is_empty() {
            return Err(FanError::Empty);
        }
        let mut order: Vec<usize> = (0..vectors.len()).collect();
        order.sort_by(|&a, &b| vectors[a].cmp(&vectors[b]).then(a.cmp(&b)));
        let mut position = vec![0; vectors.len()];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let rays = order
            .iter()
            .enumerate()
            .map(|(id, &old)| Ray {
                id,
                vector: vectors[old].clone(),
                kind: Ray::kind_of(&vectors[old]),
            })
            .collect();
        let cones = cones
            .into_iter()
            .map(|c| {
                let mut c: Vec<usize> = c.into_iter().map(|r| position[r]).collect();
                c.sort_unstable();
                c
            })
            .collect();
        Ok(Fan { rays, cones })
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn ray(&self, id: usize) -> &Ray {
        &self.rays[id]
    }

    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn dimension(&self) -> usize {
        self.rays.first().map_or(0, |r| r.vector.len())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeFailure {
    WrongArity {
        cone: usize,
        rays: usize,
    },
    RepeatedRay {
        cone: usize,
    },
    /// `det_N` of the cone's rays is not ±1.
    NotUnimodular {
        cone: usize,
        det: Q,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FacetFailure {
    /// A facet off the coordinate hyperplanes not shared by exactly two cones.
    Unpaired {
        facet: Vec<usize>,
        cones: Vec<usize>,
    },
    /// Two cones on the same side of their common facet.
    Overlapping {
        facet: Vec<usize>,
        cones: Vec<usize>,
    },
    /// A facet on a coordinate hyperplane used by more than one cone.
    BoundaryShared {
        facet: Vec<usize>,
        cones: Vec<usize>,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FanReport {
    pub non_primitive: Vec<usize>,
    pub outside_orthant: Vec<usize>,
    pub duplicate_rays: Vec<(usize, usize)>,
    pub cone_failures: Vec<ConeFailure>,
    pub facet_failures: Vec<FacetFailure>,
}

impl FanReport {
    pub fn primitivity_ok(&self) -> bool {
        self.non_primitive.is_empty() && self.duplicate_rays.is_empty()
    }

    pub fn orthant_ok(&self) -> bool {
        self.outside_orthant.is_empty()
    }

    pub fn smoothness_ok(&self) -> bool {
        self.cone_failures.is_empty()
    }

    pub fn properness_ok(&self) -> bool {
        self.facet_failures.is_empty()
    }

    pub fn pass(&self) -> bool {
        self.primitivity_ok() && self.orthant_ok() && self.smoothness_ok() && self.properness_ok()
    }
}

pub fn validate_fan(fan: &Fan, lat: &Overlattice) -> FanReport {
    let n = lat.dimension();
    let mut report = FanReport::default();
    for ray in &fan.rays {
        if !lat.is_primitive(&ray.vector) {
            report.non_primitive.push(ray.id);
        }
        if ray.vector.iter().any(|x| x.is_negative()) {
            report.outside_orthant.push(ray.id);
        }
    }
    for w in fan.rays.windows(2) {
        if w[0].vector == w[1].vector {
            report.duplicate_rays.push((w[0].id, w[1].id));
        }
    }

    let mut well_formed = Vec::new();
    for (idx, cone) in fan.cones.iter().enumerate() {
        if cone.len() != n {
            report.cone_failures.push(ConeFailure::WrongArity {
                cone: idx,
                rays: cone.len(),
            });
            continue;
        }
        if cone.windows(2).any(|w| w[0] == w[1]) {
            report
                .cone_failures
                .push(ConeFailure::RepeatedRay { cone: idx });
            continue;
        }
        let vs: Vec<&[Q]> = cone
            .iter()
            .map(|&r| fan.rays[r].vector.as_slice())
            .collect();
        let det = lat.det(&vs);
        if det.abs() != Q::one() {
            report
                .cone_failures
                .push(ConeFailure::NotUnimodular { cone: idx, det });
        }
        if !det.is_zero() {
            well_formed.push(idx);
        }
    }

    // facet pairing over the full-dimensional cones
    let mut facets: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
    for &idx in &well_formed {
        let cone = &fan.cones[idx];
        for (skip, &opposite) in cone.iter().enumerate() {
            let facet: Vec<usize> = cone
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, &r)| r)
                .collect();
            facets.entry(facet).or_default().push((idx, opposite));
        }
    }
    for (facet, owners) in facets {
        let cones: Vec<usize> = owners.iter().map(|&(c, _)| c).collect();
        let on_boundary = (0..n).any(|i| facet.iter().all(|&r| fan.rays[r].vector[i].is_zero()));
        if on_boundary {
            if owners.len() != 1 {
                report
                    .facet_failures
                    .push(FacetFailure::BoundaryShared { facet, cones });
            }
            continue;
        }
        if owners.len() != 2 {
            report
                .facet_failures
                .push(FacetFailure::Unpaired { facet, cones });
            continue;
        }
        let side = |opposite: usize| {
            let mut rows: Vec<&[Q]> = facet
                .iter()
                .map(|&r| fan.rays[r].vector.as_slice())
                .collect();
            rows.push(&fan.rays[opposite].vector);
            let rows: Vec<Vec<Q>> = rows.into_iter().map(|r| r.to_vec()).collect();
            matrix::determinant(&rows).signum()
        };
        if side(owners[0].1) == side(owners[1].1) {
            report
                .facet_failures
                .push(FacetFailure::Overlapping { facet, cones });
        }
    }
    report
}

/// Re-derives every ray kind from its vector. Kinds only depend on the shape
/// of the vector once the fan has been validated (rays primitive in N).
pub fn classify_rays(fan: &Fan, _lat: &Overlattice) -> Fan {
    let mut out = fan.clone();
    for ray in &mut out.rays {
        ray.kind = Ray::kind_of(&ray.vector);
    }
    out
}

/// Hirzebruch–Jung resolution of a surface quotient: the lattice points on
/// the compact boundary of `conv((N ∩ R^2_{>=0}) \ {0})`.
pub fn minimal_resolution_2d(lat: &Overlattice) -> Result<Fan, FanError> {
    if lat.dimension() != 2 {
        return Err(FanError::DimensionUnsupported(lat.dimension()));
    }
    // N ⊂ (1/e) Z^2 where e is the exponent of N / Z^2
    let e = lat
        .basis()
        .iter()
        .flatten()
        .fold(1i64, |acc, q| acc.lcm(q.denom()));
    let mut points: Vec<(i64, i64)> = Vec::new();
    for a in 0..=e {
        for b in 0..=e {
            if (a, b) == (0, 0) {
                continue;
            }
            let v = [Q::new(a, e), Q::new(b, e)];
            if lat.contains(&v) {
                points.push((a, b));
            }
        }
    }
    // lowest point on the y-axis and leftmost point on the x-axis bound the chain
    let start = points
        .iter()
        .filter(|p| p.0 == 0)
        .min_by_key(|p| p.1)
        .copied()
        .expect("e_2 is in N");
    let end = points
        .iter()
        .filter(|p| p.1 == 0)
        .min_by_key(|p| p.0)
        .copied()
        .expect("e_1 is in N");
    points.retain(|p| p.0 <= end.0 && p.1 <= start.1);
    points.sort_by(|p, q| p.0.cmp(&q.0).then(p.1.cmp(&q.1)));
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    // lower hull, keeping collinear boundary points
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &p in points.iter().skip_while(|&&p| p != start) {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) < 0 {
            hull.pop();
        }
        hull.push(p);
        if p == end {
            break;
        }
    }
    let vectors: Vec<Vec<Q>> = hull
        .iter()
        .map(|&(a, b)| vec![Q::new(a, e), Q::new(b, e)])
        .collect();
    let cones = (0..vectors.len() - 1).map(|i| vec![i, i + 1]).collect();
    Fan::new(2, vectors, cones)
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ray {} ({}) [{}]",
            self.id,
            format_vector(&self.vector),
            self.kind
        )
    }
}
