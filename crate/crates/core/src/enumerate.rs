//! Enumeration of all normalised reductor sets of an instance.
//!
//! The reductor inequalities decouple across rays, so the catalog is the
//! cartesian product of per-ray solution sets. At a single ray `P` with
//! vector `v` the unknowns are `q_chi` for every character, subject to
//!
//! * `fract(q_chi) = v_P(chi)`,
//! * `-M_{chi^-1,P} <= q_chi <= M_{chi,P}` (so `q_chi0 = 0`),
//! * `q_{chi·ρ(x_i)} <= q_chi + v_i` for every generator `x_i`.
//!
//! The last family is a difference-constraint system on the character graph
//! with arrows `chi -> chi·ρ(x_i)`. The search assigns characters in table
//! order and tightens the intervals of unassigned neighbours along those
//! arrows, backtracking as soon as an interval holds no admissible value.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::instance::Instance;
use crate::rational::{ceil_to_residue, floor_to_residue, Q};
use crate::reductor::{char_shift, reflect, ReductorSet};
use crate::valuation::QDivisor;

pub const DEFAULT_MAX_CATALOG: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("catalog holds {total} families, above the materialization cap of {cap}")]
    CatalogTooLarge { total: BigUint, cap: u128 },
    #[error("symmetry image of family {family} is not in the catalog")]
    NotClosed { family: usize },
}

/// All admissible coefficient columns at one ray, sorted lexicographically
/// in character order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaySolutionSet {
    pub ray: usize,
    pub solutions: Vec<Vec<Q>>,
}

impl RaySolutionSet {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }
}

struct RaySearch<'a> {
    residue: &'a [Q],
    weights: &'a [Q],
    /// `successor[i][chi]` and `predecessor[i][chi]` along `ρ(x_i)`.
    successor: Vec<Vec<usize>>,
    predecessor: Vec<Vec<usize>>,
    current: Vec<Q>,
    out: Vec<Vec<Q>>,
}

impl RaySearch<'_> {
    fn admissible(&self, chi: usize, lo: Q, hi: Q) -> bool {
        ceil_to_residue(lo, self.residue[chi]) <= hi
    }

    fn descend(&mut self, depth: usize, lower: &[Q], upper: &[Q]) {
        let k = self.residue.len();
        if depth == k {
            self.out.push(self.current.clone());
            return;
        }
        let mut value = ceil_to_residue(lower[depth], self.residue[depth]);
        let top = floor_to_residue(upper[depth], self.residue[depth]);
        while value <= top {
            let mut lo = lower.to_vec();
            let mut hi = upper.to_vec();
            let mut feasible = true;
            for (i, w) in self.weights.iter().enumerate() {
                // q_next <= value + w
                let next = self.successor[i][depth];
                if next > depth {
                    hi[next] = hi[next].min(value + *w);
                    feasible &= self.admissible(next, lo[next], hi[next]);
                }
                // value <= q_prev + w
                let prev = self.predecessor[i][depth];
                if prev > depth {
                    lo[prev] = lo[prev].max(value - *w);
                    feasible &= self.admissible(prev, lo[prev], hi[prev]);
                }
            }
            if feasible {
                self.current[depth] = value;
                self.descend(depth + 1, &lo, &hi);
            }
            value += Q::from_integer(1);
        }
    }
}

/// Interval `[-M_{chi^-1}, M_chi]` for every character at `ray`.
fn bounds(inst: &Instance, ray: usize) -> (Vec<Q>, Vec<Q>) {
    let table = inst.characters();
    let upper = inst.max_shift_row(ray).to_vec();
    let lower = (0..table.len())
        .map(|chi| -inst.max_shift_coeff(ray, table.inverse(chi)))
        .collect();
    (lower, upper)
}

pub fn per_ray_solutions(inst: &Instance, ray: usize) -> RaySolutionSet {
    let table = inst.characters();
    let k = table.len();
    let n = inst.dimension();
    let successor: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..k).map(|c| table.successor(i, c)).collect())
        .collect();
    let predecessor: Vec<Vec<usize>> = successor
        .iter()
        .map(|succ| {
            let mut pred = vec![0; k];
            for (c, &s) in succ.iter().enumerate() {
                pred[s] = c;
            }
            pred
        })
        .collect();
    let (lower, upper) = bounds(inst, ray);
    let mut search = RaySearch {
        residue: inst.canonical_row(ray),
        weights: &inst.rays()[ray].vector,
        successor,
        predecessor,
        current: vec![Q::zero(); k],
        out: Vec::new(),
    };
    search.descend(0, &lower, &upper);
    RaySolutionSet {
        ray,
        solutions: search.out,
    }
}

/// Reference enumeration: every point of the bounding box with the right
/// fractional parts, filtered by direct evaluation of the inequalities.
pub fn brute_force_per_ray(inst: &Instance, ray: usize) -> RaySolutionSet {
    let table = inst.characters();
    let (lower, upper) = bounds(inst, ray);
    let residue = inst.canonical_row(ray);
    let weights = &inst.rays()[ray].vector;
    let k = residue.len();
    let axes: Vec<Vec<Q>> = (0..k)
        .map(|chi| {
            let mut vals = Vec::new();
            let mut v = ceil_to_residue(lower[chi], residue[chi]);
            while v <= upper[chi] {
                vals.push(v);
                v += Q::from_integer(1);
            }
            vals
        })
        .collect();
    let mut solutions = Vec::new();
    if axes.iter().any(Vec::is_empty) {
        return RaySolutionSet { ray, solutions };
    }
    let edges: Vec<(usize, usize, Q)> = (0..k)
        .flat_map(|chi| {
            weights
                .iter()
                .enumerate()
                .map(move |(i, w)| (chi, table.successor(i, chi), *w))
        })
        .collect();
    let mut idx = vec![0usize; k];
    let mut point: Vec<Q> = axes.iter().map(|a| a[0]).collect();
    loop {
        if edges
            .iter()
            .all(|&(from, to, w)| point[from] + w >= point[to])
        {
            solutions.push(point.clone());
        }
        let mut d = k;
        loop {
            if d == 0 {
                return RaySolutionSet { ray, solutions };
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] < axes[d].len() {
                point[d] = axes[d][idx[d]];
                break;
            }
            idx[d] = 0;
            point[d] = axes[d][0];
        }
    }
}

/// Per-ray solution sets and the size of their product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyCatalog {
    pub per_ray: Vec<RaySolutionSet>,
    pub total_count: BigUint,
}

/// Solves every ray (on `jobs` threads, or the global pool for `None`).
/// Nothing is materialized.
pub fn enumerate_all(inst: &Instance, jobs: Option<usize>) -> FamilyCatalog {
    let rays: Vec<usize> = (0..inst.rays().len()).collect();
    let per_ray: Vec<RaySolutionSet> = crate::run_with_jobs(jobs, || {
        rays.par_iter()
            .map(|&r| per_ray_solutions(inst, r))
            .collect()
    });
    let total_count = per_ray
        .iter()
        .fold(BigUint::one(), |acc, s| acc * BigUint::from(s.len()));
    FamilyCatalog {
        per_ray,
        total_count,
    }
}

impl FamilyCatalog {
    /// Assembles the family picking solution `choice[r]` at ray `r`.
    pub fn family(&self, choice: &[usize]) -> ReductorSet {
        let k = self.per_ray.first().map_or(0, |s| s.solutions[0].len());
        let mut divisors = vec![QDivisor::zero(); k];
        for (sols, &c) in self.per_ray.iter().zip(choice) {
            for (chi, q) in sols.solutions[c].iter().enumerate() {
                divisors[chi].set(sols.ray, *q);
            }
        }
        ReductorSet::new(divisors)
    }

    /// Streams every family, ray 0 varying slowest.
    pub fn families(&self, cap: u128) -> Result<Families<'_>, EnumerateError> {
        if self.total_count > BigUint::from(cap) {
            return Err(EnumerateError::CatalogTooLarge {
                total: self.total_count.clone(),
                cap,
            });
        }
        Ok(Families {
            catalog: self,
            choice: (!self.total_count.is_zero()).then(|| vec![0; self.per_ray.len()]),
        })
    }

    /// The total as a `u128`, when it fits.
    pub fn total_u128(&self) -> Option<u128> {
        u128::try_from(&self.total_count).ok()
    }

    pub fn materialize(&self, cap: u128) -> Result<Vec<ReductorSet>, EnumerateError> {
        Ok(self.families(cap)?.collect())
    }
}

pub struct Families<'a> {
    catalog: &'a FamilyCatalog,
    choice: Option<Vec<usize>>,
}

impl Iterator for Families<'_> {
    type Item = ReductorSet;

    fn next(&mut self) -> Option<ReductorSet> {
        let choice = self.choice.as_mut()?;
        let family = self.catalog.family(choice);
        let mut d = choice.len();
        loop {
            if d == 0 {
                self.choice = None;
                break;
            }
            d -= 1;
            choice[d] += 1;
            if choice[d] < self.catalog.per_ray[d].len() {
                break;
            }
            choice[d] = 0;
        }
        Some(family)
    }
}

/// Partition of `families` into orbits of the group generated by all
/// character shifts and the reflection. Orbits are sorted internally and
/// ordered by their smallest member.
pub fn orbits(
    inst: &Instance,
    families: &[ReductorSet],
) -> Result<Vec<Vec<usize>>, EnumerateError> {
    let index: HashMap<&ReductorSet, usize> =
        families.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut parent: Vec<usize> = (0..families.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, s) in families.iter().enumerate() {
        let images = (0..inst.num_characters())
            .map(|l| char_shift(inst, s, l))
            .chain(std::iter::once(reflect(inst, s)));
        for image in images {
            let j = *index
                .get(&image)
                .ok_or(EnumerateError::NotClosed { family: i })?;
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for i in 0..families.len() {
        let root = find(&mut parent, i);
        let g = *slot.entry(root).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(i);
    }
    Ok(groups)
}
