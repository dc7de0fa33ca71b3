//! Reductor sets: character-indexed families of G-Weil divisors
//! `{D_chi}` satisfying `D_chi + (f) - D_{chi·ρ(f)} >= 0`.
//!
//! The inequality is multiplicative in `f`, so it is enough to test it for
//! the coordinate monomials `x_1, ..., x_n`, and it splits into independent
//! numeric conditions at each ray:
//!
//! ```text
//! q_{chi,P} + <v_P, e_i> - q_{chi·ρ(x_i),P} >= 0
//! ```

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::instance::Instance;
use crate::matrix;
use crate::rational::{dot, format_q, fract, Q};
use crate::valuation::{canonical_divisor, max_shift_divisor, QDivisor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductorError {
    #[error("D_χ0 has non-integral coefficient {coeff} at ray {ray}")]
    NotGWeil { ray: usize, coeff: String },
    #[error("twist divisor has non-integral coefficient {coeff} at ray {ray}")]
    NotIntegral { ray: usize, coeff: String },
}

/// `divisors[c]` is `D_chi` for the character at position `c` of the
/// instance's character table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReductorSet {
    divisors: Vec<QDivisor>,
}

impl ReductorSet {
    pub fn new(divisors: Vec<QDivisor>) -> Self {
        ReductorSet { divisors }
    }

    pub fn zero(inst: &Instance) -> Self {
        ReductorSet::new(vec![QDivisor::zero(); inst.num_characters()])
    }

    pub fn divisor(&self, chi: usize) -> &QDivisor {
        &self.divisors[chi]
    }

    pub fn divisors(&self) -> &[QDivisor] {
        &self.divisors
    }

    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn coeff(&self, chi: usize, ray: usize) -> Q {
        self.divisors[chi].coeff(ray)
    }

    pub fn is_normalised(&self) -> bool {
        self.divisors[0].is_zero()
    }

    /// Coefficients of every `D_chi` at one ray, in character order.
    pub fn column(&self, ray: usize) -> Vec<Q> {
        self.divisors.iter().map(|d| d.coeff(ray)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    /// `fract(q_{chi,P})` differs from `v_P(chi)`.
    GWeil {
        ray: usize,
        character: usize,
        coeff: Q,
        expected_fract: Q,
    },
    /// `q_{chi,P} + <v_P, e_i> - q_{chi·ρ(x_i),P} = value < 0`.
    Inequality {
        ray: usize,
        character: usize,
        generator: usize,
        value: Q,
    },
}

impl Violation {
    fn sort_key(&self) -> (usize, usize, usize) {
        match *self {
            Violation::GWeil { ray, character, .. } => (ray, character, 0),
            Violation::Inequality {
                ray,
                character,
                generator,
                ..
            } => (ray, character, generator + 1),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::GWeil {
                ray,
                character,
                coeff,
                expected_fract,
            } => write!(
                f,
                "ray {ray}, character #{character}: coefficient {} should have fractional part {}",
                format_q(coeff),
                format_q(expected_fract)
            ),
            Violation::Inequality {
                ray,
                character,
                generator,
                value,
            } => write!(
                f,
                "ray {ray}, character #{character}, x_{}: inequality evaluates to {}",
                generator + 1,
                format_q(value)
            ),
        }
    }
}

/// Violations at a single ray for the coefficient column `q` (one entry per
/// character), appended to `out` in (character, generator) order.
pub fn check_ray(inst: &Instance, ray: usize, q: &[Q], out: &mut Vec<Violation>) {
    let table = inst.characters();
    let v = &inst.rays()[ray].vector;
    for chi in 0..table.len() {
        let expected_fract = inst.canonical_coeff(ray, chi);
        if fract(q[chi]) != expected_fract {
            out.push(Violation::GWeil {
                ray,
                character: chi,
                coeff: q[chi],
                expected_fract,
            });
        }
        for (i, w) in v.iter().enumerate() {
            let next = table.successor(i, chi);
            let value = q[chi] + *w - q[next];
            if value < Q::zero() {
                out.push(Violation::Inequality {
                    ray,
                    character: chi,
                    generator: i,
                    value,
                });
            }
        }
    }
}

/// Every violation of the G-Weil condition and of the reductor inequalities,
/// ordered by ray, then character, then generator. Empty means the set is a
/// reductor set.
pub fn check_reductor(inst: &Instance, set: &ReductorSet) -> Vec<Violation> {
    assert_eq!(
        set.len(),
        inst.num_characters(),
        "set must be total on characters"
    );
    let mut out = Vec::new();
    for ray in 0..inst.rays().len() {
        check_ray(inst, ray, &set.column(ray), &mut out);
    }
    out.sort_by_key(Violation::sort_key);
    out
}

pub fn canonical_set(inst: &Instance) -> ReductorSet {
    ReductorSet::new(
        (0..inst.num_characters())
            .map(|c| canonical_divisor(inst, c))
            .collect(),
    )
}

pub fn maxshift_set(inst: &Instance) -> ReductorSet {
    ReductorSet::new(
        (0..inst.num_characters())
            .map(|c| max_shift_divisor(inst, c))
            .collect(),
    )
}

/// Reflection of the maximal shift set, attaining every lower bound `-M_{chi^-1}`.
pub fn minshift_set(inst: &Instance) -> ReductorSet {
    reflect(inst, &maxshift_set(inst))
}

/// `{D_chi - D_chi0}`.
pub fn normalize(set: &ReductorSet) -> Result<ReductorSet, ReductorError> {
    let base = set.divisor(0);
    if let Some((ray, coeff)) = base.iter().find(|(_, q)| !q.is_integer()) {
        return Err(ReductorError::NotGWeil {
            ray,
            coeff: format_q(&coeff),
        });
    }
    Ok(ReductorSet::new(
        set.divisors.iter().map(|d| d - base).collect(),
    ))
}

/// The shift by `lambda`: `D'_{chi·lambda} = D_chi - D_{lambda^-1}`.
pub fn char_shift(inst: &Instance, set: &ReductorSet, lambda: usize) -> ReductorSet {
    let table = inst.characters();
    let base = set.divisor(table.inverse(lambda));
    let mut out = vec![QDivisor::zero(); set.len()];
    for (chi, d) in set.divisors.iter().enumerate() {
        out[table.mul(chi, lambda)] = d - base;
    }
    ReductorSet::new(out)
}

/// `{-D_{chi^-1}}`.
pub fn reflect(inst: &Instance, set: &ReductorSet) -> ReductorSet {
    let table = inst.characters();
    ReductorSet::new(
        (0..set.len())
            .map(|chi| -set.divisor(table.inverse(chi)))
            .collect(),
    )
}

/// `{D_chi + n}` for an integral divisor `n`.
pub fn twist(set: &ReductorSet, n: &QDivisor) -> Result<ReductorSet, ReductorError> {
    if let Some((ray, coeff)) = n.iter().find(|(_, q)| !q.is_integer()) {
        return Err(ReductorError::NotIntegral {
            ray,
            coeff: format_q(&coeff),
        });
    }
    Ok(ReductorSet::new(
        set.divisors.iter().map(|d| d + n).collect(),
    ))
}

/// Finds `m` in the invariant lattice with `<v_P, m> = d_P` at every ray,
/// i.e. `d = div(x^m)` for a torus-invariant rational function on Y.
pub fn is_principal(inst: &Instance, d: &QDivisor) -> Option<Vec<i64>> {
    if !d.is_integral() {
        return None;
    }
    let rays = inst.rays();
    // rays of a maximal cone span Q^n
    let cone = &inst.fan().cones()[0];
    let rows: Vec<Vec<Q>> = cone.iter().map(|&r| rays[r].vector.clone()).collect();
    let inv = matrix::inverse(&rows)?;
    let rhs: Vec<Q> = cone.iter().map(|&r| d.coeff(r)).collect();
    let n = inst.dimension();
    let m: Vec<Q> = (0..n)
        .map(|i| (0..n).fold(Q::zero(), |acc, k| acc + inv[i][k] * rhs[k]))
        .collect();
    if !m.iter().all(|x| x.is_integer()) {
        return None;
    }
    let m: Vec<i64> = m.iter().map(|x| x.to_integer()).collect();
    if !inst.group().is_invariant(&m) {
        return None;
    }
    rays.iter()
        .all(|r| dot(&r.vector, &m) == d.coeff(r.id))
        .then_some(m)
}

/// Returns a witness `m` when `a_chi - b_chi = div(x^m)` for every character.
pub fn linear_equivalence(inst: &Instance, a: &ReductorSet, b: &ReductorSet) -> Option<Vec<i64>> {
    let diff = a.divisor(0) - b.divisor(0);
    let same = a
        .divisors
        .iter()
        .zip(&b.divisors)
        .all(|(x, y)| (x - y) == diff);
    if !same {
        return None;
    }
    is_principal(inst, &diff)
}

pub fn linear_equiv(inst: &Instance, a: &ReductorSet, b: &ReductorSet) -> bool {
    linear_equivalence(inst, a, b).is_some()
}
