//! Valuations of monomials and characters along toric prime divisors, and
//! the canonical and maximal-shift divisors built from them.
//!
//! For a toric prime divisor with primitive ray `v` the valuation of a
//! monomial `x^m` is the pairing `<v, m>`. A character `chi` has valuation
//! `fract(<v, m>)` for any monomial `m` of weight `chi`; this does not depend
//! on the choice because `<v, M0> ⊆ Z`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::group::{AbelianGroup, Character, CharacterTable, Monomial};
use crate::instance::Instance;
use crate::lattice::Ray;
use crate::rational::{dot, format_q, fract, Q};

/// A Q-Weil divisor supported on the rays of a fan. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QDivisor {
    coeffs: BTreeMap<usize, Q>,
}

impl QDivisor {
    pub fn zero() -> Self {
        QDivisor::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Q)>) -> Self {
        let mut d = QDivisor::zero();
        for (ray, q) in pairs {
            d.add_at(ray, q);
        }
        d
    }

    /// Builds a divisor from a dense coefficient list indexed by ray id.
    pub fn from_dense(coeffs: &[Q]) -> Self {
        QDivisor::from_pairs(coeffs.iter().copied().enumerate())
    }

    pub fn coeff(&self, ray: usize) -> Q {
        self.coeffs.get(&ray).copied().unwrap_or_else(Q::zero)
    }

    pub fn set(&mut self, ray: usize, q: Q) {
        if q.is_zero() {
            self.coeffs.remove(&ray);
        } else {
            self.coeffs.insert(ray, q);
        }
    }

    pub fn add_at(&mut self, ray: usize, q: Q) {
        let v = self.coeff(ray) + q;
        self.set(ray, v);
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|q| q.is_integer())
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|q| *q >= Q::zero())
    }

    /// Nonzero coefficients in ray order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, Q)> + '_ {
        self.coeffs.iter().map(|(&r, &q)| (r, q))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }
}

impl Add for &QDivisor {
    type Output = QDivisor;

    fn add(self, rhs: &QDivisor) -> QDivisor {
        let mut out = self.clone();
        for (r, q) in rhs.iter() {
            out.add_at(r, q);
        }
        out
    }
}

impl Sub for &QDivisor {
    type Output = QDivisor;

    fn sub(self, rhs: &QDivisor) -> QDivisor {
        let mut out = self.clone();
        for (r, q) in rhs.iter() {
            out.add_at(r, -q);
        }
        out
    }
}

impl Neg for &QDivisor {
    type Output = QDivisor;

    fn neg(self) -> QDivisor {
        QDivisor {
            coeffs: self.coeffs.iter().map(|(&r, &q)| (r, -q)).collect(),
        }
    }
}

impl fmt::Display for QDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .iter()
            .map(|(r, q)| format!("{}·P{}", format_q(&q), r))
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

pub fn monomial_valuation(ray: &Ray, m: &Monomial) -> Q {
    dot(&ray.vector, m.exponents())
}

/// `v_P(chi)` lifted to `[0, 1)`.
pub fn char_valuation(ray: &Ray, chi: &Character) -> Q {
    fract(dot(&ray.vector, chi.rep()))
}

/// Visits every exponent vector with `0 <= m_i < bounds[i]` together with
/// the index of its character, last coordinate fastest.
fn for_each_in_box(table: &CharacterTable, bounds: &[u64], mut visit: impl FnMut(&[i64], usize)) {
    let n = bounds.len();
    let mut m = vec![0i64; n];
    let mut chi = 0usize;
    loop {
        visit(&m, chi);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            // stepping x_i from bound-1 back to 0 multiplies by ρ(x_i) too,
            // since ρ(x_i)^bound is trivial
            chi = table.successor(i, chi);
            m[i] += 1;
            if (m[i] as u64) < bounds[i] {
                break;
            }
            m[i] = 0;
        }
    }
}

fn generator_orders(table: &CharacterTable, n: usize) -> Vec<u64> {
    (0..n).map(|i| table.generator_order(i)).collect()
}

/// Coefficient of the maximal shift divisor `M_chi` at `ray`: the least
/// valuation of a monomial of weight `chi`.
///
/// Lowering an exponent `m_i` by the order of `ρ(x_i)` keeps the weight and
/// cannot raise the pairing with a ray in the positive orthant, so the box
/// `0 <= m_i < ord ρ(x_i)` already contains a minimiser.
pub fn max_shift_coeff(group: &AbelianGroup, ray: &Ray, chi: &Character) -> Q {
    let table = CharacterTable::new(group);
    let target = table.index_of(chi).expect("character of this group");
    max_shift_row(&table, ray)[target]
}

/// `max_shift_coeff` for every character at once, indexed by table position.
pub fn max_shift_row(table: &CharacterTable, ray: &Ray) -> Vec<Q> {
    let n = ray.vector.len();
    let mut best: Vec<Option<Q>> = vec![None; table.len()];
    for_each_in_box(table, &generator_orders(table, n), |m, chi| {
        let v = dot(&ray.vector, m);
        match best[chi] {
            Some(b) if b <= v => {}
            _ => best[chi] = Some(v),
        }
    });
    best.into_iter()
        .map(|b| b.expect("every character is the weight of some monomial in the box"))
        .collect()
}

pub fn canonical_row(table: &CharacterTable, ray: &Ray) -> Vec<Q> {
    table
        .characters()
        .iter()
        .map(|chi| char_valuation(ray, chi))
        .collect()
}

/// `C_chi`: the character valuations lifted to `[0, 1)`.
pub fn canonical_divisor(inst: &Instance, chi: usize) -> QDivisor {
    QDivisor::from_pairs((0..inst.rays().len()).map(|r| (r, inst.canonical_coeff(r, chi))))
}

/// `M_chi`.
pub fn max_shift_divisor(inst: &Instance, chi: usize) -> QDivisor {
    QDivisor::from_pairs((0..inst.rays().len()).map(|r| (r, inst.max_shift_coeff(r, chi))))
}
