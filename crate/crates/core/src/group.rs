//! Finite abelian diagonal groups, their characters and monomial weights.
//!
//! A group element acting as `diag(e^{2πi a_1/r}, ..., e^{2πi a_n/r})` is
//! stored as the weight vector `(a_1/r, ..., a_n/r)` in `(Q/Z)^n`. Characters
//! are cosets of `Z^n` modulo the invariant-monomial lattice
//! `M0 = { m : <g, m> in Z for all g }`; each coset is represented by its
//! unique reduced exponent vector with respect to a lower-triangular basis
//! of `M0`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::matrix;
use crate::rational::{dot, fract, Q};

pub const DEFAULT_MAX_ORDER: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub order: u64,
    pub weights: Vec<u64>,
}

impl Generator {
    pub fn new(order: u64, weights: impl Into<Vec<u64>>) -> Self {
        Generator {
            order,
            weights: weights.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub dimension: usize,
    pub generators: Vec<Generator>,
}

impl GroupSpec {
    pub fn new(dimension: usize, generators: Vec<Generator>) -> Self {
        GroupSpec {
            dimension,
            generators,
        }
    }

    /// The cyclic group `1/r(a_1, ..., a_n)`.
    pub fn cyclic(order: u64, weights: &[u64]) -> Self {
        GroupSpec::new(weights.len(), vec![Generator::new(order, weights.to_vec())])
    }

    pub fn trivial(dimension: usize) -> Self {
        GroupSpec::new(dimension, Vec::new())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub max_order: usize,
    /// Accept presentations whose abstract group does not embed, keeping
    /// only the image in `(Q/Z)^n`.
    pub quotient_nonfaithful: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_order: DEFAULT_MAX_ORDER,
            quotient_nonfaithful: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("generator {index}: order must be at least 1")]
    ZeroOrder { index: usize },
    #[error("generator {index}: expected {expected} weights, got {got}")]
    WeightLength {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("generator {index}: weight {weight} is not a residue modulo {order}")]
    WeightOutOfRange {
        index: usize,
        weight: u64,
        order: u64,
    },
    #[error(
        "presentation is not faithful: abstract order {abstract_order}, image order {image_order}"
    )]
    NonFaithful {
        abstract_order: u128,
        image_order: usize,
    },
    #[error("group order exceeds the cap of {cap}")]
    GroupTooLarge { cap: usize },
}

/// Exponent vector of a monomial `x_1^{m_1} ... x_n^{m_n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<i64>);

impl Monomial {
    pub fn new(exponents: impl Into<Vec<i64>>) -> Self {
        Monomial(exponents.into())
    }

    pub fn variable(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }
}

/// A character of `G`, held as the canonical exponent representative of its
/// coset modulo `M0`. Ordering is lexicographic on that representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character(Vec<i64>);

impl Character {
    pub fn rep(&self) -> &[i64] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Text label used in files, e.g. `"1,0"`.
    pub fn label(&self) -> String {
        self.0
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ[{}]", self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    dimension: usize,
    /// Sorted weight vectors with entries in `[0, 1)`.
    elements: Vec<Vec<Q>>,
    /// Lower-triangular basis of `M0`; row `i` has diagonal entry `invariant_basis[i][i] > 0`.
    invariant_basis: Vec<Vec<i64>>,
}

fn abstract_order(spec: &GroupSpec) -> u128 {
    spec.generators
        .iter()
        .fold(1u128, |acc, g| acc.saturating_mul(g.order as u128))
}

pub fn build_group(spec: &GroupSpec, opts: &BuildOptions) -> Result<AbelianGroup, GroupError> {
    let n = spec.dimension;
    if n == 0 {
        return Err(GroupError::ZeroDimension);
    }
    let mut gens: Vec<Vec<Q>> = Vec::with_capacity(spec.generators.len());
    for (index, g) in spec.generators.iter().enumerate() {
        if g.order == 0 {
            return Err(GroupError::ZeroOrder { index });
        }
        if g.weights.len() != n {
            return Err(GroupError::WeightLength {
                index,
                expected: n,
                got: g.weights.len(),
            });
        }
        if let Some(&weight) = g.weights.iter().find(|&&w| w >= g.order) {
            return Err(GroupError::WeightOutOfRange {
                index,
                weight,
                order: g.order,
            });
        }
        gens.push(
            g.weights
                .iter()
                .map(|&w| Q::new(w as i64, g.order as i64))
                .collect(),
        );
    }

    let elements = close_under_addition(n, &gens, opts.max_order)?;
    if !opts.quotient_nonfaithful {
        let abstract_order = abstract_order(spec);
        if abstract_order != elements.len() as u128 {
            return Err(GroupError::NonFaithful {
                abstract_order,
                image_order: elements.len(),
            });
        }
    }
    Ok(AbelianGroup::from_elements(n, elements))
}

/// Breadth-first saturation of `{0}` under adding generators mod 1.
fn close_under_addition(n: usize, gens: &[Vec<Q>], cap: usize) -> Result<Vec<Vec<Q>>, GroupError> {
    let zero = vec![Q::zero(); n];
    let mut seen: BTreeSet<Vec<Q>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(zero.clone());
    queue.push_back(zero);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<Q> = x.iter().zip(g).map(|(a, b)| fract(*a + *b)).collect();
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(GroupError::GroupTooLarge { cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

impl AbelianGroup {
    fn from_elements(n: usize, elements: Vec<Vec<Q>>) -> Self {
        // M0 is the dual of N = Z^n + sum Z g; work with e*N, integral for
        // e = lcm of all denominators.
        let e = elements
            .iter()
            .flatten()
            .fold(1i64, |acc, q| acc.lcm(q.denom()));
        let mut rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { e } else { 0 }).collect())
            .collect();
        rows.extend(
            elements
                .iter()
                .map(|g| g.iter().map(|q| (*q * e).to_integer()).collect()),
        );
        let scaled = matrix::hermite_rows(&rows, n);
        let scaled_q = matrix::to_rational(&scaled);
        let inv = matrix::inverse(&scaled_q).expect("overlattice contains e*Z^n");
        // dual basis of e*N is inv^T; dual of N is e * inv^T
        let dual: Vec<Vec<i64>> = matrix::transpose(&inv)
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|q| {
                        let v = q * e;
                        debug_assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();
        let invariant_basis =
            matrix::lower_triangular_basis(&dual, n).expect("invariant lattice has full rank");
        AbelianGroup {
            dimension: n,
            elements,
            invariant_basis,
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Vec<Q>] {
        &self.elements
    }

    pub fn invariant_basis(&self) -> &[Vec<i64>] {
        &self.invariant_basis
    }

    /// True if `<g, m>` is integral for every group element.
    pub fn is_invariant(&self, m: &[i64]) -> bool {
        self.elements.iter().all(|g| dot(g, m).is_integer())
    }

    /// Reduces an arbitrary integer vector to its coset representative.
    pub fn reduce(&self, m: &[i64]) -> Character {
        let mut r = m.to_vec();
        for i in (0..self.dimension).rev() {
            let row = &self.invariant_basis[i];
            let k = r[i].div_euclid(row[i]);
            if k != 0 {
                for (x, b) in r.iter_mut().zip(row).take(i + 1) {
                    *x -= k * b;
                }
            }
        }
        Character(r)
    }

    pub fn trivial_character(&self) -> Character {
        Character(vec![0; self.dimension])
    }

    pub fn monomial_weight(&self, m: &Monomial) -> Character {
        assert_eq!(m.0.len(), self.dimension, "monomial length");
        self.reduce(&m.0)
    }

    pub fn char_mul(&self, a: &Character, b: &Character) -> Character {
        let s: Vec<i64> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
        self.reduce(&s)
    }

    pub fn char_inv(&self, a: &Character) -> Character {
        let s: Vec<i64> = a.0.iter().map(|x| -x).collect();
        self.reduce(&s)
    }

    pub fn char_pow(&self, a: &Character, k: i64) -> Character {
        let s: Vec<i64> = a.0.iter().map(|x| x * k).collect();
        self.reduce(&s)
    }

    pub fn char_order(&self, a: &Character) -> u64 {
        let mut k = 1u64;
        let mut acc = a.clone();
        while !acc.is_trivial() {
            acc = self.char_mul(&acc, a);
            k += 1;
        }
        k
    }

    /// Evaluates `chi(g)` as an element of `Q/Z` (exponent of `e^{2πi ·}`).
    pub fn evaluate(&self, chi: &Character, g: &[Q]) -> Q {
        fract(dot(g, &chi.0))
    }

    /// All characters, sorted by representative; the trivial one comes first.
    pub fn enumerate_characters(&self) -> Vec<Character> {
        let n = self.dimension;
        let diag: Vec<i64> = (0..n).map(|i| self.invariant_basis[i][i]).collect();
        let mut out = Vec::with_capacity(self.order());
        let mut cur = vec![0i64; n];
        loop {
            out.push(Character(cur.clone()));
            // odometer, last coordinate fastest, which yields lexicographic order
            let mut i = n;
            loop {
                if i == 0 {
                    debug_assert_eq!(out.len(), self.order());
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < diag[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }
}

/// Dense lookup tables over the character group, indexed by position in
/// [`AbelianGroup::enumerate_characters`].
#[derive(Debug, Clone)]
pub struct CharacterTable {
    characters: Vec<Character>,
    index: HashMap<Character, usize>,
    /// `successor[i][c]` = index of `c · ρ(x_i)`.
    successor: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    generator_orders: Vec<u64>,
}

impl CharacterTable {
    pub fn new(group: &AbelianGroup) -> Self {
        let n = group.dimension();
        let characters = group.enumerate_characters();
        let index: HashMap<Character, usize> = characters
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        let successor = (0..n)
            .map(|i| {
                characters
                    .iter()
                    .map(|c| {
                        let mut m = c.0.clone();
                        m[i] += 1;
                        index[&group.reduce(&m)]
                    })
                    .collect()
            })
            .collect();
        let inverse = characters
            .iter()
            .map(|c| index[&group.char_inv(c)])
            .collect();
        let generator_orders = (0..n)
            .map(|i| group.char_order(&group.monomial_weight(&Monomial::variable(n, i))))
            .collect();
        CharacterTable {
            characters,
            index,
            successor,
            inverse,
            generator_orders,
        }
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn character(&self, idx: usize) -> &Character {
        &self.characters[idx]
    }

    pub fn index_of(&self, c: &Character) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn successor(&self, generator: usize, c: usize) -> usize {
        self.successor[generator][c]
    }

    pub fn inverse(&self, c: usize) -> usize {
        self.inverse[c]
    }

    /// Order of `ρ(x_i)` in the character group.
    pub fn generator_order(&self, generator: usize) -> u64 {
        self.generator_orders[generator]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        // walk b's representative as a product of generators
        let mut c = a;
        for (i, &e) in self.characters[b].0.iter().enumerate() {
            for _ in 0..e {
                c = self.successor[i][c];
            }
        }
        c
    }
}
