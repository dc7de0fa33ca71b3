//! Classification of gnat-families on toric resolutions of abelian quotient
//! singularities `C^n / G`.
//!
//! Equivalence classes of gnat-families on a resolution `Y` correspond to
//! normalised reductor sets: character-indexed sets of G-Weil divisors
//! `{D_chi}` with `D_chi0 = 0` and `D_chi + (x_i) - D_{chi·ρ(x_i)} >= 0`.
//! This crate builds the group and the resolution fan, computes valuations,
//! the canonical and maximal-shift families, and enumerates every normalised
//! reductor set together with its symmetry orbits.
//!
//! ```
//! use gnatfam_core::{enumerate_all, GroupSpec, Instance};
//!
//! let inst = Instance::minimal(&GroupSpec::cyclic(3, &[1, 2])).unwrap();
//! let catalog = enumerate_all(&inst, None);
//! assert_eq!(catalog.total_u128(), Some(9));
//! ```

pub mod enumerate;
pub mod group;
pub mod instance;
pub mod lattice;
pub mod matrix;
pub mod rational;
pub mod reductor;
pub mod valuation;

pub use enumerate::{
    brute_force_per_ray, enumerate_all, orbits, per_ray_solutions, EnumerateError, FamilyCatalog,
    RaySolutionSet, DEFAULT_MAX_CATALOG,
};
pub use group::{
    build_group, AbelianGroup, BuildOptions, Character, CharacterTable, Generator, GroupError,
    GroupSpec, Monomial,
};
pub use instance::{Instance, InstanceError};
pub use lattice::{
    build_lattice, classify_rays, minimal_resolution_2d, validate_fan, ConeFailure, FacetFailure,
    Fan, FanError, FanReport, Overlattice, Ray, RayKind,
};
pub use rational::Q;
pub use reductor::{
    canonical_set, char_shift, check_reductor, is_principal, linear_equiv, linear_equivalence,
    maxshift_set, minshift_set, normalize, reflect, twist, ReductorError, ReductorSet, Violation,
};
pub use valuation::{
    canonical_divisor, char_valuation, max_shift_coeff, max_shift_divisor, monomial_valuation,
    QDivisor,
};

/// Runs `f` inside a dedicated pool of `jobs` threads, or directly on the
/// global pool when `jobs` is `None`.
pub(crate) fn run_with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
        {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}
