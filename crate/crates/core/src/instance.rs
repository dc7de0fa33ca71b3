//! A validated (group, resolution) pair with per-ray lookup tables.

use rayon::prelude::*;
use thiserror::Error;

use crate::group::{
    build_group, AbelianGroup, BuildOptions, CharacterTable, GroupError, GroupSpec,
};
use crate::lattice::{
    build_lattice, classify_rays, minimal_resolution_2d, validate_fan, Fan, FanError, FanReport,
    Overlattice, Ray,
};
use crate::rational::Q;
use crate::valuation;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InstanceError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error("fan does not define a smooth proper resolution")]
    InvalidFan(Box<FanReport>),
    #[error("fan dimension {fan} does not match group dimension {group}")]
    DimensionMismatch { fan: usize, group: usize },
}

#[derive(Debug, Clone)]
pub struct Instance {
    group: AbelianGroup,
    lattice: Overlattice,
    fan: Fan,
    table: CharacterTable,
    /// `canonical[ray][chi]` = `v_P(chi)` lifted to `[0, 1)`.
    canonical: Vec<Vec<Q>>,
    /// `max_shift[ray][chi]` = coefficient of `M_chi` at the ray.
    max_shift: Vec<Vec<Q>>,
}

impl Instance {
    pub fn new(group: AbelianGroup, fan: Fan) -> Result<Instance, InstanceError> {
        Self::with_jobs(group, fan, None)
    }

    /// As [`Instance::new`], computing per-ray tables on `jobs` threads
    /// (`None` uses the global pool).
    pub fn with_jobs(
        group: AbelianGroup,
        fan: Fan,
        jobs: Option<usize>,
    ) -> Result<Instance, InstanceError> {
        if fan.dimension() != group.dimension() {
            return Err(InstanceError::DimensionMismatch {
                fan: fan.dimension(),
                group: group.dimension(),
            });
        }
        let lattice = build_lattice(&group);
        let report = validate_fan(&fan, &lattice);
        if !report.pass() {
            return Err(InstanceError::InvalidFan(Box::new(report)));
        }
        let fan = classify_rays(&fan, &lattice);
        let table = CharacterTable::new(&group);
        let rows = |ray: &Ray| {
            (
                valuation::canonical_row(&table, ray),
                valuation::max_shift_row(&table, ray),
            )
        };
        let tables: Vec<(Vec<Q>, Vec<Q>)> =
            crate::run_with_jobs(jobs, || fan.rays().par_iter().map(rows).collect());
        let (canonical, max_shift) = tables.into_iter().unzip();
        Ok(Instance {
            group,
            lattice,
            fan,
            table,
            canonical,
            max_shift,
        })
    }

    /// Builds the group and, in dimension 2, its minimal resolution.
    pub fn minimal(spec: &GroupSpec) -> Result<Instance, InstanceError> {
        let group = build_group(spec, &BuildOptions::default())?;
        let fan = minimal_resolution_2d(&build_lattice(&group))?;
        Instance::new(group, fan)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn lattice(&self) -> &Overlattice {
        &self.lattice
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn rays(&self) -> &[Ray] {
        self.fan.rays()
    }

    pub fn characters(&self) -> &CharacterTable {
        &self.table
    }

    pub fn dimension(&self) -> usize {
        self.group.dimension()
    }

    pub fn num_characters(&self) -> usize {
        self.table.len()
    }

    pub fn canonical_coeff(&self, ray: usize, chi: usize) -> Q {
        self.canonical[ray][chi]
    }

    pub fn max_shift_coeff(&self, ray: usize, chi: usize) -> Q {
        self.max_shift[ray][chi]
    }

    pub fn canonical_row(&self, ray: usize) -> &[Q] {
        &self.canonical[ray]
    }

    pub fn max_shift_row(&self, ray: usize) -> &[Q] {
        &self.max_shift[ray]
    }
}
