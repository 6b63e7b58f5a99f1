//! Hecke correspondences on quadratic irrationals, degree-escape
//! experiments and the measures attached to periodic orbits.

mod measure;
mod scan;

pub use measure::{
    cylinder_measure, mass_constants, nu_f, nu_lower_bound, CylinderSpec, MassConstants,
    PARTIAL_SUM_CUTOFF,
};
pub use scan::{
    escape_table, gamma_equivalent, hecke_moves, hecke_neighbors, hecke_ray, hecke_walk_explore,
    neighbor_symmetry, rows_to_csv, Chooser, HeckeMove, HeckeRow, CSV_HEADER,
};
