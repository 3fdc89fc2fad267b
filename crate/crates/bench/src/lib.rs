//! Fixtures shared by the benchmark targets.

use tcn_core::algebra::{sphere, torus};
use tcn_core::scalar::FieldSpec;
use tcn_core::SpaceDescriptor;

pub fn rational_sphere(k: u32) -> SpaceDescriptor {
    sphere(k, FieldSpec::rationals()).expect("sphere builder")
}

pub fn rational_torus(m: u32) -> SpaceDescriptor {
    torus(m, FieldSpec::rationals()).expect("torus builder")
}
