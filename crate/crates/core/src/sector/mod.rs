//! Root enclosures, sector membership and the theorem certificate.

mod certificate;
mod exact_arg;
mod generator;
mod roots;

pub use roots::{find_root_enclosures, RootEnclosure, DEFAULT_RADIUS_TARGET};
pub use generator::{
    fuzz_instance, generate_sector_poly, instance_seed, pair_factor, real_factor, sample_angle, sample_angle_between,
    FuzzInstance, FuzzSpec, GeneratorConfig, ShapeWeights, ANGLE_DENOMINATOR_MAX,
};
pub use certificate::{
    min_argument, min_argument_with, sector_membership, verify_proof_steps, verify_theorem, verify_theorem_with,
    ArgumentBound, BoundaryPolicy, CertifyOptions, ProofStepReport, RootMargin, Sector, SectorCertificate, Verdict,
};
