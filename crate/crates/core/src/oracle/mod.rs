//! Brute-force reference implementations and the `verify` check suite.

mod enumerate;
mod sampler;
mod verify;

pub use enumerate::{
    enum_cycles, enum_walks, enum_zero_cycles, liminf_barrier_bounded, tight_walk_aubry, CycleEnumeration,
    LiminfReport, ReferenceAubry, CYCLE_GUARD, TIGHT_WALK_GUARD, WALK_LENGTH_GUARD, WALK_POINT_GUARD,
};
pub use sampler::subsolution_sampler;
pub use verify::{verify_all, verify_with, Check, Context, OracleReport, Witness, VERIFY_GUARD};
