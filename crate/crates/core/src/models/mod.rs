//! Instance generators, JSON files and the metric-space validators.

mod generators;
pub mod io;
mod metric;

pub use generators::{
    circle_distance, circle_metric, gen_constant, gen_fk, gen_random, gen_random_exact, gen_random_float,
    potential_profile, RANDOM_GRID,
};
pub use io::{load, save, AnyInstance, Claims, Document};
pub use metric::{
    apriori_check, check_length_space, growth_a, growth_c, growth_constants, lip_constants, lipschitz_large_check,
    AprioriReport, GrowthReport, LengthSpaceReport, LipConstants, LipschitzCheck,
};
