//! Analytic reflection-path density, PDP and link budget.

mod closed_form;
mod kernels;
mod link_budget;
mod params;

pub use closed_form::{f_sr_closed, negative_density_clamp_count, ClosedFormCoeffs};
pub use kernels::{
    blockage_area_approx, f_nb, f_rf, f_sr_given_theta, f_sr_given_theta_per_metre, f_sr_numeric,
    f_sr_numeric_full_range, negative_area_clamp_count, rho,
};
pub use link_budget::{
    avg_num_paths, avg_num_paths_with, los_pathloss, los_reflection_crossover, pdp, pdp_at_centers, pdp_bin_averages, pdp_numeric,
    ref_pathloss, ref_pathloss_with, total_pathloss, DensityModel, PdpSeries, LOS_EDGE_OFFSET,
};
pub use params::{
    covered_ratio, db_to_linear, lambda_from_phi, linear_to_db, DelayGrid, EnvironmentParams, LinkParams,
    SizeDistribution, SPEED_OF_LIGHT,
};
