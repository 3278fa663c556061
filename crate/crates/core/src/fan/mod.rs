//! The fan `Fan_ℓ(ξ†)` in `X̃^∨ = Zf₀ ⊕ X^∨`, the slice `Cut`, the
//! correspondence between `Vor_ℓ` and the cut complex, `Σ*_ℓ`, the Mumford fan
//! `Fan(ξ)`, and the check that a fan lies over `S`.

mod bijection;
mod mumford;
mod sfan;
mod tau;
mod tilde;

pub use bijection::{cut_bijection_report, separation_membership, sigma_star, BijectionReport};
pub use mumford::{mumford_fan, MumfordFan, MumfordSummary, MUMFORD_DIM_CAP};
pub use sfan::{
    build_fan, check_fan_over_s, generates_with_m0, m0_in_dual, ConeClauses, FanCheck, FanCone,
    SFan,
};
pub use tau::{
    cell_inequalities, cell_intersection, chart_cone_weights, cone_over, cone_over_centers,
    containing_centers, cut, delta_translate, meets_xdual_trivially, sigma_alpha, tau_cone,
    tau_cone_from_charts,
};
pub use tilde::{delta_shift_dual, delta_shift_weight, tilde, TildeVector};
