//! Closed-form indicator values, all exact.

mod comb;
mod logdomain;
mod spec;
mod stgp;
mod sthgp;
mod tsp;

pub use comb::{tsp_comb3_cd2, tsp_comb3_reduced, tsp_comb3_small_limit, CombCd, CombPolynomial};
pub use logdomain::{sthgp_subtour_epr_log, LOG_THRESHOLD_DEFAULT};
pub use spec::{Comb, FacetKind, FacetSpec};
pub use stgp::{stgp_delta_components, stgp_subtour_cd2, stgp_subtour_epr, stgp_tree_counts, DeltaComponents};
pub use sthgp::{
    scalars, sthgp_cd2_partial_sums, sthgp_nonneg_cd, sthgp_nonneg_epr, sthgp_scalars, sthgp_subtour_angle,
    sthgp_subtour_cd, sthgp_subtour_epr, sthgp_tree_count, sthgp_trees_with_edge, CdValue, EprMethod, Sthgp,
    SthgpScalars, SubtourEpr, TreeCount, DIRECT_EPR_MAX_N,
};
pub use tsp::{tsp_nonneg_cd2, tsp_nonneg_epr, tsp_subtour_cd2, tsp_subtour_epr, SubtourWitness};
