//! Property suites: finite-difference checks of jets, Jacobian rank of the
//! evaluation maps, reparametrization invariance, and named suites that
//! aggregate them into reports.

mod fd;
mod gauge;
pub mod random;
mod rank;
mod suites;

pub use fd::{fd_crosscheck, FD_STEP};
pub use gauge::{gauge_orbit_check, GaugeReport, GAUGE_INVERSION_TOL, GAUGE_RESIDUAL_TOL};
pub use rank::{
    evaluation_map, jacobian_det_r21, jacobian_matrix_r21, rank_check, rank_check_at, RankReport, RankSpace, RANK_TOL,
};
pub use suites::{relative_gap, run_suite, CaseDetail, Suite, SuiteReport};
