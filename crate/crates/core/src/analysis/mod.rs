//! Symbol diagnostics and numerical experiments.

mod experiments;
mod fit;
mod symbol;

pub use experiments::{
    franke_1d, order_table, smoothness_probe, OrderTableRow, SmoothnessLevel, SmoothnessReport,
};
pub use fit::{decay_exponent, order_estimate};
pub use symbol::{
    asymptotic_equivalence_profile, asymptotic_equivalence_profile_over, property_a_d1,
    symbol_from_mask, DiagnosticReport, LaurentSymbol, LevelDiagnostic,
};
