//! Built-in example setups and the exact scalar series behind them.

pub mod series;
pub mod setups;

pub use series::{scalar_ode_residual, scalar_series, OdeSystem, ScalarSeries, SeriesName};
pub use setups::{catalog_get, ev_t_alpha_full, ev_twist_map, NAMES};
