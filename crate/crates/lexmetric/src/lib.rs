//! Legal games: regulations as rule subsets with breach-probability and
//! punishment models, and the optimization questions over them — distances
//! between regulations, least-resistance legislative paths, divergence
//! between societies, and Pareto-optimal deals under player preferences.

pub mod config;
pub mod consensus;
pub mod divergence;
pub mod error;
pub mod exact;
pub mod gamegraph;
pub mod law;
pub mod lgame;
pub mod report;
pub mod testdata;

pub use error::{Error, Result};
pub use law::{Law, Regulation};
pub use lgame::{LGame, ProbabilityModel, PunishmentMode, PunishmentModel, Society};
