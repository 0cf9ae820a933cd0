//! Maximal pattern complexity: window search, growth, shared windows and
//! structural bounds.

mod bound;
mod certificate;
mod config;
mod growth;
mod lifted;
mod search;
mod shared;
mod table;

pub use bound::structural_upper_bound;
pub use certificate::{ComplexityCertificate, Exactness};
pub use config::{CongruenceFilter, SearchConfig, Strategy};
pub use growth::immediate_extension_growth;
pub use lifted::lifted_window;
pub use search::{pattern_complexity, Found, WindowSearch};
pub use shared::shared_window_search;
pub use table::{Evaluation, FactorTable, Scratch};
