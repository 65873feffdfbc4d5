pub mod asymptotic;
pub mod catalog;
pub mod error;
pub mod export;
pub mod family;
pub mod identities;
pub mod injections;
pub mod oracle;
pub mod par;
pub mod precision;
pub mod series;

pub use error::{Error, Result};
pub use family::FamilyCode;
pub use series::SeriesQ;
