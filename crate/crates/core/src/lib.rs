pub mod chevrep;
pub mod error;
pub mod exactalg;
pub mod golden;
pub mod mhiggs;
pub mod qchar;
pub mod qtriang;
pub mod rootdata;
pub mod sklyanin;
pub mod steinberg;

pub use error::{Error, Result};
