pub mod closedform;
pub mod dyck;
pub mod error;
pub mod ncpart;
pub mod nonnest;
pub mod params;
pub mod polyalg;
pub mod poset;

pub use error::{Error, Result};
pub use params::Params;
