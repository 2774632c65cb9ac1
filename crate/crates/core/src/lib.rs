pub mod cohomology;
pub mod error;
pub mod families;
pub mod forms;
pub mod hypercomplex;
pub mod instance;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod metric;

pub use error::{Error, Result};
