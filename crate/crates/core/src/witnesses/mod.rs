//! Explicit lifts, non-liftability witnesses and the verdict table.

mod lifts;
mod odd;
mod table;

pub use lifts::*;
pub use odd::*;
pub use table::*;
