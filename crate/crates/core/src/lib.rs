pub mod clustering;
pub mod corpus;
pub mod error;
pub mod evaluation;
pub mod features;
pub mod imaging;
pub mod matching;
pub mod pipeline;
pub mod segmentation;
pub mod store;
pub mod weighting;

pub use error::{Error, Result};
