pub mod alexander;
pub mod beck;
pub mod diagram;
pub mod linalg;
pub mod quandle;
pub mod rings;
