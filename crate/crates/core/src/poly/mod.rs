//! Exact polynomial algebra over Z used by the decision procedures.

pub mod cyclotomic;
pub mod multivariate;
pub mod roots;
pub mod sturm;
pub mod unit_circle;
mod univariate;

pub use cyclotomic::{cyclotomic, euler_phi, smallest_cyclotomic_divisor};
pub use multivariate::MPoly;
pub use roots::{root_disks, RootDisk};
pub use sturm::SturmChain;
pub use unit_circle::{UnitCircleAnalysis, UnitRoot};
pub use univariate::ZPoly;
