pub mod error;
pub mod gauss;
pub mod qpair;
pub mod dyadic;
pub mod bigc;
pub mod exact;
pub mod twelfth;
pub mod surd;
pub mod cfalgo;
