pub mod criteria;
pub mod field;
pub mod hunt;
pub mod kronecker;
pub mod linalg;
pub mod minors;
pub mod pencil;
