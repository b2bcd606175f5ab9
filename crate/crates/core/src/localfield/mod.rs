pub mod scalar;
pub mod tower;
pub mod elem;
pub mod poly;
pub mod newton;
pub mod linalg;
pub mod roots;
