//! Exact modular representation theory of `Z/p × Z/p` for a family of
//! Artin–Schreier curves.

pub mod curvefam;
pub mod ff;
pub mod jordan;
pub mod kmod;
pub mod linalg;
pub mod poly;
