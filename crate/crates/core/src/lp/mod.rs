//! Linear programming: a generic simplex solver and the `λ`-family programs.

pub mod simplex;

pub use simplex::{
    solve_lp, Certificate, LinearProgram, LpSolution, LpStatus, Row, RowSense, VarSign,
    FLOAT_CERT_TOL,
};
pub mod lambda;

pub use lambda::{
    dual_witness, lambda, lambda_constant, lambda_constant_with, lambda_unsymmetrized, lambda_with,
    Lambda, LambdaResult, LpOptions, ModeChoice, OrbitBasis, Variant, FULL_LP_LIMIT,
};
