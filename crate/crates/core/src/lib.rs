//! Exact computations with polynomial loops in `SL2` over commutative rings.
//!
//! Rings and sparse polynomials with exact rational coefficients, loop and
//! homotopy certificates with itemized verification reports, explicit
//! homotopy constructions, winding numbers by real root isolation, and
//! length-two unimodular rows with their group law and circle degree.
//!
//! ```
//! use pi1sl2::{eta, generator_loop};
//! assert_eq!(eta(&generator_loop()).unwrap().abs(), 1);
//! ```

pub mod error;
pub mod expr;
pub mod gamma;
pub mod homotopy;
pub mod job;
pub mod loops;
pub mod matrix;
pub mod poly;
pub mod report;
pub mod ring;
pub mod sample;
pub mod winding;

pub use error::{Error, Result};
pub use expr::{parse_expr, parse_poly, print_canonical};
pub use gamma::{
    circle_degree, complete_row, euclid_witness, gamma_equiv_verify, gamma_product,
    quillen_split_verify, verify_unimodular, GammaEquivCert, QuillenSplit, UnimodRow,
};
pub use homotopy::{
    basepoint_shift_homotopy, connect_to_identity, contract_nil_loop, elementary_decomposition,
    graded_homotopy, kernel_contraction, lift_loop_mod_nil, polyring_injectivity_homotopy,
    product_join, product_split, swan_weibel_map, ElemFactorization,
};
pub use job::{run_job, run_job_str, JobOptions, JobOutcome};
pub use loops::{
    loop_inverse, loop_power, loop_product, verify_homotopy, verify_loop, HomotopyCert, LoopRep,
};
pub use matrix::{ElemKind, Mat2};
pub use poly::MultiPoly;
pub use report::Report;
pub use ring::{Elem, Ring, RingElement};
pub use winding::oracle::numeric_winding_oracle;
pub use winding::{
    eta, free_homotopy_h, generator_loop, isolate_real_roots, nonvanishing_on_unit_interval,
    winding_number, PlaneLoop,
};
