// SPDX-License-Identifier: Apache-2.0

//! Linear graph codes over binary extension fields.
//!
//! Codes are spaces of n x n matrices measured in the graph distance (the
//! vertex-cover number of the difference) or its directed variant. The crate
//! builds the standard families from Hamming-metric building blocks and
//! certifies distances with exact branch-and-bound oracles at small sizes.

pub mod code;
pub mod concat;
pub mod descriptor;
pub mod dualbch;
mod enumerate;
pub mod error;
pub mod field;
pub mod hamming;
pub mod linalg;
pub mod metric;
pub mod random_codes;
pub mod rational;
pub mod report;
pub mod solvers;
pub mod stczd;
pub mod words;

pub use code::{GraphCode, Linearity};
pub use concat::{concat_rs, justesen_like, symmetric_concatenate, triple_concat, Composite, InnerEncoder};
pub use descriptor::Descriptor;
pub use dualbch::{
    character_sum, dualbch_basis, dualbch_codeword, frobenius_reduce, warmup_codeword, Polynomial, TracePolynomial,
};
pub use error::{Error, ErrorCategory, Result};
pub use field::{FieldContext, FieldElement};
pub use hamming::{hamming_min_distance, rs_generate, systematic_form, wozencraft_code, LinearCode};
pub use linalg::Matrix;
pub use metric::{
    clique_number, code_distance, directed_graph_distance, graph_distance, independence_number, singleton_check,
};
pub use rational::{parse_rational, Rational};
pub use report::{Certification, DistanceOptions, DistanceReport, Metric, Mode, Witness};
pub use stczd::{stczd_basis, stczd_rs_explicit, tensor_code};
pub use words::{GraphWord, MatrixWord};
