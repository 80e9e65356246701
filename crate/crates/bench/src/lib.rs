// SPDX-License-Identifier: Apache-2.0

//! Fixed benchmark instances, built deterministically from the library's
//! own constructions.

use graphcodes::random_codes::search_opt_directed;
use graphcodes::{dualbch_basis, rs_generate, stczd_basis, DistanceOptions, FieldContext, GraphCode, Rational};

/// Packed adjacency rows of every nonzero codeword of the cubic trace code
/// at extension degree `t` (n = 2^t <= 128).
pub fn trace_code_graphs(t: u32) -> Vec<Vec<u128>> {
    let code = dualbch_basis(FieldContext::new(t).unwrap(), 3).unwrap().code;
    (1u64..1 << code.binary_dimension())
        .map(|m| code.codeword(&[m]).support().rows_u128().unwrap())
        .collect()
}

/// Nonzero patterns of the codewords of a 3-dimensional Opt(1/2, n, 3) code.
pub fn opt_matrices(n: usize) -> Vec<Vec<u128>> {
    let s = search_opt_directed(Rational::new(1, 2), n, 3, 0, 64, &DistanceOptions::default()).unwrap();
    (1u64..8)
        .map(|m| s.code.codeword(&[m]).support().rows_u128().unwrap())
        .collect()
}

pub fn stczd_rs(n: usize, k: usize, t: u32) -> GraphCode {
    stczd_basis(&rs_generate(n, k, FieldContext::new(t).unwrap()).unwrap()).unwrap()
}
