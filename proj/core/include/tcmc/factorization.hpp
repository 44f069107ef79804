#pragma once

#include "tcmc/loop_algebra.hpp"

namespace tcmc {

enum class SplitConvention {
    minus_plus, // gamma = gamma_minus * l_plus,  gamma_minus = 1 + negative powers
    plus_minus, // gamma = gamma_plus  * l_minus, gamma_plus  = 1 + positive powers
};

struct BirkhoffResult {
    TruncatedLoop normalized_factor; // identity at lambda^0, strictly one-sided
    TruncatedLoop complement_factor; // closed other side
    double residual = 0.0;           // ||product - input||
    double condition_estimate = 0.0; // reciprocal condition of the solve, in [0,1]
};

/// Birkhoff factorization on the big cell, at truncation order N.
///
/// The unknown coefficients of the complement factor's inverse solve one
/// dense block-Toeplitz system (2(N+1) unknowns per matrix column); the
/// normalized factor follows by back-substitution. Off the big cell the
/// system is singular and big_cell_error is thrown with the reciprocal
/// condition estimate attached.
BirkhoffResult birkhoff_split(const TruncatedLoop& gamma, SplitConvention convention,
                              double rcond_threshold = 1e-10,
                              double* tail_loss = nullptr);

/// Reciprocal condition estimate of the minus_plus Birkhoff system in
/// [0, 1]; ~0 means the loop is off the big cell at this truncation.
double big_cell_diagnostic(const TruncatedLoop& gamma);

struct IwasawaPairResult {
    TruncatedLoop frame;   // Psi with Psi = Psi1 * l_minus = Psi2 * l_plus
    TruncatedLoop l_minus; // 1 + strictly negative powers
    TruncatedLoop l_plus;  // closed non-negative side
    double residual = 0.0; // ||Psi1 l_minus - Psi2 l_plus||
    double condition_estimate = 0.0;
};

/// Pairwise Iwasawa splitting: decompose D = Psi1^{-1} Psi2 by the
/// minus_plus Birkhoff factorization, D = D_minus * l, and return
/// (Psi, L_minus, L_plus) = (Psi1 D_minus, D_minus, l^{-1}).
/// Propagates big_cell_error when D is off the big cell.
IwasawaPairResult iwasawa_pair_split(const TruncatedLoop& psi1,
                                     const TruncatedLoop& psi2,
                                     double rcond_threshold = 1e-10,
                                     double* tail_loss = nullptr);

} // namespace tcmc
