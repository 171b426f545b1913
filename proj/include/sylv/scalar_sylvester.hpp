#pragma once

// Solvers for AX - XB = C over the complex numbers.
//
// solve_kron is the brute-force reference: it vectorizes the equation as
// (I_m (x) A - B^T (x) I_n) vec(X) = vec(C) with column-stacked vec. The other
// two solvers (Bartels-Stewart and the Cayley-Hamilton/Bezout route) are
// checked against it.

#include "sylv/linalg.hpp"
#include "sylv/polynomial.hpp"

#include <optional>
#include <vector>

namespace sylv {

/// Eigenvalue data of the pair (A, B) and their closest cross pair.
struct ScalarSeparation {
    std::vector<Complex> eigs_a;
    std::vector<Complex> eigs_b;
    double min_gap = 0.0;
    Complex witness_a;
    Complex witness_b;
    /// Smallest singular value of the Kronecker operator, when requested and n*m <= 144.
    std::optional<double> kron_sigma_min;
};

struct SylvesterConfig {
    LinalgConfig linalg;
    /// Bartels-Stewart denominators at or below denom_relative_tol * (|A|_F + |B|_F) are overlaps.
    double denom_relative_tol = 1e-13;
    /// Leading remainder coefficients at or below this (relative) are treated as zero in the Euclidean algorithm.
    double euclid_relative_tol = 1e-12;
    /// Also estimate the Kronecker operator's smallest singular value in spectral_separation.
    bool estimate_conditioning = false;
};

/// Default disjointness threshold: 1e-8 * (1 + |A|_F + |B|_F).
double default_gap_tol(const ComplexMatrix& a, const ComplexMatrix& b);

ScalarSeparation spectral_separation(const ComplexMatrix& a, const ComplexMatrix& b,
                                     const SylvesterConfig& config = {});

/// The nm x nm matrix I_m (x) A - B^T (x) I_n.
ComplexMatrix sylvester_operator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Smallest singular value of the Kronecker operator by inverse iteration; 0 when singular.
double kron_sigma_min(const ComplexMatrix& a, const ComplexMatrix& b, const LinalgConfig& config = {});

ComplexMatrix solve_kron(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                         const SylvesterConfig& config = {});

/// Schur-based solver. After A = Qa Ta Qa*, B = Qb Tb Qb*, the triangular system
/// Ta Y - Y Tb = Qa* C Qb is swept column by column from left to right (each
/// column needs the earlier ones through the upper triangle of Tb), and each
/// column is a back substitution from the last row of Ta upward.
ComplexMatrix solve_bartels_stewart(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                                    const SylvesterConfig& config = {});

/// Characteristic polynomial det(zI - m), monic.
struct CharPoly {
    Polynomial poly;
    bool monic = true;
};

inline constexpr std::size_t kCharPolyMaxDim = 8;
inline constexpr std::size_t kPolynomialSolverMaxDim = 5;

/// Expands prod (z - lambda_i) over the Schur eigenvalues. Dimension guarded at 8.
CharPoly char_poly(const ComplexMatrix& m, const LinalgConfig& config = {});

/// u p + v q = 1.
struct BezoutPair {
    Polynomial u;
    Polynomial v;
};

/// Extended Euclidean algorithm over C[z]. Throws NotCoprime if the remainder
/// sequence hits zero before a nonzero constant.
BezoutPair bezout(const CharPoly& p, const CharPoly& q, const SylvesterConfig& config = {});

/// sum_{j=0}^{k-1} A^j C B^{k-1-j}, which equals A^k X - X B^k whenever AX - XB = C.
ComplexMatrix telescoping_sum(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c, std::size_t k);

/// X = q~(A) * sum_k beta_k * telescoping_sum(A, B, C, k), where p_B = sum beta_k z^k and
/// q p_A + q~ p_B = 1. Restricted to n, m <= 5.
ComplexMatrix solve_polynomial(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                               const SylvesterConfig& config = {});

/// |AX - XB - C|_F
double sylvester_residual(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                          const ComplexMatrix& x);

} // namespace sylv
