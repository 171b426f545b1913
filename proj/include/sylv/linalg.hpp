#pragma once

// Dense complex linear algebra: LU with partial pivoting, Householder
// Hessenberg reduction, complex Schur form by single-shift QR, norms.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sylv {

using Complex = std::complex<double>;

/// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static ComplexMatrix diagonal(std::span<const Complex> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::span<Complex> entries() noexcept { return entries_; }
    std::span<const Complex> entries() const noexcept { return entries_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;

    ComplexMatrix block(std::size_t row, std::size_t col, std::size_t rows, std::size_t cols) const;
    void set_block(std::size_t row, std::size_t col, const ComplexMatrix& m);

    bool all_finite() const noexcept;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator-(ComplexMatrix a) { return a *= Complex(-1.0); }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

/// Numerical thresholds of the linear algebra routines.
struct LinalgConfig {
    /// Pivots below this fraction of the largest initial entry magnitude are singular.
    double pivot_relative_tol = 1e-13;
    /// |h[i+1,i]| <= deflation_eps * (|h[i,i]| + |h[i+1,i+1]|) deflates.
    double deflation_eps = 1e-14;
    /// Total QR sweeps allowed are qr_sweeps_per_dim * n.
    std::size_t qr_sweeps_per_dim = 100;
    double norm_relative_tol = 1e-6;
};

/// LU factorization PA = LU with partial pivoting.
class LuDecomposition {
public:
    /// Throws SingularMatrix when a pivot magnitude falls below the pivot tolerance.
    explicit LuDecomposition(const ComplexMatrix& m, const LinalgConfig& config = {});

    ComplexMatrix solve(const ComplexMatrix& rhs) const;
    /// Solves m* x = rhs with the same factors.
    ComplexMatrix solve_adjoint(const ComplexMatrix& rhs) const;
    Complex determinant() const;

private:
    ComplexMatrix lu_;
    std::vector<std::size_t> perm_;
    int sign_ = 1;
};

ComplexMatrix lu_solve(const ComplexMatrix& m, const ComplexMatrix& rhs, const LinalgConfig& config = {});

/// Determinant by Gaussian elimination; returns 0 for exactly singular input instead of throwing.
Complex determinant(const ComplexMatrix& m);

struct HessenbergForm {
    ComplexMatrix q;
    ComplexMatrix h;
};

/// m = q h q*, h upper Hessenberg, q unitary.
HessenbergForm hessenberg(const ComplexMatrix& m);

struct SchurForm {
    ComplexMatrix q;
    ComplexMatrix t;
    std::size_t source_dim = 0;

    std::vector<Complex> eigenvalues() const;
};

/// Complex Schur form m = q t q*. Throws ConvergenceFailure when QR does not deflate.
SchurForm schur(const ComplexMatrix& m, const LinalgConfig& config = {});

/// Eigenvalues with multiplicity, in the order they appear on the Schur diagonal.
std::vector<Complex> eigenvalues(const ComplexMatrix& m, const LinalgConfig& config = {});

double frobenius_norm(const ComplexMatrix& m);

/// 2-norm estimate by power iteration on m* m; never exceeds the Frobenius norm.
double operator_norm_estimate(const ComplexMatrix& m, const LinalgConfig& config = {});

Complex trace(const ComplexMatrix& m);

ComplexMatrix power(const ComplexMatrix& m, std::size_t k);

/// Largest entry magnitude.
double max_abs(const ComplexMatrix& m);

} // namespace sylv
