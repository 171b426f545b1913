#pragma once

#include "sylv/linalg.hpp"

#include <span>
#include <vector>

namespace sylv {

/// Polynomial over C with coefficients stored lowest degree first.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> coefficients);

    static Polynomial constant(Complex c) { return Polynomial({c}); }
    /// prod (z - r_i)
    static Polynomial from_roots(std::span<const Complex> roots);

    /// Degree of the stored representation; -1 for the empty (zero) polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<Complex>& coefficients() const noexcept { return coeffs_; }
    Complex coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Complex(0.0); }
    Complex leading() const { return coeffs_.empty() ? Complex(0.0) : coeffs_.back(); }

    Complex operator()(Complex z) const;
    /// Horner evaluation at a square matrix.
    ComplexMatrix operator()(const ComplexMatrix& m) const;

    /// Drops leading coefficients with magnitude <= tol.
    Polynomial trimmed(double tol = 0.0) const;
    double max_abs_coefficient() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Complex s, const Polynomial& a);

private:
    std::vector<Complex> coeffs_;
};

struct DivisionResult {
    Polynomial quotient;
    Polynomial remainder;
};

/// Long division; the divisor's leading coefficient must be nonzero.
DivisionResult divide(const Polynomial& dividend, const Polynomial& divisor);

} // namespace sylv
