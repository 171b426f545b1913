#include "sylv/polynomial.hpp"

#include "sylv/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sylv {

Polynomial::Polynomial(std::vector<Complex> coefficients) : coeffs_(std::move(coefficients)) {}

Polynomial Polynomial::from_roots(std::span<const Complex> roots)
{
    std::vector<Complex> c{Complex(1.0)};
    for (const Complex r : roots) {
        std::vector<Complex> next(c.size() + 1, Complex(0.0));
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= r * c[k];
        }
        c = std::move(next);
    }
    return Polynomial(std::move(c));
}

Complex Polynomial::operator()(Complex z) const
{
    Complex r = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        r = r * z + *it;
    return r;
}

ComplexMatrix Polynomial::operator()(const ComplexMatrix& m) const
{
    if (!m.is_square())
        throw DimensionMismatch("Polynomial: evaluation needs a square matrix");
    const std::size_t n = m.rows();
    ComplexMatrix r(n, n);
    const ComplexMatrix id = ComplexMatrix::identity(n);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        r = r * m + (*it) * id;
    return r;
}

Polynomial Polynomial::trimmed(double tol) const
{
    std::vector<Complex> c = coeffs_;
    while (!c.empty() && std::abs(c.back()) <= tol)
        c.pop_back();
    return Polynomial(std::move(c));
}

double Polynomial::max_abs_coefficient() const
{
    double best = 0.0;
    for (const Complex z : coeffs_)
        best = std::max(best, std::abs(z));
    return best;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b)
{
    std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Complex(0.0));
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k)
        c[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k)
        c[k] += b.coeffs_[k];
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b)
{
    return a + Complex(-1.0) * b;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1, Complex(0.0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
}

Polynomial operator*(Complex s, const Polynomial& a)
{
    std::vector<Complex> c = a.coeffs_;
    for (auto& z : c)
        z *= s;
    return Polynomial(std::move(c));
}

DivisionResult divide(const Polynomial& dividend, const Polynomial& divisor)
{
    if (divisor.is_zero() || divisor.leading() == Complex(0.0))
        throw Error("divide: divisor has zero leading coefficient");
    std::vector<Complex> rem = dividend.coefficients();
    const int dv = divisor.degree();
    if (dividend.degree() < dv)
        return {Polynomial{}, dividend};

    std::vector<Complex> quot(static_cast<std::size_t>(dividend.degree() - dv + 1), Complex(0.0));
    const Complex lead = divisor.leading();
    for (int k = dividend.degree() - dv; k >= 0; --k) {
        const Complex factor = rem[static_cast<std::size_t>(k + dv)] / lead;
        quot[static_cast<std::size_t>(k)] = factor;
        for (int j = 0; j <= dv; ++j)
            rem[static_cast<std::size_t>(k + j)] -= factor * divisor.coefficient(static_cast<std::size_t>(j));
        rem[static_cast<std::size_t>(k + dv)] = 0.0;
    }
    rem.resize(static_cast<std::size_t>(dv));
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem)).trimmed()};
}

} // namespace sylv
