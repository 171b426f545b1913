#include "sylv/linalg.hpp"

#include "sylv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace sylv {

namespace {

void require_finite(const ComplexMatrix& m, const char* where)
{
    if (!m.all_finite())
        throw NonFiniteInput(std::string(where) + ": matrix has non-finite entries");
}

void require_square(const ComplexMatrix& m, const char* where)
{
    if (!m.is_square())
        throw DimensionMismatch(std::string(where) + ": matrix is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + ", expected square");
}

/// Rotation G = [[c, s], [-conj(s), c]] with G [a; b] = [r; 0].
struct Givens {
    double c = 1.0;
    Complex s = 0.0;

    static Givens annihilate(Complex a, Complex b)
    {
        if (b == Complex(0.0))
            return {};
        if (a == Complex(0.0))
            return {0.0, std::conj(b) / std::abs(b)};
        const double abs_a = std::abs(a);
        const double norm = std::hypot(abs_a, std::abs(b));
        return {abs_a / norm, (a / abs_a) * std::conj(b) / norm};
    }

    /// Rows p, q of m become G applied to them.
    void apply_left(ComplexMatrix& m, std::size_t p, std::size_t q) const
    {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Complex x = m(p, j);
            const Complex y = m(q, j);
            m(p, j) = c * x + s * y;
            m(q, j) = -std::conj(s) * x + c * y;
        }
    }

    /// Columns p, q of m become m G*.
    void apply_right_adjoint(ComplexMatrix& m, std::size_t p, std::size_t q) const
    {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            const Complex x = m(i, p);
            const Complex y = m(i, q);
            m(i, p) = x * c + y * std::conj(s);
            m(i, q) = -x * s + y * c;
        }
    }
};

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0))
{
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries))
{
    if (entries_.size() != rows * cols)
        throw DimensionMismatch("ComplexMatrix: " + std::to_string(entries_.size()) + " entries for a " +
                                std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size())
{
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_)
            throw DimensionMismatch("ComplexMatrix: ragged initializer list");
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n)
{
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values)
{
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const
{
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r(j, i) = std::conj((*this)(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::transpose() const
{
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r(j, i) = (*this)(i, j);
    return r;
}

ComplexMatrix ComplexMatrix::block(std::size_t row, std::size_t col, std::size_t rows, std::size_t cols) const
{
    if (row + rows > rows_ || col + cols > cols_)
        throw DimensionMismatch("ComplexMatrix::block: block exceeds matrix bounds");
    ComplexMatrix r(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            r(i, j) = (*this)(row + i, col + j);
    return r;
}

void ComplexMatrix::set_block(std::size_t row, std::size_t col, const ComplexMatrix& m)
{
    if (row + m.rows() > rows_ || col + m.cols() > cols_)
        throw DimensionMismatch("ComplexMatrix::set_block: block exceeds matrix bounds");
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            (*this)(row + i, col + j) = m(i, j);
}

bool ComplexMatrix::all_finite() const noexcept
{
    return std::all_of(entries_.begin(), entries_.end(),
                       [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other)
{
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionMismatch("ComplexMatrix: shape mismatch in addition");
    for (std::size_t k = 0; k < entries_.size(); ++k)
        entries_[k] += other.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other)
{
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionMismatch("ComplexMatrix: shape mismatch in subtraction");
    for (std::size_t k = 0; k < entries_.size(); ++k)
        entries_[k] -= other.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s)
{
    for (auto& z : entries_)
        z *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b)
{
    if (a.cols() != b.rows())
        throw DimensionMismatch("ComplexMatrix: inner dimensions differ in product (" + std::to_string(a.cols()) +
                                " vs " + std::to_string(b.rows()) + ")");
    ComplexMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0))
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                r(i, j) += aik * b(k, j);
        }
    return r;
}

// ---------------------------------------------------------------------------
// LU

LuDecomposition::LuDecomposition(const ComplexMatrix& m, const LinalgConfig& config) : lu_(m), perm_(m.rows())
{
    require_square(m, "lu");
    require_finite(m, "lu");
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i)
        perm_[i] = i;

    const double pivot_tol = config.pivot_relative_tol * max_abs(m);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (const double v = std::abs(lu_(i, k)); v > best) {
                best = v;
                p = i;
            }
        // <= so that an all-zero matrix (tolerance 0) is still singular
        if (best <= pivot_tol)
            throw SingularMatrix("lu: pivot " + std::to_string(best) + " at column " + std::to_string(k) +
                                 " below tolerance " + std::to_string(pivot_tol));
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(lu_(k, j), lu_(p, j));
            std::swap(perm_[k], perm_[p]);
            sign_ = -sign_;
        }
        const Complex pivot = lu_(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex factor = lu_(i, k) / pivot;
            lu_(i, k) = factor;
            if (factor == Complex(0.0))
                continue;
            for (std::size_t j = k + 1; j < n; ++j)
                lu_(i, j) -= factor * lu_(k, j);
        }
    }
}

ComplexMatrix LuDecomposition::solve(const ComplexMatrix& rhs) const
{
    const std::size_t n = lu_.rows();
    if (rhs.rows() != n)
        throw DimensionMismatch("lu_solve: rhs has " + std::to_string(rhs.rows()) + " rows, expected " +
                                std::to_string(n));
    require_finite(rhs, "lu_solve");
    ComplexMatrix x(n, rhs.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < rhs.cols(); ++j)
            x(i, j) = rhs(perm_[i], j);
    for (std::size_t c = 0; c < rhs.cols(); ++c) {
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t k = 0; k < i; ++k)
                x(i, c) -= lu_(i, k) * x(k, c);
        for (std::size_t i = n; i-- > 0;) {
            for (std::size_t k = i + 1; k < n; ++k)
                x(i, c) -= lu_(i, k) * x(k, c);
            x(i, c) /= lu_(i, i);
        }
    }
    return x;
}

ComplexMatrix LuDecomposition::solve_adjoint(const ComplexMatrix& rhs) const
{
    // m* = U* L* P, so solve U* w = rhs, L* z = w, x = P^T z.
    const std::size_t n = lu_.rows();
    if (rhs.rows() != n)
        throw DimensionMismatch("lu_solve_adjoint: rhs row count mismatch");
    ComplexMatrix z = rhs;
    for (std::size_t c = 0; c < rhs.cols(); ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < i; ++k)
                z(i, c) -= std::conj(lu_(k, i)) * z(k, c);
            z(i, c) /= std::conj(lu_(i, i));
        }
        for (std::size_t i = n; i-- > 0;)
            for (std::size_t k = i + 1; k < n; ++k)
                z(i, c) -= std::conj(lu_(k, i)) * z(k, c);
    }
    ComplexMatrix x(n, rhs.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < rhs.cols(); ++c)
            x(perm_[i], c) = z(i, c);
    return x;
}

Complex LuDecomposition::determinant() const
{
    Complex d = static_cast<double>(sign_);
    for (std::size_t i = 0; i < lu_.rows(); ++i)
        d *= lu_(i, i);
    return d;
}

ComplexMatrix lu_solve(const ComplexMatrix& m, const ComplexMatrix& rhs, const LinalgConfig& config)
{
    return LuDecomposition(m, config).solve(rhs);
}

Complex determinant(const ComplexMatrix& m)
{
    LinalgConfig exact;
    exact.pivot_relative_tol = 0.0;
    try {
        return LuDecomposition(m, exact).determinant();
    } catch (const SingularMatrix&) {
        return 0.0;
    }
}

// ---------------------------------------------------------------------------
// Hessenberg and Schur

HessenbergForm hessenberg(const ComplexMatrix& m)
{
    require_square(m, "hessenberg");
    require_finite(m, "hessenberg");
    const std::size_t n = m.rows();
    ComplexMatrix h = m;
    ComplexMatrix q = ComplexMatrix::identity(n);
    std::vector<Complex> v(n);

    for (std::size_t k = 0; k + 2 < n; ++k) {
        double tail = 0.0;
        for (std::size_t i = k + 2; i < n; ++i)
            tail += std::norm(h(i, k));
        if (tail == 0.0)
            continue;
        const Complex x0 = h(k + 1, k);
        const double alpha = std::sqrt(tail + std::norm(x0));
        const Complex phase = (x0 == Complex(0.0)) ? Complex(1.0) : x0 / std::abs(x0);

        // v = x + phase*alpha*e1, reflector P = I - 2 v v* / (v* v)
        std::fill(v.begin(), v.end(), Complex(0.0));
        v[k + 1] = x0 + phase * alpha;
        for (std::size_t i = k + 2; i < n; ++i)
            v[i] = h(i, k);
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i)
            vnorm2 += std::norm(v[i]);
        const double beta = 2.0 / vnorm2;

        // h <- P h
        for (std::size_t j = 0; j < n; ++j) {
            Complex dot = 0.0;
            for (std::size_t i = k + 1; i < n; ++i)
                dot += std::conj(v[i]) * h(i, j);
            dot *= beta;
            for (std::size_t i = k + 1; i < n; ++i)
                h(i, j) -= v[i] * dot;
        }
        // h <- h P, q <- q P
        for (ComplexMatrix* target : {&h, &q}) {
            ComplexMatrix& t = *target;
            for (std::size_t i = 0; i < n; ++i) {
                Complex dot = 0.0;
                for (std::size_t j = k + 1; j < n; ++j)
                    dot += t(i, j) * v[j];
                dot *= beta;
                for (std::size_t j = k + 1; j < n; ++j)
                    t(i, j) -= dot * std::conj(v[j]);
            }
        }
        for (std::size_t i = k + 2; i < n; ++i)
            h(i, k) = 0.0;
    }
    return {std::move(q), std::move(h)};
}

std::vector<Complex> SchurForm::eigenvalues() const
{
    std::vector<Complex> d(t.rows());
    for (std::size_t i = 0; i < t.rows(); ++i)
        d[i] = t(i, i);
    return d;
}

SchurForm schur(const ComplexMatrix& m, const LinalgConfig& config)
{
    auto [q, t] = hessenberg(m);
    const std::size_t n = m.rows();
    if (n == 0)
        return {std::move(q), std::move(t), 0};

    // Floor for subdiagonals next to a zero diagonal pair, where the relative test degenerates.
    const double absolute_floor = std::numeric_limits<double>::epsilon() * frobenius_norm(t);
    auto negligible = [&](std::size_t i) {
        const double sub = std::abs(t(i, i - 1));
        return sub <= config.deflation_eps * (std::abs(t(i - 1, i - 1)) + std::abs(t(i, i))) ||
               sub <= absolute_floor;
    };

    const std::size_t max_sweeps = config.qr_sweeps_per_dim * n;
    std::size_t sweeps = 0;
    std::size_t iter_since_deflation = 0;
    std::size_t iu = n - 1;
    while (true) {
        while (iu > 0 && negligible(iu)) {
            t(iu, iu - 1) = 0.0;
            --iu;
            iter_since_deflation = 0;
        }
        if (iu == 0)
            break;
        if (++sweeps > max_sweeps)
            throw ConvergenceFailure("schur: eigenvalue " + std::to_string(iu) + " did not deflate within " +
                                     std::to_string(max_sweeps) + " QR sweeps");
        ++iter_since_deflation;

        std::size_t il = iu - 1;
        while (il > 0 && !negligible(il))
            --il;
        if (il > 0)
            t(il, il - 1) = 0.0;

        Complex shift;
        if (iter_since_deflation == 10 || iter_since_deflation == 30) {
            // exceptional shift to break cycles
            shift = std::abs(t(iu, iu - 1).real());
            if (iu >= 2)
                shift += std::abs(t(iu - 1, iu - 2).real());
        } else {
            // Wilkinson: eigenvalue of the trailing 2x2 closest to t(iu, iu)
            const Complex a = t(iu - 1, iu - 1), b = t(iu - 1, iu), c = t(iu, iu - 1), d = t(iu, iu);
            const Complex half = 0.5 * (a - d);
            const Complex disc = std::sqrt(half * half + b * c);
            const Complex mid = 0.5 * (a + d);
            const Complex l1 = mid + disc, l2 = mid - disc;
            shift = std::abs(l1 - d) <= std::abs(l2 - d) ? l1 : l2;
        }

        Givens g = Givens::annihilate(t(il, il) - shift, t(il + 1, il));
        g.apply_left(t, il, il + 1);
        g.apply_right_adjoint(t, il, il + 1);
        g.apply_right_adjoint(q, il, il + 1);
        for (std::size_t k = il + 1; k < iu; ++k) {
            g = Givens::annihilate(t(k, k - 1), t(k + 1, k - 1));
            g.apply_left(t, k, k + 1);
            t(k + 1, k - 1) = 0.0;
            g.apply_right_adjoint(t, k, k + 1);
            g.apply_right_adjoint(q, k, k + 1);
        }
    }

    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            t(i, j) = 0.0;
    return {std::move(q), std::move(t), n};
}

std::vector<Complex> eigenvalues(const ComplexMatrix& m, const LinalgConfig& config)
{
    return schur(m, config).eigenvalues();
}

// ---------------------------------------------------------------------------
// Norms and helpers

double frobenius_norm(const ComplexMatrix& m)
{
    double s = 0.0;
    for (const Complex z : m.entries())
        s += std::norm(z);
    return std::sqrt(s);
}

double operator_norm_estimate(const ComplexMatrix& m, const LinalgConfig& config)
{
    const double fro = frobenius_norm(m);
    if (fro == 0.0)
        return 0.0;
    const std::size_t n = m.cols();
    const ComplexMatrix adj = m.adjoint();

    // Fixed seed keeps the estimate a pure function of m.
    std::mt19937_64 rng(0x6f70'6e6f'726d);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexMatrix v(n, 1);
    for (std::size_t i = 0; i < n; ++i)
        v(i, 0) = Complex(dist(rng), dist(rng));

    // Iterate well past the requested tolerance: successive changes underestimate the error.
    const double stop = config.norm_relative_tol * 1e-6;
    double lambda = 0.0;
    for (int it = 0; it < 20000; ++it) {
        const double vn = frobenius_norm(v);
        v *= Complex(1.0 / vn);
        ComplexMatrix w = adj * (m * v);
        const double next = frobenius_norm(w);
        const bool converged = std::abs(next - lambda) <= stop * next;
        lambda = next;
        v = std::move(w);
        if (converged)
            break;
    }
    return std::min(std::sqrt(lambda), fro);
}

Complex trace(const ComplexMatrix& m)
{
    require_square(m, "trace");
    Complex s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        s += m(i, i);
    return s;
}

ComplexMatrix power(const ComplexMatrix& m, std::size_t k)
{
    require_square(m, "power");
    ComplexMatrix r = ComplexMatrix::identity(m.rows());
    for (std::size_t i = 0; i < k; ++i)
        r = r * m;
    return r;
}

double max_abs(const ComplexMatrix& m)
{
    double best = 0.0;
    for (const Complex z : m.entries())
        best = std::max(best, std::abs(z));
    return best;
}

} // namespace sylv
