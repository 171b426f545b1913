#include "sylv/scalar_sylvester.hpp"

#include "sylv/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace sylv {

namespace {

void check_problem(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c, const char* where)
{
    if (!a.is_square() || !b.is_square())
        throw DimensionMismatch(std::string(where) + ": A and B must be square");
    if (c.rows() != a.rows() || c.cols() != b.rows())
        throw DimensionMismatch(std::string(where) + ": C is " + std::to_string(c.rows()) + "x" +
                                std::to_string(c.cols()) + ", expected " + std::to_string(a.rows()) + "x" +
                                std::to_string(b.rows()));
    if (!a.all_finite() || !b.all_finite() || !c.all_finite())
        throw NonFiniteInput(std::string(where) + ": non-finite entries");
}

} // namespace

double default_gap_tol(const ComplexMatrix& a, const ComplexMatrix& b)
{
    return 1e-8 * (1.0 + frobenius_norm(a) + frobenius_norm(b));
}

ScalarSeparation spectral_separation(const ComplexMatrix& a, const ComplexMatrix& b, const SylvesterConfig& config)
{
    ScalarSeparation sep;
    sep.eigs_a = eigenvalues(a, config.linalg);
    sep.eigs_b = eigenvalues(b, config.linalg);
    sep.min_gap = std::numeric_limits<double>::infinity();
    for (const Complex la : sep.eigs_a)
        for (const Complex lb : sep.eigs_b)
            if (const double gap = std::abs(la - lb); gap < sep.min_gap) {
                sep.min_gap = gap;
                sep.witness_a = la;
                sep.witness_b = lb;
            }
    if (config.estimate_conditioning && a.rows() * b.rows() <= 144)
        sep.kron_sigma_min = kron_sigma_min(a, b, config.linalg);
    return sep;
}

ComplexMatrix sylvester_operator(const ComplexMatrix& a, const ComplexMatrix& b)
{
    const std::size_t n = a.rows();
    const std::size_t m = b.rows();
    // vec index of X(i, j) is i + j n
    ComplexMatrix op(n * m, n * m);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                op(i + j * n, k + j * n) += a(i, k);
        for (std::size_t l = 0; l < m; ++l)
            for (std::size_t i = 0; i < n; ++i)
                op(i + j * n, i + l * n) -= b(l, j);
    }
    return op;
}

double kron_sigma_min(const ComplexMatrix& a, const ComplexMatrix& b, const LinalgConfig& config)
{
    const ComplexMatrix op = sylvester_operator(a, b);
    LinalgConfig exact = config;
    exact.pivot_relative_tol = 0.0;
    try {
        const LuDecomposition lu(op, exact);
        ComplexMatrix v(op.rows(), 1);
        for (std::size_t i = 0; i < v.rows(); ++i)
            v(i, 0) = Complex(1.0 + 0.1 * static_cast<double>(i % 7), 0.3 * static_cast<double>(i % 3));
        double growth = 0.0;
        for (int it = 0; it < 500; ++it) {
            v *= Complex(1.0 / frobenius_norm(v));
            ComplexMatrix w = lu.solve(lu.solve_adjoint(v));
            const double next = frobenius_norm(w);
            const bool converged = std::abs(next - growth) <= 1e-12 * next;
            growth = next;
            v = std::move(w);
            if (converged)
                break;
        }
        return growth > 0.0 && std::isfinite(growth) ? 1.0 / std::sqrt(growth) : 0.0;
    } catch (const SingularMatrix&) {
        return 0.0;
    }
}

ComplexMatrix solve_kron(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                         const SylvesterConfig& config)
{
    check_problem(a, b, c, "solve_kron");
    const std::size_t n = a.rows();
    const std::size_t m = b.rows();
    ComplexMatrix rhs(n * m, 1);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < n; ++i)
            rhs(i + j * n, 0) = c(i, j);

    ComplexMatrix vec;
    try {
        vec = lu_solve(sylvester_operator(a, b), rhs, config.linalg);
    } catch (const SingularMatrix& e) {
        throw SpectraOverlap(std::string("solve_kron: Sylvester operator is singular: ") + e.what());
    }
    ComplexMatrix x(n, m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < n; ++i)
            x(i, j) = vec(i + j * n, 0);
    return x;
}

ComplexMatrix solve_bartels_stewart(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                                    const SylvesterConfig& config)
{
    check_problem(a, b, c, "solve_bartels_stewart");
    const std::size_t n = a.rows();
    const std::size_t m = b.rows();
    const SchurForm sa = schur(a, config.linalg);
    const SchurForm sb = schur(b, config.linalg);
    const ComplexMatrix& ta = sa.t;
    const ComplexMatrix& tb = sb.t;
    const double denom_tol = config.denom_relative_tol * (frobenius_norm(a) + frobenius_norm(b));

    ComplexMatrix y = sa.q.adjoint() * c * sb.q;
    for (std::size_t j = 0; j < m; ++j) {
        // rhs_j = f_j + sum_{k<j} y_k Tb(k, j)
        for (std::size_t k = 0; k < j; ++k) {
            const Complex tkj = tb(k, j);
            if (tkj == Complex(0.0))
                continue;
            for (std::size_t i = 0; i < n; ++i)
                y(i, j) += y(i, k) * tkj;
        }
        const Complex mu = tb(j, j);
        for (std::size_t i = n; i-- > 0;) {
            Complex s = y(i, j);
            for (std::size_t k = i + 1; k < n; ++k)
                s -= ta(i, k) * y(k, j);
            const Complex denom = ta(i, i) - mu;
            if (std::abs(denom) <= denom_tol)
                throw SpectraOverlap("solve_bartels_stewart: eigenvalues " + std::to_string(ta(i, i).real()) + "+" +
                                     std::to_string(ta(i, i).imag()) + "i of A and " + std::to_string(mu.real()) +
                                     "+" + std::to_string(mu.imag()) + "i of B coincide");
            y(i, j) = s / denom;
        }
    }
    return sa.q * y * sb.q.adjoint();
}

CharPoly char_poly(const ComplexMatrix& m, const LinalgConfig& config)
{
    if (!m.is_square())
        throw DimensionMismatch("char_poly: matrix must be square");
    if (m.rows() > kCharPolyMaxDim)
        throw DimensionTooLarge("char_poly: dimension " + std::to_string(m.rows()) + " exceeds " +
                                std::to_string(kCharPolyMaxDim));
    const std::vector<Complex> eigs = eigenvalues(m, config);
    return {Polynomial::from_roots(eigs), true};
}

BezoutPair bezout(const CharPoly& p, const CharPoly& q, const SylvesterConfig& config)
{
    const double scale = std::max({1.0, p.poly.max_abs_coefficient(), q.poly.max_abs_coefficient()});
    const double tol = config.euclid_relative_tol * scale;

    // Invariant: r_i = s_i p + t_i q. Remainders are kept monic.
    Polynomial r0 = p.poly.trimmed(), r1 = q.poly.trimmed();
    if (r0.is_zero() || r1.is_zero())
        throw NotCoprime("bezout: zero polynomial");
    Polynomial s0 = Polynomial::constant(1.0), s1{};
    Polynomial t0{}, t1 = Polynomial::constant(1.0);

    auto normalize = [](Polynomial& r, Polynomial& s, Polynomial& t) {
        const Complex inv = 1.0 / r.leading();
        r = inv * r;
        s = inv * s;
        t = inv * t;
    };
    normalize(r0, s0, t0);
    normalize(r1, s1, t1);

    while (r1.degree() > 0) {
        auto [quot, rem] = divide(r0, r1);
        rem = rem.trimmed(tol);
        if (rem.is_zero())
            throw NotCoprime("bezout: common factor of degree " + std::to_string(r1.degree()));
        Polynomial s2 = s0 - quot * s1;
        Polynomial t2 = t0 - quot * t1;
        r0 = std::move(r1);
        s0 = std::move(s1);
        t0 = std::move(t1);
        r1 = std::move(rem);
        s1 = std::move(s2);
        t1 = std::move(t2);
        normalize(r1, s1, t1);
    }
    // r1 is now the constant 1
    return {s1, t1};
}

ComplexMatrix telescoping_sum(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c, std::size_t k)
{
    check_problem(a, b, c, "telescoping_sum");
    // W_1 = C, W_{k+1} = A W_k + C B^k
    ComplexMatrix w(c.rows(), c.cols());
    ComplexMatrix c_bk = c;
    for (std::size_t step = 0; step < k; ++step) {
        w = a * w + c_bk;
        c_bk = c_bk * b;
    }
    return w;
}

ComplexMatrix solve_polynomial(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                               const SylvesterConfig& config)
{
    check_problem(a, b, c, "solve_polynomial");
    if (a.rows() > kPolynomialSolverMaxDim || b.rows() > kPolynomialSolverMaxDim)
        throw DimensionTooLarge("solve_polynomial: dimensions above " + std::to_string(kPolynomialSolverMaxDim) +
                                " are not supported");
    const ScalarSeparation sep = spectral_separation(a, b, config);
    if (sep.min_gap <= default_gap_tol(a, b))
        throw SpectraOverlap("solve_polynomial: spectra of A and B intersect (gap " + std::to_string(sep.min_gap) +
                             ")");

    const CharPoly pa{Polynomial::from_roots(sep.eigs_a), true};
    const CharPoly pb{Polynomial::from_roots(sep.eigs_b), true};
    const BezoutPair bz = bezout(pa, pb, config);

    // p_B(A) X = sum_k beta_k W_k, with W_k the telescoping sums.
    const std::size_t m = b.rows();
    ComplexMatrix rhs(c.rows(), c.cols());
    ComplexMatrix w(c.rows(), c.cols());
    ComplexMatrix c_bk = c;
    for (std::size_t k = 1; k <= m; ++k) {
        w = a * w + c_bk;
        c_bk = c_bk * b;
        rhs += pb.poly.coefficient(k) * w;
    }
    return bz.v(a) * rhs;
}

double sylvester_residual(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                          const ComplexMatrix& x)
{
    return frobenius_norm(a * x - x * b - c);
}

} // namespace sylv
