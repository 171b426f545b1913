#include "doctest.h"

#include "sylv/errors.hpp"
#include "sylv/scalar_sylvester.hpp"
#include "test_util.hpp"

using namespace sylv;
using testutil::Rng;

namespace {

double residual_bound(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c, const ComplexMatrix& x,
                      double tol)
{
    return tol * (frobenius_norm(a) + frobenius_norm(b)) * frobenius_norm(x) + tol * frobenius_norm(c);
}

using Solver = ComplexMatrix (*)(const ComplexMatrix&, const ComplexMatrix&, const ComplexMatrix&,
                                 const SylvesterConfig&);

const Solver kSolvers[] = {&solve_kron, &solve_bartels_stewart, &solve_polynomial};

} // namespace

TEST_CASE("spectral_separation on hand-made spectra")
{
    const ScalarSeparation s = spectral_separation(ComplexMatrix{{1.0, 0.0}, {0.0, 2.0}}, ComplexMatrix{{3.0}});
    CHECK(s.min_gap == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(s.witness_a - 2.0) <= 1e-14);
    CHECK(std::abs(s.witness_b - 3.0) <= 1e-14);

    const ScalarSeparation z = spectral_separation(ComplexMatrix{{0.0}}, ComplexMatrix{{0.0}});
    CHECK(z.min_gap == 0.0);
}

TEST_CASE("spectral_separation equals the exhaustive pair scan")
{
    Rng rng(20);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix a = rng.matrix(5, 5), b = rng.matrix(4, 4);
        const ScalarSeparation s = spectral_separation(a, b);
        const auto ea = eigenvalues(a), eb = eigenvalues(b);
        CHECK(s.min_gap == doctest::Approx(testutil::min_cross_gap(ea, eb)).epsilon(1e-12));
        CHECK(std::abs(std::abs(s.witness_a - s.witness_b) - s.min_gap) <= 1e-14);
        CHECK(s.eigs_a.size() == 5);
        CHECK(s.eigs_b.size() == 4);
        CHECK_FALSE(s.kron_sigma_min.has_value());
    }
}

TEST_CASE("conditioning estimate is the smallest singular value of the Kronecker operator")
{
    Rng rng(21);
    SylvesterConfig cfg;
    cfg.estimate_conditioning = true;
    for (int trial = 0; trial < 5; ++trial) {
        const auto inst = testutil::separated_instance(rng, 3, 2);
        const ScalarSeparation s = spectral_separation(inst.a, inst.b, cfg);
        REQUIRE(s.kron_sigma_min.has_value());
        const ComplexMatrix l = sylvester_operator(inst.a, inst.b);
        double smallest = std::numeric_limits<double>::infinity();
        for (const Complex& e : eigenvalues(l.adjoint() * l))
            smallest = std::min(smallest, e.real());
        CHECK(*s.kron_sigma_min == doctest::Approx(std::sqrt(smallest)).epsilon(1e-6));
        CHECK(*s.kron_sigma_min <= s.min_gap + 1e-12);
    }
    CHECK(kron_sigma_min(ComplexMatrix{{0.0}}, ComplexMatrix{{0.0}}) == 0.0);
}

TEST_CASE("sylvester_operator uses column-stacked vectorization")
{
    Rng rng(22);
    const ComplexMatrix a = rng.matrix(3, 3), b = rng.matrix(2, 2), x = rng.matrix(3, 2);
    const ComplexMatrix lx = a * x - x * b;
    ComplexMatrix vx(6, 1);
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t i = 0; i < 3; ++i)
            vx(i + 3 * j, 0) = x(i, j);
    const ComplexMatrix lv = sylvester_operator(a, b) * vx;
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(std::abs(lv(i + 3 * j, 0) - lx(i, j)) <= 1e-14);
}

TEST_CASE("all solvers on the worked scalar examples")
{
    for (Solver solver : kSolvers) {
        const ComplexMatrix x = solver(ComplexMatrix{{2.0}}, ComplexMatrix{{0.0}}, ComplexMatrix{{1.0}}, {});
        CHECK(std::abs(x(0, 0) - 0.5) <= 1e-14);

        const ComplexMatrix a{{1.0, 0.0}, {0.0, 2.0}};
        const ComplexMatrix rows = solver(a, ComplexMatrix{{0.0}}, ComplexMatrix{{1.0}, {1.0}}, {});
        CHECK(std::abs(rows(0, 0) - 1.0) <= 1e-14);
        CHECK(std::abs(rows(1, 0) - 0.5) <= 1e-14);

        Rng rng(23);
        const auto inst = testutil::separated_instance(rng, 3, 2);
        CHECK(frobenius_norm(solver(inst.a, inst.b, ComplexMatrix(3, 2), {})) <= 1e-10);
    }
}

TEST_CASE("solvers reject inconsistent shapes and non-finite input")
{
    for (Solver solver : kSolvers) {
        CHECK_THROWS_AS(solver(ComplexMatrix(2, 2), ComplexMatrix(1, 1), ComplexMatrix(1, 1), {}), DimensionMismatch);
        CHECK_THROWS_AS(solver(ComplexMatrix(2, 3), ComplexMatrix(1, 1), ComplexMatrix(2, 1), {}), DimensionMismatch);
        ComplexMatrix c{{std::numeric_limits<double>::infinity()}};
        CHECK_THROWS_AS(solver(ComplexMatrix{{2.0}}, ComplexMatrix{{0.0}}, c, {}), NonFiniteInput);
    }
}

TEST_CASE("Bartels-Stewart agrees with the Kronecker solver")
{
    Rng rng(24);
    for (int trial = 0; trial < 10; ++trial) {
        const auto inst = testutil::separated_instance(rng, 10, 7);
        const ComplexMatrix xk = solve_kron(inst.a, inst.b, inst.c);
        const ComplexMatrix xb = solve_bartels_stewart(inst.a, inst.b, inst.c);
        CHECK(testutil::relative_diff(xb, xk) <= 1e-8);
        CHECK(sylvester_residual(inst.a, inst.b, inst.c, xb) <= residual_bound(inst.a, inst.b, inst.c, xb, 1e-10));
        CHECK(sylvester_residual(inst.a, inst.b, inst.c, xk) <= residual_bound(inst.a, inst.b, inst.c, xk, 1e-10));
    }
}

TEST_CASE("Bartels-Stewart on triangular input matches hand substitution")
{
    // A = [[1, 1], [0, 2]], B = [[-1, 1], [0, -2]], C = [[1, 2], [3, 4]].
    // Column 0: (A + I) x0 = c0 -> x10 = 3/3 = 1, x00 = (1 - 1)/2 = 0.
    // Column 1: (A + 2I) x1 = c1 + x0 -> x11 = (4 + 1)/4 = 5/4, x01 = (2 + 0 - 5/4)/3 = 1/4.
    const ComplexMatrix a{{1.0, 1.0}, {0.0, 2.0}};
    const ComplexMatrix b{{-1.0, 1.0}, {0.0, -2.0}};
    const ComplexMatrix c{{1.0, 2.0}, {3.0, 4.0}};
    const ComplexMatrix expected{{0.0, 0.25}, {1.0, 1.25}};
    CHECK(testutil::max_abs_diff(solve_bartels_stewart(a, b, c), expected) <= 1e-14);

    const SchurForm sa = schur(a);
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(std::abs(std::abs(sa.q(i, i)) - 1.0) <= 1e-14);
}

TEST_CASE("char_poly reference cases")
{
    const CharPoly nil = char_poly(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}});
    REQUIRE(nil.poly.degree() == 2);
    CHECK(nil.monic);
    CHECK(std::abs(nil.poly.coefficient(0)) <= 1e-15);
    CHECK(std::abs(nil.poly.coefficient(1)) <= 1e-15);
    CHECK(nil.poly.coefficient(2) == Complex(1.0));

    const CharPoly d = char_poly(ComplexMatrix{{1.0, 0.0}, {0.0, 2.0}});
    CHECK(std::abs(d.poly.coefficient(0) - 2.0) <= 1e-14);
    CHECK(std::abs(d.poly.coefficient(1) + 3.0) <= 1e-14);
    CHECK(d.poly.coefficient(2) == Complex(1.0));

    CHECK_THROWS_AS(char_poly(ComplexMatrix::identity(9)), DimensionTooLarge);
}

TEST_CASE("char_poly coefficients are elementary symmetric functions of the eigenvalues")
{
    Rng rng(25);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix m = rng.matrix(4, 4);
        const auto eig = eigenvalues(m);
        // e_k by the recurrence over roots: prod (z - l) built independently, ascending.
        std::vector<Complex> e{1.0};
        for (const Complex& l : eig) {
            std::vector<Complex> next(e.size() + 1, 0.0);
            for (std::size_t k = 0; k < e.size(); ++k) {
                next[k + 1] += e[k];
                next[k] -= l * e[k];
            }
            e = next;
        }
        const CharPoly p = char_poly(m);
        for (std::size_t k = 0; k <= 4; ++k)
            CHECK(std::abs(p.poly.coefficient(k) - e[k]) <= 1e-8);
        // Agreement with Faddeev-LeVerrier and Cayley-Hamilton.
        const auto fl = testutil::faddeev_leverrier(m);
        for (std::size_t k = 0; k <= 4; ++k)
            CHECK(std::abs(p.poly.coefficient(k) - fl[k]) <= 1e-8);
        CHECK(frobenius_norm(p.poly(m)) <= 1e-6 * std::pow(1.0 + frobenius_norm(m), 4.0));
    }
}

TEST_CASE("bezout on linear polynomials")
{
    const CharPoly p{Polynomial({0.0, 1.0}), true};
    const CharPoly q{Polynomial({-1.0, 1.0}), true};
    const BezoutPair uv = bezout(p, q);
    CHECK(std::abs(uv.u(0.0) - 1.0) <= 1e-14);
    CHECK(std::abs(uv.v(0.0) + 1.0) <= 1e-14);
    CHECK(uv.u.degree() <= 0);

    const CharPoly r{Polynomial({-2.0, 1.0}), true};
    const BezoutPair uv2 = bezout(r, CharPoly{Polynomial({0.0, 1.0}), true});
    CHECK(std::abs(uv2.u(0.0) + 0.5) <= 1e-14);
    CHECK(std::abs(uv2.v(0.0) - 0.5) <= 1e-14);
}

TEST_CASE("bezout identity for characteristic polynomials of separated matrices")
{
    Rng rng(26);
    for (int trial = 0; trial < 10; ++trial) {
        const auto inst = testutil::separated_instance(rng, 3, 3);
        const CharPoly p = char_poly(inst.a), q = char_poly(inst.b);
        const BezoutPair uv = bezout(p, q);
        const Polynomial one = uv.u * p.poly + uv.v * q.poly;
        CHECK(std::abs(one.coefficient(0) - 1.0) <= 1e-6);
        for (std::size_t k = 1; k < one.coefficients().size(); ++k)
            CHECK(std::abs(one.coefficient(k)) <= 1e-6);
        for (int s = 0; s < 20; ++s) {
            const Complex z = rng.complex(2.0);
            CHECK(std::abs(uv.u(z) * p.poly(z) + uv.v(z) * q.poly(z) - 1.0) <= 1e-6);
        }
    }
}

TEST_CASE("bezout detects a common root")
{
    const CharPoly p{Polynomial::from_roots(std::vector<Complex>{1.0, 2.0}), true};
    const CharPoly q{Polynomial::from_roots(std::vector<Complex>{2.0, -3.0}), true};
    CHECK_THROWS_AS(bezout(p, q), NotCoprime);
}

TEST_CASE("solve_polynomial matches the Kronecker solver")
{
    Rng rng(27);
    for (int trial = 0; trial < 20; ++trial) {
        const auto inst = testutil::separated_instance(rng, 3, 2);
        CHECK(testutil::max_abs_diff(solve_polynomial(inst.a, inst.b, inst.c), solve_kron(inst.a, inst.b, inst.c)) <=
              1e-6);
    }
    CHECK_THROWS_AS(solve_polynomial(ComplexMatrix::identity(6), ComplexMatrix{{0.0}}, ComplexMatrix(6, 1)),
                    DimensionTooLarge);
}

TEST_CASE("three solvers agree on small separated instances")
{
    Rng rng(28);
    for (int trial = 0; trial < 40; ++trial) {
        const auto n = static_cast<std::size_t>(rng.integer(1, 5));
        const auto m = static_cast<std::size_t>(rng.integer(1, 5));
        const auto inst = testutil::separated_instance(rng, n, m);
        const ComplexMatrix xk = solve_kron(inst.a, inst.b, inst.c);
        const ComplexMatrix xb = solve_bartels_stewart(inst.a, inst.b, inst.c);
        const ComplexMatrix xp = solve_polynomial(inst.a, inst.b, inst.c);
        CHECK(testutil::max_abs_diff(xb, xk) <= 1e-6);
        CHECK(testutil::max_abs_diff(xp, xk) <= 1e-6);
        CHECK(sylvester_residual(inst.a, inst.b, inst.c, xp) <= residual_bound(inst.a, inst.b, inst.c, xp, 1e-6));
    }
}

TEST_CASE("a homogeneous equation has only the zero solution")
{
    Rng rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        const auto n = static_cast<std::size_t>(rng.integer(1, 5));
        const auto m = static_cast<std::size_t>(rng.integer(1, 5));
        const auto inst = testutil::separated_instance(rng, n, m);
        REQUIRE(spectral_separation(inst.a, inst.b).min_gap > 0.1);
        for (Solver solver : kSolvers)
            CHECK(frobenius_norm(solver(inst.a, inst.b, ComplexMatrix(n, m), {})) <= 1e-10);
    }
}

TEST_CASE("telescoping identity for an intertwining X")
{
    Rng rng(30);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 4;
        const ComplexMatrix a = rng.matrix(n, n);
        const ComplexMatrix x = rng.well_conditioned(n);
        const ComplexMatrix b = lu_solve(x, a * x);
        for (std::size_t k = 0; k <= 4; ++k) {
            const ComplexMatrix diff = power(a, k) * x - x * power(b, k);
            CHECK(frobenius_norm(diff) <= 1e-9 * std::pow(frobenius_norm(a), static_cast<double>(k)) *
                                              frobenius_norm(x));
        }
    }
}

TEST_CASE("telescoping sum equals A^k X - X B^k for a solution")
{
    Rng rng(31);
    const auto inst = testutil::separated_instance(rng, 3, 3);
    const ComplexMatrix x = solve_kron(inst.a, inst.b, inst.c);
    for (std::size_t k = 0; k <= 4; ++k) {
        const ComplexMatrix lhs = power(inst.a, k) * x - x * power(inst.b, k);
        CHECK(testutil::max_abs_diff(telescoping_sum(inst.a, inst.b, inst.c, k), lhs) <=
              1e-10 * std::max(1.0, max_abs(lhs)));
    }
}

TEST_CASE("solution depends continuously on the data")
{
    Rng rng(32);
    for (int trial = 0; trial < 5; ++trial) {
        const auto inst = testutil::separated_instance(rng, 4, 3, 0.5);
        ComplexMatrix ea = rng.matrix(4, 4), eb = rng.matrix(3, 3), ec = rng.matrix(4, 3);
        const double norm = std::sqrt(std::pow(frobenius_norm(ea), 2) + std::pow(frobenius_norm(eb), 2) +
                                      std::pow(frobenius_norm(ec), 2));
        ea *= 1.0 / norm;
        eb *= 1.0 / norm;
        ec *= 1.0 / norm;
        const ComplexMatrix x0 = solve_bartels_stewart(inst.a, inst.b, inst.c);
        auto ratio = [&](double eps) {
            const ComplexMatrix x = solve_bartels_stewart(inst.a + eps * ea, inst.b + eps * eb, inst.c + eps * ec);
            return frobenius_norm(x - x0) / eps;
        };
        const double k = std::max(ratio(1e-3), ratio(1e-4));
        const double r = ratio(1e-5);
        CHECK(r <= 2.0 * k);
        CHECK(r >= 0.5 * k);
    }
}

TEST_CASE("every solver refuses touching spectra")
{
    const ComplexMatrix zero{{0.0}}, one{{1.0}};
    CHECK_THROWS_AS(solve_kron(zero, zero, one), SpectraOverlap);
    CHECK_THROWS_AS(solve_bartels_stewart(zero, zero, one), SpectraOverlap);
    CHECK_THROWS_AS(solve_polynomial(zero, zero, one), SpectraOverlap);

    // A shared eigenvalue inside larger matrices.
    const ComplexMatrix a{{1.0, 5.0}, {0.0, 2.0}};
    const ComplexMatrix b{{2.0, 0.0}, {7.0, -4.0}};
    const ComplexMatrix c{{1.0, 1.0}, {1.0, 1.0}};
    CHECK_THROWS_AS(solve_kron(a, b, c), SpectraOverlap);
    CHECK_THROWS_AS(solve_bartels_stewart(a, b, c), SpectraOverlap);
    CHECK_THROWS_AS(solve_polynomial(a, b, c), SpectraOverlap);
}

TEST_CASE("default gap tolerance scales with the data")
{
    CHECK(default_gap_tol(ComplexMatrix{{0.0}}, ComplexMatrix{{0.0}}) == doctest::Approx(1e-8));
    CHECK(default_gap_tol(ComplexMatrix{{3.0}}, ComplexMatrix{{4.0}}) == doctest::Approx(8e-8));
}
