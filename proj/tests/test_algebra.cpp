#include "doctest.h"

#include "sylv/algebra.hpp"
#include "sylv/errors.hpp"
#include "test_util.hpp"

using namespace sylv;
using testutil::Rng;

namespace {

const double kPi = std::numbers::pi;

double theta(std::size_t j, std::size_t n)
{
    return 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
}

} // namespace

TEST_CASE("descriptors validate their grid")
{
    CHECK_NOTHROW(AlgebraDescriptor::wiener(7, 3));
    CHECK_THROWS_AS(AlgebraDescriptor::wiener(6, 3), InsufficientGrid);
    CHECK(AlgebraDescriptor::wiener(16, 3).payload_size() == 7);
    CHECK(AlgebraDescriptor::sampled(5).payload_size() == 5);
    CHECK(AlgebraDescriptor::scalar().payload_size() == 1);
    CHECK(std::string(to_string(AlgebraKind::SampledCK)) == "SampledCK");
    CHECK(next_power_of_two(1) == 1);
    CHECK(next_power_of_two(13) == 16);
    CHECK(next_power_of_two(16) == 16);
}

TEST_CASE("convolution of deltas")
{
    const AlgebraDescriptor d = AlgebraDescriptor::wiener(16, 4);
    const AlgebraElement e1 = AlgebraElement::monomial(d, 1);
    CHECK(alg_mul(e1, e1) == AlgebraElement::monomial(d, 2));
    const AlgebraElement em1 = AlgebraElement::monomial(d, -1);
    CHECK(alg_mul(e1, em1) == AlgebraElement::unit(d));
}

TEST_CASE("the unit is neutral in every algebra")
{
    Rng rng(40);
    for (const AlgebraDescriptor& d :
         {AlgebraDescriptor::scalar(), AlgebraDescriptor::wiener(16, 3), AlgebraDescriptor::sampled(6)}) {
        const AlgebraElement x = testutil::random_element(rng, d, 3);
        CHECK(alg_mul(AlgebraElement::unit(d), x) == x);
        CHECK(alg_mul(x, AlgebraElement::unit(d)) == x);
        CHECK(alg_add(x, AlgebraElement::zero(d)) == x);
        CHECK(alg_sub(x, x).is_zero());
    }
}

TEST_CASE("products that leave the band are refused")
{
    const AlgebraDescriptor d = AlgebraDescriptor::wiener(16, 3);
    const AlgebraElement e2 = AlgebraElement::monomial(d, 2);
    CHECK_THROWS_AS(alg_mul(e2, e2), BandwidthOverflow);
    CHECK_NOTHROW(alg_mul(e2, AlgebraElement::monomial(d, 1)));
    CHECK_THROWS_AS(AlgebraElement::monomial(d, 4), BandwidthOverflow);
}

TEST_CASE("operations on different algebras are refused")
{
    const AlgebraElement x = AlgebraElement::unit(AlgebraDescriptor::wiener(16, 3));
    const AlgebraElement y = AlgebraElement::unit(AlgebraDescriptor::wiener(32, 3));
    const AlgebraElement z = AlgebraElement::unit(AlgebraDescriptor::sampled(4));
    CHECK_THROWS_AS(alg_add(x, y), DescriptorMismatch);
    CHECK_THROWS_AS(alg_mul(x, z), DescriptorMismatch);
}

TEST_CASE("transform of a product is the product of transforms")
{
    Rng rng(41);
    const AlgebraDescriptor d = AlgebraDescriptor::wiener(32, 6);
    for (int trial = 0; trial < 20; ++trial) {
        const AlgebraElement x = testutil::random_element(rng, d, 3);
        const AlgebraElement y = testutil::random_element(rng, d, 3);
        const AlgebraElement xy = alg_mul(x, y);
        for (std::size_t j = 0; j < 32; ++j)
            CHECK(std::abs(gelfand_eval(xy, j) - gelfand_eval(x, j) * gelfand_eval(y, j)) <= 1e-12);
    }
    const AlgebraDescriptor k = AlgebraDescriptor::sampled(9);
    const AlgebraElement x = testutil::random_element(rng, k, 0);
    const AlgebraElement y = testutil::random_element(rng, k, 0);
    for (std::size_t j = 0; j < 9; ++j)
        CHECK(std::abs(gelfand_eval(alg_mul(x, y), j) - gelfand_eval(x, j) * gelfand_eval(y, j)) <= 1e-15);
}

TEST_CASE("gelfand_eval of units and monomials")
{
    const AlgebraDescriptor d = AlgebraDescriptor::wiener(8, 2);
    for (std::size_t j = 0; j < 8; ++j)
        CHECK(std::abs(gelfand_eval(AlgebraElement::unit(d), j) - 1.0) <= 1e-15);
    const AlgebraElement e1 = AlgebraElement::monomial(d, 1);
    CHECK(std::abs(gelfand_eval(e1, 0) - 1.0) <= 1e-15);
    CHECK(std::abs(gelfand_eval(e1, 4) + 1.0) <= 1e-15);
    CHECK(std::abs(gelfand_eval_at(e1, kPi) + 1.0) <= 1e-15);
    CHECK_THROWS_AS(gelfand_eval(e1, 8), IndexOutOfRange);
    CHECK(gelfand_eval(AlgebraElement::constant(AlgebraDescriptor::scalar(), 3.0), 0) == Complex(3.0));
    CHECK_THROWS_AS(gelfand_eval(AlgebraElement::unit(AlgebraDescriptor::sampled(2)), 2), IndexOutOfRange);
}

TEST_CASE("gelfand_eval matches a direct trigonometric sum")
{
    Rng rng(42);
    const AlgebraDescriptor d = AlgebraDescriptor::wiener(24, 5);
    for (int trial = 0; trial < 10; ++trial) {
        const auto coeffs = testutil::random_coefficients(rng, 5);
        const AlgebraElement x = AlgebraElement::from_coefficients(d, coeffs);
        for (std::size_t j = 0; j < 24; ++j)
            CHECK(std::abs(gelfand_eval(x, j) - testutil::trig_eval(coeffs, theta(j, 24))) <= 1e-12);
    }
}

TEST_CASE("gelfand_matrix of units, constants and random matrices")
{
    const AlgebraDescriptor d = AlgebraDescriptor::wiener(16, 2);
    AlgebraMatrix ones(2, 3, d);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            ones.set(i, j, AlgebraElement::unit(d));
    const ComplexMatrix o = gelfand_matrix(ones, 5);
    for (const Complex& z : o.entries())
        CHECK(std::abs(z - 1.0) <= 1e-15);

    Rng rng(43);
    const ComplexMatrix c0 = rng.matrix(3, 2);
    const AlgebraMatrix c = AlgebraMatrix::constant(c0, d);
    for (std::size_t j = 0; j < 16; ++j)
        CHECK(testutil::max_abs_diff(gelfand_matrix(c, j), c0) <= 1e-15);

    const AlgebraMatrix r = testutil::random_algebra_matrix(rng, 3, 3, d, 2);
    for (std::size_t j = 0; j < 16; ++j) {
        const ComplexMatrix rj = gelfand_matrix(r, j);
        for (std::size_t e = 0; e < 9; ++e) {
            std::map<int, Complex> coeffs;
            for (int k = -2; k <= 2; ++k)
                coeffs[k] = r.entries()[e].coefficient(k);
            CHECK(std::abs(rj.entries()[e] - testutil::trig_eval(coeffs, theta(j, 16))) <= 1e-12);
        }
    }
}

TEST_CASE("from_samples inverts sampling")
{
    const std::vector<Complex> ones(8, 1.0);
    const AlgebraElement u = from_samples(ones, 3);
    for (int k = -3; k <= 3; ++k)
        CHECK(std::abs(u.coefficient(k) - (k == 0 ? 1.0 : 0.0)) <= 1e-15);

    std::vector<Complex> circle(8);
    for (std::size_t j = 0; j < 8; ++j)
        circle[j] = std::polar(1.0, theta(j, 8));
    const AlgebraElement e1 = from_samples(circle, 3);
    for (int k = -3; k <= 3; ++k)
        CHECK(std::abs(e1.coefficient(k) - (k == 1 ? 1.0 : 0.0)) <= 1e-15);

    CHECK_THROWS_AS(from_samples(circle, 4), InsufficientGrid);
}

TEST_CASE("sampling then interpolating reproduces band-limited coefficients")
{
    Rng rng(44);
    for (std::size_t n : {9u, 16u, 31u}) {
        const std::size_t bw = (n - 1) / 2;
        const AlgebraDescriptor d = AlgebraDescriptor::wiener(n, bw);
        for (int trial = 0; trial < 5; ++trial) {
            const AlgebraElement x = testutil::random_element(rng, d, static_cast<int>(bw));
            std::vector<Complex> s(n);
            for (std::size_t j = 0; j < n; ++j)
                s[j] = gelfand_eval(x, j);
            const AlgebraElement back = from_samples(s, bw);
            for (int k = -static_cast<int>(bw); k <= static_cast<int>(bw); ++k)
                CHECK(std::abs(back.coefficient(k) - x.coefficient(k)) <= 1e-12);
        }
    }
}

TEST_CASE("a transform vanishing on the grid forces zero coefficients")
{
    const AlgebraDescriptor d = AlgebraDescriptor::wiener(11, 5);
    const AlgebraElement zero_samples = from_samples(std::vector<Complex>(11, 0.0), 5);
    for (int k = -5; k <= 5; ++k)
        CHECK(std::abs(zero_samples.coefficient(k)) <= 1e-12);

    // Perturbed to roundoff level the coefficients stay at roundoff level.
    Rng rng(45);
    std::vector<Complex> tiny(11);
    for (auto& z : tiny)
        z = rng.complex(1e-14);
    const AlgebraElement t = from_samples(tiny, 5);
    for (int k = -5; k <= 5; ++k)
        CHECK(std::abs(t.coefficient(k)) <= 1e-12);
    (void)d;
}

TEST_CASE("signed frequencies")
{
    CHECK(signed_frequency(0, 8) == 0);
    CHECK(signed_frequency(3, 8) == 3);
    CHECK(signed_frequency(4, 8) == 4);
    CHECK(signed_frequency(5, 8) == -3);
    CHECK(signed_frequency(7, 8) == -1);
    CHECK(signed_frequency(4, 7) == -3);
}

TEST_CASE("norms of simple elements")
{
    const AlgebraDescriptor d = AlgebraDescriptor::wiener(16, 3);
    const AlgebraElement u = AlgebraElement::unit(d);
    CHECK(wiener_norm(u) == doctest::Approx(1.0));
    CHECK(sup_norm(u, 2) == doctest::Approx(1.0));
    const AlgebraElement cos2 = alg_add(AlgebraElement::monomial(d, 1), AlgebraElement::monomial(d, -1));
    CHECK(wiener_norm(cos2) == doctest::Approx(2.0));
    CHECK(sup_norm(cos2, 2) == doctest::Approx(2.0));
    CHECK(wiener_norm(AlgebraElement::constant(AlgebraDescriptor::scalar(), Complex(3.0, 4.0))) ==
          doctest::Approx(5.0));
    const AlgebraElement k(AlgebraDescriptor::sampled(3), {1.0, Complex(0.0, -2.0), 0.5});
    CHECK(wiener_norm(k) == doctest::Approx(2.0));
    CHECK(sup_norm(k, 4) == doctest::Approx(2.0));
}

TEST_CASE("sup norm never exceeds the Wiener norm")
{
    Rng rng(46);
    const AlgebraDescriptor d = AlgebraDescriptor::wiener(32, 8);
    for (int trial = 0; trial < 100; ++trial) {
        const AlgebraElement x = testutil::random_element(rng, d, rng.integer(0, 8));
        CHECK(sup_norm(x, rng.integer(1, 4)) <= wiener_norm(x) + 1e-12);
    }
}

TEST_CASE("oversampling can only find larger values")
{
    // sin(3 theta) vanishes at every point of a 3-point grid, not of a denser one.
    const AlgebraDescriptor d = AlgebraDescriptor::wiener(7, 3);
    const AlgebraElement s3 = alg_sub(AlgebraElement::monomial(d, 3, Complex(0.0, -0.5)),
                                      AlgebraElement::monomial(d, -3, Complex(0.0, -0.5)));
    CHECK(sup_norm(s3, 4) >= sup_norm(s3, 1) - 1e-15);
    CHECK(sup_norm(s3, 8) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("Wiener norm is submultiplicative")
{
    Rng rng(47);
    const AlgebraDescriptor d = AlgebraDescriptor::wiener(32, 10);
    for (int trial = 0; trial < 50; ++trial) {
        const AlgebraElement x = testutil::random_element(rng, d, 5);
        const AlgebraElement y = testutil::random_element(rng, d, 5);
        CHECK(wiener_norm(alg_mul(x, y)) <= wiener_norm(x) * wiener_norm(y) + 1e-12);
    }
}

TEST_CASE("transform commutes with matrix multiplication")
{
    Rng rng(48);
    const AlgebraDescriptor d = AlgebraDescriptor::wiener(16, 4);
    for (int trial = 0; trial < 10; ++trial) {
        const AlgebraMatrix m = testutil::random_algebra_matrix(rng, 3, 3, d, 2);
        const AlgebraMatrix n = testutil::random_algebra_matrix(rng, 3, 3, d, 2);
        const AlgebraMatrix mn = mat_mul(m, n);
        for (std::size_t j = 0; j < 16; ++j)
            CHECK(testutil::max_abs_diff(gelfand_matrix(mn, j), gelfand_matrix(m, j) * gelfand_matrix(n, j)) <=
                  1e-10);
    }
}

TEST_CASE("widening preserves values")
{
    Rng rng(49);
    const AlgebraDescriptor narrow = AlgebraDescriptor::wiener(8, 2);
    const AlgebraDescriptor wide = AlgebraDescriptor::wiener(32, 10);
    const AlgebraElement x = testutil::random_element(rng, narrow, 2);
    const AlgebraElement w = widen(x, wide);
    CHECK(w.descriptor() == wide);
    for (int k = -2; k <= 2; ++k)
        CHECK(w.coefficient(k) == x.coefficient(k));
    CHECK(w.effective_bandwidth() == x.effective_bandwidth());
    CHECK_THROWS_AS(widen(AlgebraElement::monomial(wide, 5), narrow), BandwidthOverflow);
    CHECK_THROWS_AS(widen(x, AlgebraDescriptor::sampled(8)), DescriptorMismatch);

    const AlgebraDescriptor ds[] = {narrow, AlgebraDescriptor::wiener(16, 3)};
    const AlgebraDescriptor c = common_descriptor(ds, 9);
    CHECK(c.bandwidth == 9);
    CHECK(c.grid_size >= 19);
    CHECK(c.grid_size >= 16);
}

TEST_CASE("algebra matrices share one descriptor")
{
    const AlgebraDescriptor d = AlgebraDescriptor::wiener(16, 3);
    AlgebraMatrix m(2, 2, d);
    CHECK_THROWS_AS(m.set(0, 0, AlgebraElement::unit(AlgebraDescriptor::wiener(32, 3))), DescriptorMismatch);
    CHECK_THROWS_AS(mat_mul(AlgebraMatrix(2, 3, d), AlgebraMatrix(2, 3, d)), DimensionMismatch);
    const AlgebraMatrix i = AlgebraMatrix::identity(2, d);
    CHECK(mat_mul(i, i) == i);
    CHECK(mat_add(i, mat_scale(i, -1.0)).is_zero());
    CHECK(i.block(0, 1, 2, 1)(1, 0) == AlgebraElement::unit(d));
}

TEST_CASE("residual of an exact solution vanishes")
{
    Rng rng(50);
    const auto inst = testutil::manufactured_instance(rng, 2, 2, 2, 2, 32);
    const ResidualNorms r = algebra_residual(inst.a, inst.b, inst.c, inst.x);
    CHECK(r.wiener <= 1e-13);
    CHECK(r.sup <= 1e-13);

    AlgebraMatrix off = inst.x;
    off.set(0, 0, alg_add(off(0, 0), AlgebraElement::monomial(off.descriptor(), 1, 1e-3)));
    CHECK(algebra_residual(inst.a, inst.b, inst.c, off).sup >= 1e-3);
}

TEST_CASE("non-finite payloads are rejected")
{
    const AlgebraDescriptor d = AlgebraDescriptor::sampled(2);
    CHECK_THROWS_AS(AlgebraElement(d, {1.0, std::numeric_limits<double>::quiet_NaN()}), NonFiniteInput);
    CHECK_THROWS_AS(AlgebraElement(d, {1.0}), DimensionMismatch);
}
