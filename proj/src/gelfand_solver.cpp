#include "sylv/gelfand_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace sylv {

namespace {

void check_shapes(const AlgebraMatrix& a, const AlgebraMatrix& b, const AlgebraMatrix& c)
{
    if (!a.is_square() || !b.is_square())
        throw DimensionMismatch("solve: A and B must be square");
    if (c.rows() != a.rows() || c.cols() != b.rows())
        throw DimensionMismatch("solve: C is " + std::to_string(c.rows()) + "x" + std::to_string(c.cols()) +
                                ", expected " + std::to_string(a.rows()) + "x" + std::to_string(b.rows()));
    if (!(a.descriptor() == b.descriptor()) || !(a.descriptor() == c.descriptor()))
        throw DescriptorMismatch("solve: A, B and C must share one algebra descriptor");
}

double relative_residual(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                         const ComplexMatrix& x)
{
    const double scale =
        (frobenius_norm(a) + frobenius_norm(b)) * frobenius_norm(x) + frobenius_norm(c);
    const double r = sylvester_residual(a, b, c, x);
    return scale > 0.0 ? r / scale : r;
}

std::string describe_violations(const SeparationReport& report)
{
    std::ostringstream os;
    os << "spectra of A^ and B^ meet: global min gap " << report.global_min_gap;
    if (!report.violating_points.empty()) {
        os << " at grid indices";
        const std::size_t shown = std::min<std::size_t>(report.violating_points.size(), 8);
        for (std::size_t i = 0; i < shown; ++i)
            os << ' ' << report.violating_points[i];
        if (shown < report.violating_points.size())
            os << " ...";
    }
    const auto refined = std::count_if(report.refinement.begin(), report.refinement.end(),
                                       [](const RefinementSample& s) { return s.violating; });
    if (refined > 0)
        os << " and " << refined << " refined off-grid points";
    return os.str();
}

} // namespace

bool SeparationReport::separated() const
{
    return violating_points.empty() &&
           std::none_of(refinement.begin(), refinement.end(), [](const RefinementSample& s) { return s.violating; });
}

double grid_theta(std::size_t j, std::size_t n)
{
    return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
}

std::size_t solve_grid_size(const AlgebraDescriptor& d, const SolveConfig& config)
{
    switch (d.kind) {
    case AlgebraKind::Scalar:
        return 1;
    case AlgebraKind::SampledCK:
        if (config.grid_size && *config.grid_size != d.grid_size)
            throw DescriptorMismatch("solve: a SampledCK problem is always solved on its " +
                                     std::to_string(d.grid_size) + " points");
        return d.grid_size;
    case AlgebraKind::Wiener:
        break;
    }
    if (config.grid_size) {
        if (*config.grid_size == 0)
            throw InsufficientGrid("solve: grid size must be positive");
        return *config.grid_size;
    }
    return next_power_of_two(4 * d.bandwidth + 1);
}

std::size_t solve_bandwidth(std::size_t grid_size, const SolveConfig& config)
{
    return config.bandwidth.value_or(grid_size / 4);
}

ComplexMatrix transform_at(const AlgebraMatrix& m, std::size_t j, std::size_t n)
{
    switch (m.descriptor().kind) {
    case AlgebraKind::Wiener:
        return gelfand_matrix_at(m, grid_theta(j, n));
    case AlgebraKind::Scalar:
    case AlgebraKind::SampledCK:
        break;
    }
    return gelfand_matrix(m, j);
}

SeparationReport certify_separation(const AlgebraMatrix& a, const AlgebraMatrix& b, const SolveConfig& config)
{
    if (!a.is_square() || !b.is_square())
        throw DimensionMismatch("certify_separation: A and B must be square");
    if (!(a.descriptor() == b.descriptor()))
        throw DescriptorMismatch("certify_separation: A and B must share one algebra descriptor");

    const std::size_t n = solve_grid_size(a.descriptor(), config);
    auto gap_at = [&](const ComplexMatrix& ah, const ComplexMatrix& bh, std::optional<std::size_t> index) {
        try {
            ScalarSeparation sep = spectral_separation(ah, bh, config.scalar);
            const double tol = config.gap_tol.value_or(default_gap_tol(ah, bh));
            return std::pair{sep, sep.min_gap <= tol};
        } catch (const ConvergenceFailure& e) {
            throw ConvergenceFailure(std::string("certify_separation: ") + e.what(), index);
        }
    };

    SeparationReport report;
    report.global_min_gap = std::numeric_limits<double>::infinity();
    report.per_point.reserve(n);
    std::size_t argmin = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const auto [sep, violating] = gap_at(transform_at(a, j, n), transform_at(b, j, n), j);
        const double theta = a.descriptor().kind == AlgebraKind::Wiener ? grid_theta(j, n) : 0.0;
        report.per_point.push_back({j, theta, sep.min_gap, sep.witness_a, sep.witness_b});
        if (violating)
            report.violating_points.push_back(j);
        if (sep.min_gap < report.global_min_gap) {
            report.global_min_gap = sep.min_gap;
            argmin = j;
        }
    }

    if (a.descriptor().kind == AlgebraKind::Wiener && config.refine_levels > 0 && n > 0) {
        double center = grid_theta(argmin, n);
        double step = grid_theta(1, n);
        for (std::size_t level = 1; level <= config.refine_levels; ++level) {
            step /= 2.0;
            double best_theta = center;
            double best_gap = report.global_min_gap;
            for (const double theta : {center - step, center + step}) {
                const auto [sep, violating] =
                    gap_at(gelfand_matrix_at(a, theta), gelfand_matrix_at(b, theta), std::nullopt);
                report.refinement.push_back({level, theta, sep.min_gap, sep.witness_a, sep.witness_b, violating});
                if (sep.min_gap < best_gap) {
                    best_gap = sep.min_gap;
                    best_theta = theta;
                }
            }
            report.global_min_gap = best_gap;
            center = best_theta;
        }
    }
    return report;
}

PointwiseSolution solve_pointwise(const AlgebraMatrix& a, const AlgebraMatrix& b, const AlgebraMatrix& c,
                                  std::size_t grid_size, const SylvesterConfig& config)
{
    check_shapes(a, b, c);
    PointwiseSolution ps;
    ps.kind = a.descriptor().kind;
    ps.grid_size = grid_size;
    ps.samples.reserve(grid_size);
    for (std::size_t j = 0; j < grid_size; ++j) {
        const ComplexMatrix ah = transform_at(a, j, grid_size);
        const ComplexMatrix bh = transform_at(b, j, grid_size);
        const ComplexMatrix ch = transform_at(c, j, grid_size);
        try {
            ComplexMatrix f = solve_bartels_stewart(ah, bh, ch, config);
            ps.max_relative_residual = std::max(ps.max_relative_residual, relative_residual(ah, bh, ch, f));
            ps.samples.push_back(std::move(f));
        } catch (const SpectraOverlap& e) {
            throw SpectraOverlap(e.what(), j);
        } catch (const ConvergenceFailure& e) {
            throw ConvergenceFailure(e.what(), j);
        }
    }
    return ps;
}

Reconstruction reconstruct(const PointwiseSolution& ps, std::size_t target_bandwidth)
{
    if (ps.samples.empty())
        throw InsufficientGrid("reconstruct: no samples");
    const std::size_t rows = ps.samples.front().rows();
    const std::size_t cols = ps.samples.front().cols();
    const std::size_t n = ps.samples.size();

    switch (ps.kind) {
    case AlgebraKind::Scalar:
        return {AlgebraMatrix::constant(ps.samples.front(), AlgebraDescriptor::scalar()), 0.0};
    case AlgebraKind::SampledCK: {
        const AlgebraDescriptor d = AlgebraDescriptor::sampled(n);
        AlgebraMatrix x(rows, cols, d);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                std::vector<Complex> v(n);
                for (std::size_t p = 0; p < n; ++p)
                    v[p] = ps.samples[p](i, j);
                x.set(i, j, AlgebraElement(d, std::move(v)));
            }
        return {std::move(x), 0.0};
    }
    case AlgebraKind::Wiener:
        break;
    }

    if (n < 2 * target_bandwidth + 1)
        throw InsufficientGrid("reconstruct: " + std::to_string(n) + " grid points cannot resolve bandwidth " +
                               std::to_string(target_bandwidth));
    const AlgebraDescriptor d = AlgebraDescriptor::wiener(n, target_bandwidth);
    Reconstruction out{AlgebraMatrix(rows, cols, d), 0.0};
    std::vector<Complex> samples(n);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            for (std::size_t p = 0; p < n; ++p)
                samples[p] = ps.samples[p](i, j);
            const std::vector<Complex> raw = inverse_dft(samples);
            AlgebraElement e(d);
            for (std::size_t k = 0; k < n; ++k) {
                const long f = signed_frequency(k, n);
                // f = n/2 for even n always lies outside the band since n >= 2W + 1
                if (static_cast<std::size_t>(std::labs(f)) <= target_bandwidth)
                    e.set_coefficient(static_cast<int>(f), raw[k]);
                else
                    out.tail_mass += std::abs(raw[k]);
            }
            out.x.set(i, j, std::move(e));
        }
    return out;
}

SylvesterSolution solve(const AlgebraMatrix& a, const AlgebraMatrix& b, const AlgebraMatrix& c,
                        const SolveConfig& config)
{
    check_shapes(a, b, c);
    const std::size_t n = solve_grid_size(a.descriptor(), config);
    const std::size_t w = a.descriptor().kind == AlgebraKind::Wiener ? solve_bandwidth(n, config) : 0;

    SylvesterSolution out;
    out.grid_size = n;
    out.bandwidth = w;
    out.report = certify_separation(a, b, config);
    if (!out.report.separated())
        throw SeparationViolated("solve: " + describe_violations(out.report), out.report);

    PointwiseSolution ps;
    if (a.descriptor().kind == AlgebraKind::Scalar) {
        // one-point maximal ideal space: this is exactly the complex solve
        const ComplexMatrix ah = gelfand_matrix(a, 0), bh = gelfand_matrix(b, 0), ch = gelfand_matrix(c, 0);
        ComplexMatrix x = solve_bartels_stewart(ah, bh, ch, config.scalar);
        ps.kind = AlgebraKind::Scalar;
        ps.grid_size = 1;
        ps.max_relative_residual = relative_residual(ah, bh, ch, x);
        ps.samples.push_back(std::move(x));
    } else {
        ps = solve_pointwise(a, b, c, n, config.scalar);
    }
    out.max_pointwise_residual = ps.max_relative_residual;

    if (config.crosscheck_kron) {
        std::mt19937_64 rng(0xc0ffee);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        double worst = 0.0;
        for (int t = 0; t < 3; ++t) {
            const std::size_t j = pick(rng);
            const ComplexMatrix xk =
                solve_kron(transform_at(a, j, n), transform_at(b, j, n), transform_at(c, j, n), config.scalar);
            const double scale = std::max(1.0, max_abs(xk));
            worst = std::max(worst, max_abs(xk - ps.samples[j]) / scale);
        }
        out.kron_discrepancy = worst;
    }

    Reconstruction rec = reconstruct(ps, w);
    out.x = std::move(rec.x);
    out.tail_mass = rec.tail_mass;
    const ResidualNorms r = algebra_residual(a, b, c, out.x);
    out.residual_wiener = r.wiener;
    out.residual_sup = r.sup;
    return out;
}

double uniqueness_check(const AlgebraMatrix& a, const AlgebraMatrix& b, const AlgebraMatrix& x1,
                        const AlgebraMatrix& x2, const AlgebraMatrix& c)
{
    if (x1.rows() != x2.rows() || x1.cols() != x2.cols() || x1.rows() != a.rows() || x1.cols() != b.rows() ||
        c.rows() != a.rows() || c.cols() != b.rows())
        throw DimensionMismatch("uniqueness_check: inconsistent shapes");
    const AlgebraDescriptor ds[] = {a.descriptor(), b.descriptor(), c.descriptor(), x1.descriptor(), x2.descriptor()};
    const AlgebraDescriptor d = common_descriptor(ds, 0);
    const std::size_t n = d.grid_size;
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        worst = std::max(worst, frobenius_norm(transform_at(x1, j, n) - transform_at(x2, j, n)));
    return worst;
}

} // namespace sylv
