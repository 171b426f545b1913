#pragma once

// Sylvester equation AX - XB = C over a Banach algebra, solved through the
// Gelfand transform: check that the spectra of A^(phi) and B^(phi) stay apart on
// a grid of the maximal ideal space, solve the complex equation at every grid
// point, and rebuild an algebra element from the samples.
//
// A finite grid does not prove separation on the whole maximal ideal space; the
// report carries the smallest gap seen and the refinement history, and the
// caller decides whether that is convincing.

#include "sylv/algebra.hpp"
#include "sylv/errors.hpp"
#include "sylv/scalar_sylvester.hpp"

#include <optional>
#include <vector>

namespace sylv {

/// Eigenvalue gap at one point of the maximal ideal space.
struct GapSample {
    std::size_t phi_index = 0;
    double theta = 0.0;
    double min_gap = 0.0;
    Complex witness_a;
    Complex witness_b;
};

/// Extra point examined while zooming in on the grid minimizer.
struct RefinementSample {
    std::size_t level = 0;
    double theta = 0.0;
    double min_gap = 0.0;
    Complex witness_a;
    Complex witness_b;
    bool violating = false;
};

struct SeparationReport {
    /// One row per grid point, in grid order.
    std::vector<GapSample> per_point;
    std::vector<RefinementSample> refinement;
    double global_min_gap = 0.0;
    std::vector<std::size_t> violating_points;

    bool separated() const;
};

class SeparationViolated : public Error {
public:
    SeparationViolated(const std::string& what, SeparationReport report)
        : Error(what), report_(std::move(report)) {}

    const SeparationReport& report() const noexcept { return report_; }

private:
    SeparationReport report_;
};

struct SolveConfig {
    /// Wiener grid size; defaults to the next power of two >= 4 * input bandwidth + 1.
    std::optional<std::size_t> grid_size;
    /// Bandwidth of the reconstructed solution; defaults to grid_size / 4.
    std::optional<std::size_t> bandwidth;
    std::size_t refine_levels = 0;
    /// Absolute gap threshold; defaults to 1e-8 * (1 + |A^|_F + |B^|_F) per point.
    std::optional<double> gap_tol;
    /// Re-solve three grid points with the Kronecker solver and record the discrepancy.
    bool crosscheck_kron = false;
    SylvesterConfig scalar;
};

/// Number of evaluation points the solver uses for this descriptor and configuration.
std::size_t solve_grid_size(const AlgebraDescriptor& d, const SolveConfig& config);
std::size_t solve_bandwidth(std::size_t grid_size, const SolveConfig& config);

/// Angle of grid point j out of n.
double grid_theta(std::size_t j, std::size_t n);

/// Gelfand transform of m at point j of an n-point solve grid.
ComplexMatrix transform_at(const AlgebraMatrix& m, std::size_t j, std::size_t n);

SeparationReport certify_separation(const AlgebraMatrix& a, const AlgebraMatrix& b, const SolveConfig& config = {});

struct PointwiseSolution {
    AlgebraKind kind = AlgebraKind::Scalar;
    std::size_t grid_size = 0;
    std::vector<ComplexMatrix> samples;
    /// max over points of |AF - FB - C|_F / ((|A|_F + |B|_F) |F|_F + |C|_F)
    double max_relative_residual = 0.0;
};

/// Bartels-Stewart at every point of an n-point grid.
PointwiseSolution solve_pointwise(const AlgebraMatrix& a, const AlgebraMatrix& b, const AlgebraMatrix& c,
                                  std::size_t grid_size, const SylvesterConfig& config = {});

struct Reconstruction {
    AlgebraMatrix x;
    /// Sum over entries of the raw DFT coefficient mass outside |k| <= bandwidth.
    double tail_mass = 0.0;
};

Reconstruction reconstruct(const PointwiseSolution& ps, std::size_t target_bandwidth);

struct SylvesterSolution {
    AlgebraMatrix x;
    double residual_wiener = 0.0;
    double residual_sup = 0.0;
    double tail_mass = 0.0;
    SeparationReport report;
    std::size_t grid_size = 0;
    std::size_t bandwidth = 0;
    double max_pointwise_residual = 0.0;
    /// Largest entrywise relative difference against the Kronecker solver, when requested.
    std::optional<double> kron_discrepancy;
};

/// Throws SeparationViolated when any checked point has overlapping spectra.
SylvesterSolution solve(const AlgebraMatrix& a, const AlgebraMatrix& b, const AlgebraMatrix& c,
                        const SolveConfig& config = {});

/// max over the grid of |X1^(phi) - X2^(phi)|_F.
double uniqueness_check(const AlgebraMatrix& a, const AlgebraMatrix& b, const AlgebraMatrix& x1,
                        const AlgebraMatrix& x2, const AlgebraMatrix& c);

} // namespace sylv
