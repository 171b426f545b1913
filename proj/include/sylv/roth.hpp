#pragma once

// Roth's removal rule over an algebra: [[A, C], [0, B]] is similar to
// [[A, 0], [0, B]] through S = [[I, X], [0, I]] whenever AX - XB = C.

#include "sylv/gelfand_solver.hpp"

#include <vector>

namespace sylv {

/// Block upper triangular matrix with square diagonal blocks of sizes dims.
class BlockTriangular {
public:
    BlockTriangular(std::vector<std::size_t> dims, const AlgebraDescriptor& descriptor);

    /// Reads the blocks on and above the diagonal of m; entries below are ignored.
    static BlockTriangular from_matrix(const AlgebraMatrix& m, std::vector<std::size_t> dims);

    std::size_t block_count() const noexcept { return dims_.size(); }
    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    std::size_t total_dim() const noexcept { return offsets_.back(); }
    std::size_t offset(std::size_t i) const { return offsets_.at(i); }
    const AlgebraDescriptor& descriptor() const noexcept { return descriptor_; }

    /// Requires i <= j.
    const AlgebraMatrix& block(std::size_t i, std::size_t j) const;
    void set_block(std::size_t i, std::size_t j, AlgebraMatrix m);

    AlgebraMatrix assemble() const;
    /// Same diagonal blocks, zero couplings.
    BlockTriangular diagonal_part() const;

private:
    std::size_t index(std::size_t i, std::size_t j) const;

    std::vector<std::size_t> dims_;
    std::vector<std::size_t> offsets_;
    AlgebraDescriptor descriptor_;
    std::vector<AlgebraMatrix> blocks_;
};

struct SimilarityCertificate {
    AlgebraMatrix s;
    AlgebraMatrix s_inv;
    /// max entry sup norm of S T S^-1 - T_diag
    double residual = 0.0;
    /// max entry sup norm of S S^-1 - I
    double inverse_residual = 0.0;
    /// 1e-8 * max(1, max entry sup norm of T)
    double tolerance = 0.0;

    bool certified() const { return residual <= tolerance && inverse_residual <= tolerance; }
};

struct Similarity {
    AlgebraMatrix s;
    AlgebraMatrix s_inv;
};

/// S = [[I_n, X], [0, I_m]] and S^-1 = [[I_n, -X], [0, I_m]].
Similarity similarity_from_solution(const AlgebraMatrix& x);

/// Top-right n x m block of S.
AlgebraMatrix extract_solution(const AlgebraMatrix& s, std::size_t n, std::size_t m);

/// [[A, C], [0, B]]
AlgebraMatrix upper_block_matrix(const AlgebraMatrix& a, const AlgebraMatrix& b, const AlgebraMatrix& c);

SimilarityCertificate verify_similarity(const AlgebraMatrix& s, const AlgebraMatrix& s_inv,
                                        const AlgebraMatrix& t_upper, const AlgebraMatrix& t_diag);

struct RothDecision {
    SimilarityCertificate certificate;
    SylvesterSolution solution;
};

/// Separation check, Sylvester solve, explicit similarity. Throws SeparationViolated
/// when the spectra meet at some grid point.
RothDecision roth_decide(const AlgebraMatrix& a, const AlgebraMatrix& b, const AlgebraMatrix& c,
                         const SolveConfig& config = {});

/// Raised by block_diagonalize; names the diagonal blocks whose spectra meet.
class BlockSeparationViolated : public SeparationViolated {
public:
    BlockSeparationViolated(const std::string& what, SeparationReport report, std::size_t block_i,
                            std::size_t block_j)
        : SeparationViolated(what, std::move(report)), block_i_(block_i), block_j_(block_j) {}

    std::size_t block_i() const noexcept { return block_i_; }
    std::size_t block_j() const noexcept { return block_j_; }

private:
    std::size_t block_i_;
    std::size_t block_j_;
};

struct BlockDiagonalization {
    AlgebraMatrix s_total;
    AlgebraMatrix s_total_inv;
    BlockTriangular d;
    SimilarityCertificate certificate;
    /// One solve per stage, last coupling row first.
    std::vector<SylvesterSolution> stages;
};

/// Removes the couplings from the bottom up: stage i solves
/// A_ii X - X diag(A_{i+1,i+1}, ..., A_nn) = (current block row i right of the diagonal),
/// so n - 1 Sylvester solves suffice.
BlockDiagonalization block_diagonalize(const BlockTriangular& t, const SolveConfig& config = {});

} // namespace sylv
