#include "sylv/roth.hpp"

#include <algorithm>
#include <numeric>

namespace sylv {

// ---------------------------------------------------------------------------
// BlockTriangular

BlockTriangular::BlockTriangular(std::vector<std::size_t> dims, const AlgebraDescriptor& descriptor)
    : dims_(std::move(dims)), offsets_(dims_.size() + 1, 0), descriptor_(descriptor)
{
    if (dims_.empty())
        throw DimensionMismatch("BlockTriangular: at least one block required");
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (dims_[i] == 0)
            throw DimensionMismatch("BlockTriangular: block sizes must be positive");
        offsets_[i + 1] = offsets_[i] + dims_[i];
    }
    const std::size_t n = dims_.size();
    blocks_.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            blocks_.emplace_back(i <= j ? AlgebraMatrix(dims_[i], dims_[j], descriptor_) : AlgebraMatrix());
}

BlockTriangular BlockTriangular::from_matrix(const AlgebraMatrix& m, std::vector<std::size_t> dims)
{
    BlockTriangular t(std::move(dims), m.descriptor());
    if (m.rows() != t.total_dim() || m.cols() != t.total_dim())
        throw ShapeMismatch("BlockTriangular::from_matrix: matrix is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", block sizes add up to " + std::to_string(t.total_dim()));
    for (std::size_t i = 0; i < t.block_count(); ++i)
        for (std::size_t j = i; j < t.block_count(); ++j)
            t.set_block(i, j, m.block(t.offset(i), t.offset(j), t.dims_[i], t.dims_[j]));
    return t;
}

std::size_t BlockTriangular::index(std::size_t i, std::size_t j) const
{
    if (i > j || j >= dims_.size())
        throw IndexOutOfRange("BlockTriangular: block (" + std::to_string(i) + ", " + std::to_string(j) +
                              ") is not on or above the diagonal");
    return i * dims_.size() + j;
}

const AlgebraMatrix& BlockTriangular::block(std::size_t i, std::size_t j) const
{
    return blocks_[index(i, j)];
}

void BlockTriangular::set_block(std::size_t i, std::size_t j, AlgebraMatrix m)
{
    const std::size_t k = index(i, j);
    if (m.rows() != dims_[i] || m.cols() != dims_[j])
        throw ShapeMismatch("BlockTriangular::set_block: block (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") must be " + std::to_string(dims_[i]) + "x" + std::to_string(dims_[j]));
    if (!(m.descriptor() == descriptor_))
        throw DescriptorMismatch("BlockTriangular::set_block: descriptor differs");
    blocks_[k] = std::move(m);
}

AlgebraMatrix BlockTriangular::assemble() const
{
    AlgebraMatrix m(total_dim(), total_dim(), descriptor_);
    for (std::size_t i = 0; i < block_count(); ++i)
        for (std::size_t j = i; j < block_count(); ++j)
            m.set_block(offsets_[i], offsets_[j], block(i, j));
    return m;
}

BlockTriangular BlockTriangular::diagonal_part() const
{
    BlockTriangular d(dims_, descriptor_);
    for (std::size_t i = 0; i < block_count(); ++i)
        d.set_block(i, i, block(i, i));
    return d;
}

// ---------------------------------------------------------------------------
// Two-block similarity

Similarity similarity_from_solution(const AlgebraMatrix& x)
{
    const std::size_t n = x.rows(), m = x.cols();
    const AlgebraDescriptor& d = x.descriptor();
    Similarity out{AlgebraMatrix::identity(n + m, d), AlgebraMatrix::identity(n + m, d)};
    out.s.set_block(0, n, x);
    out.s_inv.set_block(0, n, mat_scale(x, -1.0));
    return out;
}

AlgebraMatrix extract_solution(const AlgebraMatrix& s, std::size_t n, std::size_t m)
{
    if (s.rows() != n + m || s.cols() != n + m)
        throw ShapeMismatch("extract_solution: similarity is not (n+m)x(n+m)");
    return s.block(0, n, n, m);
}

AlgebraMatrix upper_block_matrix(const AlgebraMatrix& a, const AlgebraMatrix& b, const AlgebraMatrix& c)
{
    if (!a.is_square() || !b.is_square() || c.rows() != a.rows() || c.cols() != b.rows())
        throw ShapeMismatch("upper_block_matrix: inconsistent block shapes");
    const std::size_t n = a.rows(), m = b.rows();
    AlgebraMatrix t(n + m, n + m, a.descriptor());
    t.set_block(0, 0, a);
    t.set_block(0, n, c);
    t.set_block(n, n, b);
    return t;
}

SimilarityCertificate verify_similarity(const AlgebraMatrix& s, const AlgebraMatrix& s_inv,
                                        const AlgebraMatrix& t_upper, const AlgebraMatrix& t_diag)
{
    const std::size_t dim = t_upper.rows();
    for (const AlgebraMatrix* m : {&s, &s_inv, &t_upper, &t_diag})
        if (m->rows() != dim || m->cols() != dim)
            throw ShapeMismatch("verify_similarity: all four matrices must be " + std::to_string(dim) + "x" +
                                std::to_string(dim));

    const std::size_t w = std::max(s.effective_bandwidth() + t_upper.effective_bandwidth() + s_inv.effective_bandwidth(),
                                   t_diag.effective_bandwidth());
    const AlgebraDescriptor ds[] = {s.descriptor(), s_inv.descriptor(), t_upper.descriptor(), t_diag.descriptor()};
    const AlgebraDescriptor d = common_descriptor(ds, w);
    const AlgebraMatrix ws = widen(s, d), wsi = widen(s_inv, d);

    SimilarityCertificate cert;
    cert.s = s;
    cert.s_inv = s_inv;
    cert.residual = max_sup_norm(mat_sub(mat_mul(mat_mul(ws, widen(t_upper, d)), wsi), widen(t_diag, d)));
    cert.inverse_residual = max_sup_norm(mat_sub(mat_mul(ws, wsi), AlgebraMatrix::identity(dim, d)));
    cert.tolerance = 1e-8 * std::max(1.0, max_sup_norm(t_upper));
    return cert;
}

RothDecision roth_decide(const AlgebraMatrix& a, const AlgebraMatrix& b, const AlgebraMatrix& c,
                         const SolveConfig& config)
{
    RothDecision out;
    out.solution = solve(a, b, c, config);
    Similarity sim = similarity_from_solution(out.solution.x);
    const AlgebraMatrix zero(c.rows(), c.cols(), c.descriptor());
    out.certificate =
        verify_similarity(sim.s, sim.s_inv, upper_block_matrix(a, b, c), upper_block_matrix(a, b, zero));
    return out;
}

// ---------------------------------------------------------------------------
// Repeated removal

BlockDiagonalization block_diagonalize(const BlockTriangular& t, const SolveConfig& config)
{
    const std::size_t nb = t.block_count();
    const AlgebraDescriptor& base = t.descriptor();
    const bool wiener = base.kind == AlgebraKind::Wiener;
    const std::size_t grid = solve_grid_size(base, config);
    const std::size_t wx = wiener ? solve_bandwidth(grid, config) : 0;

    SolveConfig stage_config = config;
    if (wiener) {
        stage_config.grid_size = grid;
        stage_config.bandwidth = wx;
    }

    auto pair_violation = [&](std::size_t i, std::size_t j) -> std::optional<SeparationReport> {
        SeparationReport r = certify_separation(t.block(i, i), t.block(j, j), stage_config);
        if (r.separated())
            return std::nullopt;
        return r;
    };
    auto throw_pair = [](std::size_t i, std::size_t j, SeparationReport r) {
        std::string where = r.violating_points.empty() ? std::string("a refined off-grid point")
                                                       : "grid index " + std::to_string(r.violating_points.front());
        throw BlockSeparationViolated("block_diagonalize: spectra of diagonal blocks " + std::to_string(i) + " and " +
                                          std::to_string(j) + " meet at " + where,
                                      std::move(r), i, j);
    };

    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = i + 1; j < nb; ++j)
            if (auto r = pair_violation(i, j))
                throw_pair(i, j, std::move(*r));

    // Every stage adds at most 2 * wx to the band of T and wx to the band of S.
    const AlgebraMatrix t_full = t.assemble();
    AlgebraDescriptor work = base;
    if (wiener) {
        const std::size_t cap = t_full.effective_bandwidth() + 2 * (nb - 1) * wx;
        const AlgebraDescriptor ds[] = {base, AlgebraDescriptor::wiener(grid, wx)};
        work = common_descriptor(ds, cap);
    }

    const std::size_t dim = t.total_dim();
    BlockDiagonalization out{AlgebraMatrix::identity(dim, work), AlgebraMatrix::identity(dim, work),
                             t.diagonal_part(), SimilarityCertificate{}, {}};
    AlgebraMatrix current = widen(t_full, work);

    for (std::size_t i = nb - 1; i-- > 0;) {
        const std::size_t r0 = t.offset(i), di = t.dims()[i];
        const std::size_t r1 = t.offset(i + 1), rest = dim - r1;
        const AlgebraMatrix a = current.block(r0, r0, di, di);
        const AlgebraMatrix b = current.block(r1, r1, rest, rest);
        const AlgebraMatrix c = current.block(r0, r1, di, rest);

        SylvesterSolution sol;
        try {
            sol = solve(a, b, c, stage_config);
        } catch (const SeparationViolated& e) {
            for (std::size_t j = i + 1; j < nb; ++j)
                if (auto r = pair_violation(i, j))
                    throw_pair(i, j, std::move(*r));
            throw_pair(i, i + 1, e.report());
        }

        const AlgebraMatrix x = widen(sol.x, work);
        AlgebraMatrix s = AlgebraMatrix::identity(dim, work);
        AlgebraMatrix s_inv = AlgebraMatrix::identity(dim, work);
        s.set_block(r0, r1, x);
        s_inv.set_block(r0, r1, mat_scale(x, -1.0));

        current = mat_mul(mat_mul(s, current), s_inv);
        out.s_total = mat_mul(s, out.s_total);
        out.s_total_inv = mat_mul(out.s_total_inv, s_inv);
        out.stages.push_back(std::move(sol));
    }

    out.certificate = verify_similarity(out.s_total, out.s_total_inv, t_full, out.d.assemble());
    return out;
}

} // namespace sylv
