#include "sylv/algebra.hpp"

#include "sylv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace sylv {

namespace {

void require_same(const AlgebraDescriptor& x, const AlgebraDescriptor& y, const char* where)
{
    if (!(x == y))
        throw DescriptorMismatch(std::string(where) + ": operands live in different algebras (" + to_string(x.kind) +
                                 " N=" + std::to_string(x.grid_size) + " W=" + std::to_string(x.bandwidth) + " vs " +
                                 to_string(y.kind) + " N=" + std::to_string(y.grid_size) +
                                 " W=" + std::to_string(y.bandwidth) + ")");
}

double grid_angle(std::size_t j, std::size_t n)
{
    return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
}

} // namespace

const char* to_string(AlgebraKind kind)
{
    switch (kind) {
    case AlgebraKind::Scalar:
        return "Scalar";
    case AlgebraKind::Wiener:
        return "Wiener";
    case AlgebraKind::SampledCK:
        return "SampledCK";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Descriptor

AlgebraDescriptor AlgebraDescriptor::wiener(std::size_t grid_size, std::size_t bandwidth)
{
    AlgebraDescriptor d{AlgebraKind::Wiener, grid_size, bandwidth};
    d.validate();
    return d;
}

AlgebraDescriptor AlgebraDescriptor::sampled(std::size_t points)
{
    AlgebraDescriptor d{AlgebraKind::SampledCK, points, 0};
    d.validate();
    return d;
}

std::size_t AlgebraDescriptor::payload_size() const
{
    switch (kind) {
    case AlgebraKind::Scalar:
        return 1;
    case AlgebraKind::Wiener:
        return 2 * bandwidth + 1;
    case AlgebraKind::SampledCK:
        return grid_size;
    }
    return 0;
}

void AlgebraDescriptor::validate() const
{
    switch (kind) {
    case AlgebraKind::Scalar:
        if (grid_size != 1 || bandwidth != 0)
            throw Error("Scalar descriptor must have grid_size 1 and bandwidth 0");
        break;
    case AlgebraKind::Wiener:
        if (grid_size < 2 * bandwidth + 1)
            throw InsufficientGrid("Wiener descriptor: grid_size " + std::to_string(grid_size) +
                                   " < 2*bandwidth+1 = " + std::to_string(2 * bandwidth + 1));
        break;
    case AlgebraKind::SampledCK:
        if (grid_size == 0)
            throw Error("SampledCK descriptor needs at least one point");
        if (bandwidth != 0)
            throw Error("SampledCK descriptor has no bandwidth");
        break;
    }
}

std::size_t next_power_of_two(std::size_t n)
{
    std::size_t p = 1;
    while (p < n)
        p *= 2;
    return p;
}

// ---------------------------------------------------------------------------
// Element

AlgebraElement::AlgebraElement(const AlgebraDescriptor& descriptor)
    : descriptor_(descriptor), values_(descriptor.payload_size(), Complex(0.0))
{
    descriptor_.validate();
}

AlgebraElement::AlgebraElement(const AlgebraDescriptor& descriptor, std::vector<Complex> values)
    : descriptor_(descriptor), values_(std::move(values))
{
    descriptor_.validate();
    if (values_.size() != descriptor_.payload_size())
        throw DimensionMismatch("AlgebraElement: payload has " + std::to_string(values_.size()) +
                                " values, descriptor expects " + std::to_string(descriptor_.payload_size()));
    if (!all_finite())
        throw NonFiniteInput("AlgebraElement: non-finite payload");
}

AlgebraElement AlgebraElement::constant(const AlgebraDescriptor& d, Complex z)
{
    AlgebraElement e(d);
    switch (d.kind) {
    case AlgebraKind::Scalar:
        e.values_[0] = z;
        break;
    case AlgebraKind::Wiener:
        e.values_[d.bandwidth] = z;
        break;
    case AlgebraKind::SampledCK:
        std::fill(e.values_.begin(), e.values_.end(), z);
        break;
    }
    return e;
}

AlgebraElement AlgebraElement::monomial(const AlgebraDescriptor& d, int k, Complex coefficient)
{
    if (d.kind != AlgebraKind::Wiener)
        throw DescriptorMismatch("monomial: only Wiener elements have Laurent coefficients");
    AlgebraElement e(d);
    e.set_coefficient(k, coefficient);
    return e;
}

AlgebraElement AlgebraElement::from_coefficients(const AlgebraDescriptor& d, const std::map<int, Complex>& coefficients)
{
    if (d.kind != AlgebraKind::Wiener)
        throw DescriptorMismatch("from_coefficients: only Wiener elements have Laurent coefficients");
    AlgebraElement e(d);
    for (const auto& [k, c] : coefficients)
        e.set_coefficient(k, c);
    return e;
}

Complex AlgebraElement::coefficient(int k) const
{
    if (descriptor_.kind != AlgebraKind::Wiener)
        throw DescriptorMismatch("coefficient: not a Wiener element");
    const long w = static_cast<long>(descriptor_.bandwidth);
    if (k < -w || k > w)
        return 0.0;
    return values_[static_cast<std::size_t>(k + w)];
}

void AlgebraElement::set_coefficient(int k, Complex value)
{
    if (descriptor_.kind != AlgebraKind::Wiener)
        throw DescriptorMismatch("set_coefficient: not a Wiener element");
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
        throw NonFiniteInput("set_coefficient: non-finite value");
    const long w = static_cast<long>(descriptor_.bandwidth);
    if (k < -w || k > w)
        throw BandwidthOverflow("set_coefficient: index " + std::to_string(k) + " outside band " + std::to_string(w));
    values_[static_cast<std::size_t>(k + w)] = value;
}

Complex AlgebraElement::sample(std::size_t i) const
{
    if (descriptor_.kind != AlgebraKind::SampledCK)
        throw DescriptorMismatch("sample: not a SampledCK element");
    if (i >= values_.size())
        throw IndexOutOfRange("sample: index " + std::to_string(i) + " outside K");
    return values_[i];
}

Complex AlgebraElement::scalar_value() const
{
    if (descriptor_.kind != AlgebraKind::Scalar)
        throw DescriptorMismatch("scalar_value: not a Scalar element");
    return values_[0];
}

std::size_t AlgebraElement::effective_bandwidth() const
{
    if (descriptor_.kind != AlgebraKind::Wiener)
        return 0;
    const std::size_t w = descriptor_.bandwidth;
    for (std::size_t r = w; r > 0; --r)
        if (values_[w + r] != Complex(0.0) || values_[w - r] != Complex(0.0))
            return r;
    return 0;
}

bool AlgebraElement::is_zero() const
{
    return std::all_of(values_.begin(), values_.end(), [](Complex z) { return z == Complex(0.0); });
}

bool AlgebraElement::all_finite() const
{
    return std::all_of(values_.begin(), values_.end(),
                       [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

AlgebraElement alg_add(const AlgebraElement& x, const AlgebraElement& y)
{
    require_same(x.descriptor(), y.descriptor(), "alg_add");
    std::vector<Complex> v(x.values().begin(), x.values().end());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] += y.values()[i];
    return AlgebraElement(x.descriptor(), std::move(v));
}

AlgebraElement alg_sub(const AlgebraElement& x, const AlgebraElement& y)
{
    require_same(x.descriptor(), y.descriptor(), "alg_sub");
    std::vector<Complex> v(x.values().begin(), x.values().end());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] -= y.values()[i];
    return AlgebraElement(x.descriptor(), std::move(v));
}

AlgebraElement alg_scale(const AlgebraElement& x, Complex s)
{
    std::vector<Complex> v(x.values().begin(), x.values().end());
    for (auto& z : v)
        z *= s;
    return AlgebraElement(x.descriptor(), std::move(v));
}

AlgebraElement alg_mul(const AlgebraElement& x, const AlgebraElement& y)
{
    require_same(x.descriptor(), y.descriptor(), "alg_mul");
    const AlgebraDescriptor& d = x.descriptor();
    if (d.kind != AlgebraKind::Wiener) {
        std::vector<Complex> v(x.values().begin(), x.values().end());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] *= y.values()[i];
        return AlgebraElement(d, std::move(v));
    }

    const std::size_t ex = x.effective_bandwidth();
    const std::size_t ey = y.effective_bandwidth();
    if (ex + ey > d.bandwidth)
        throw BandwidthOverflow("alg_mul: product bandwidth " + std::to_string(ex + ey) + " exceeds stored band " +
                                std::to_string(d.bandwidth));
    const long w = static_cast<long>(d.bandwidth);
    std::vector<Complex> v(d.payload_size(), Complex(0.0));
    const auto xs = x.values();
    const auto ys = y.values();
    for (long i = -static_cast<long>(ex); i <= static_cast<long>(ex); ++i) {
        const Complex xi = xs[static_cast<std::size_t>(i + w)];
        if (xi == Complex(0.0))
            continue;
        for (long j = -static_cast<long>(ey); j <= static_cast<long>(ey); ++j)
            v[static_cast<std::size_t>(i + j + w)] += xi * ys[static_cast<std::size_t>(j + w)];
    }
    return AlgebraElement(d, std::move(v));
}

AlgebraElement widen(const AlgebraElement& x, const AlgebraDescriptor& target)
{
    const AlgebraDescriptor& d = x.descriptor();
    if (d == target)
        return x;
    if (d.kind != target.kind)
        throw DescriptorMismatch(std::string("widen: cannot move a ") + to_string(d.kind) + " element into " +
                                 to_string(target.kind));
    if (d.kind == AlgebraKind::SampledCK)
        throw DescriptorMismatch("widen: SampledCK elements on different point sets");
    if (d.kind == AlgebraKind::Scalar)
        return x;
    const std::size_t eb = x.effective_bandwidth();
    if (eb > target.bandwidth)
        throw BandwidthOverflow("widen: element bandwidth " + std::to_string(eb) + " exceeds target " +
                                std::to_string(target.bandwidth));
    AlgebraElement r(target);
    for (long k = -static_cast<long>(eb); k <= static_cast<long>(eb); ++k)
        r.set_coefficient(static_cast<int>(k), x.coefficient(static_cast<int>(k)));
    return r;
}

// ---------------------------------------------------------------------------
// Gelfand transform

Complex gelfand_eval_at(const AlgebraElement& x, double theta)
{
    switch (x.kind()) {
    case AlgebraKind::Scalar:
        return x.values()[0];
    case AlgebraKind::Wiener: {
        const long w = static_cast<long>(x.descriptor().bandwidth);
        const auto c = x.values();
        Complex s = 0.0;
        for (long k = -w; k <= w; ++k) {
            const Complex ck = c[static_cast<std::size_t>(k + w)];
            if (ck != Complex(0.0))
                s += ck * std::polar(1.0, static_cast<double>(k) * theta);
        }
        return s;
    }
    case AlgebraKind::SampledCK:
        break;
    }
    throw DescriptorMismatch("gelfand_eval_at: SampledCK elements are only defined on K");
}

Complex gelfand_eval(const AlgebraElement& x, std::size_t phi_index)
{
    const AlgebraDescriptor& d = x.descriptor();
    if (phi_index >= d.grid_size)
        throw IndexOutOfRange("gelfand_eval: index " + std::to_string(phi_index) + " outside grid of size " +
                              std::to_string(d.grid_size));
    switch (d.kind) {
    case AlgebraKind::Scalar:
        return x.values()[0];
    case AlgebraKind::Wiener:
        return gelfand_eval_at(x, grid_angle(phi_index, d.grid_size));
    case AlgebraKind::SampledCK:
        return x.values()[phi_index];
    }
    return 0.0;
}

std::vector<Complex> inverse_dft(std::span<const Complex> samples)
{
    const std::size_t n = samples.size();
    std::vector<Complex> twiddle(n);
    for (std::size_t q = 0; q < n; ++q)
        twiddle[q] = std::polar(1.0, -grid_angle(q, n));
    std::vector<Complex> d(n, Complex(0.0));
    for (std::size_t k = 0; k < n; ++k) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            s += samples[j] * twiddle[(k * j) % n];
        d[k] = s / static_cast<double>(n);
    }
    return d;
}

long signed_frequency(std::size_t k, std::size_t n)
{
    return 2 * k <= n ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

AlgebraElement from_samples(std::span<const Complex> samples, std::size_t bandwidth)
{
    const std::size_t n = samples.size();
    if (n < 2 * bandwidth + 1)
        throw InsufficientGrid("from_samples: " + std::to_string(n) + " samples cannot resolve bandwidth " +
                               std::to_string(bandwidth));
    const std::vector<Complex> d = inverse_dft(samples);
    AlgebraElement x(AlgebraDescriptor::wiener(n, bandwidth));
    for (std::size_t k = 0; k < n; ++k) {
        const long f = signed_frequency(k, n);
        if (static_cast<std::size_t>(std::labs(f)) <= bandwidth)
            x.set_coefficient(static_cast<int>(f), d[k]);
    }
    return x;
}

double wiener_norm(const AlgebraElement& x)
{
    const auto v = x.values();
    if (x.kind() == AlgebraKind::Wiener) {
        double s = 0.0;
        for (const Complex z : v)
            s += std::abs(z);
        return s;
    }
    double best = 0.0;
    for (const Complex z : v)
        best = std::max(best, std::abs(z));
    return best;
}

double sup_norm(const AlgebraElement& x, std::size_t oversample_factor)
{
    if (oversample_factor == 0)
        throw Error("sup_norm: oversample factor must be at least 1");
    if (x.kind() != AlgebraKind::Wiener)
        return wiener_norm(x);
    const std::size_t m = oversample_factor * x.descriptor().grid_size;
    double best = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        best = std::max(best, std::abs(gelfand_eval_at(x, grid_angle(j, m))));
    return best;
}

// ---------------------------------------------------------------------------
// Matrix

AlgebraMatrix::AlgebraMatrix(std::size_t rows, std::size_t cols, const AlgebraDescriptor& descriptor)
    : rows_(rows), cols_(cols), descriptor_(descriptor), entries_(rows * cols, AlgebraElement(descriptor))
{
}

AlgebraMatrix::AlgebraMatrix(std::size_t rows, std::size_t cols, const AlgebraDescriptor& descriptor,
                             std::vector<AlgebraElement> entries)
    : rows_(rows), cols_(cols), descriptor_(descriptor), entries_(std::move(entries))
{
    descriptor_.validate();
    if (entries_.size() != rows * cols)
        throw DimensionMismatch("AlgebraMatrix: " + std::to_string(entries_.size()) + " entries for a " +
                                std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    for (const auto& e : entries_)
        require_same(e.descriptor(), descriptor_, "AlgebraMatrix");
}

AlgebraMatrix AlgebraMatrix::identity(std::size_t n, const AlgebraDescriptor& d)
{
    AlgebraMatrix m(n, n, d);
    for (std::size_t i = 0; i < n; ++i)
        m.entries_[i * n + i] = AlgebraElement::unit(d);
    return m;
}

AlgebraMatrix AlgebraMatrix::constant(const ComplexMatrix& c0, const AlgebraDescriptor& d)
{
    AlgebraMatrix m(c0.rows(), c0.cols(), d);
    for (std::size_t i = 0; i < c0.rows(); ++i)
        for (std::size_t j = 0; j < c0.cols(); ++j)
            m.entries_[i * c0.cols() + j] = AlgebraElement::constant(d, c0(i, j));
    return m;
}

void AlgebraMatrix::set(std::size_t i, std::size_t j, AlgebraElement value)
{
    if (i >= rows_ || j >= cols_)
        throw IndexOutOfRange("AlgebraMatrix::set: position outside matrix");
    require_same(value.descriptor(), descriptor_, "AlgebraMatrix::set");
    entries_[i * cols_ + j] = std::move(value);
}

AlgebraMatrix AlgebraMatrix::block(std::size_t row, std::size_t col, std::size_t rows, std::size_t cols) const
{
    if (row + rows > rows_ || col + cols > cols_)
        throw DimensionMismatch("AlgebraMatrix::block: block exceeds matrix bounds");
    AlgebraMatrix r(rows, cols, descriptor_);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            r.entries_[i * cols + j] = (*this)(row + i, col + j);
    return r;
}

void AlgebraMatrix::set_block(std::size_t row, std::size_t col, const AlgebraMatrix& m)
{
    if (row + m.rows() > rows_ || col + m.cols() > cols_)
        throw DimensionMismatch("AlgebraMatrix::set_block: block exceeds matrix bounds");
    require_same(m.descriptor(), descriptor_, "AlgebraMatrix::set_block");
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            entries_[(row + i) * cols_ + col + j] = m(i, j);
}

std::size_t AlgebraMatrix::effective_bandwidth() const
{
    std::size_t w = 0;
    for (const auto& e : entries_)
        w = std::max(w, e.effective_bandwidth());
    return w;
}

bool AlgebraMatrix::is_zero() const
{
    return std::all_of(entries_.begin(), entries_.end(), [](const AlgebraElement& e) { return e.is_zero(); });
}

namespace {

void require_same_shape(const AlgebraMatrix& x, const AlgebraMatrix& y, const char* where)
{
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw DimensionMismatch(std::string(where) + ": shapes differ");
    require_same(x.descriptor(), y.descriptor(), where);
}

template <typename Op>
AlgebraMatrix entrywise(const AlgebraMatrix& x, const AlgebraMatrix& y, Op op)
{
    std::vector<AlgebraElement> e;
    e.reserve(x.rows() * x.cols());
    for (std::size_t k = 0; k < x.entries().size(); ++k)
        e.push_back(op(x.entries()[k], y.entries()[k]));
    return AlgebraMatrix(x.rows(), x.cols(), x.descriptor(), std::move(e));
}

} // namespace

AlgebraMatrix mat_add(const AlgebraMatrix& x, const AlgebraMatrix& y)
{
    require_same_shape(x, y, "mat_add");
    return entrywise(x, y, alg_add);
}

AlgebraMatrix mat_sub(const AlgebraMatrix& x, const AlgebraMatrix& y)
{
    require_same_shape(x, y, "mat_sub");
    return entrywise(x, y, alg_sub);
}

AlgebraMatrix mat_mul(const AlgebraMatrix& x, const AlgebraMatrix& y)
{
    if (x.cols() != y.rows())
        throw DimensionMismatch("mat_mul: inner dimensions differ");
    require_same(x.descriptor(), y.descriptor(), "mat_mul");
    AlgebraMatrix r(x.rows(), y.cols(), x.descriptor());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < y.cols(); ++j) {
            AlgebraElement s(x.descriptor());
            for (std::size_t k = 0; k < x.cols(); ++k) {
                if (x(i, k).is_zero() || y(k, j).is_zero())
                    continue;
                s = alg_add(s, alg_mul(x(i, k), y(k, j)));
            }
            r.set(i, j, std::move(s));
        }
    return r;
}

AlgebraMatrix mat_scale(const AlgebraMatrix& x, Complex s)
{
    std::vector<AlgebraElement> e;
    e.reserve(x.entries().size());
    for (const auto& v : x.entries())
        e.push_back(alg_scale(v, s));
    return AlgebraMatrix(x.rows(), x.cols(), x.descriptor(), std::move(e));
}

AlgebraMatrix widen(const AlgebraMatrix& m, const AlgebraDescriptor& target)
{
    if (m.descriptor() == target)
        return m;
    std::vector<AlgebraElement> e;
    e.reserve(m.entries().size());
    for (const auto& v : m.entries())
        e.push_back(widen(v, target));
    return AlgebraMatrix(m.rows(), m.cols(), target, std::move(e));
}

ComplexMatrix gelfand_matrix(const AlgebraMatrix& m, std::size_t phi_index)
{
    ComplexMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = gelfand_eval(m(i, j), phi_index);
    return r;
}

ComplexMatrix gelfand_matrix_at(const AlgebraMatrix& m, double theta)
{
    ComplexMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = gelfand_eval_at(m(i, j), theta);
    return r;
}

AlgebraDescriptor common_descriptor(std::span<const AlgebraDescriptor> descriptors, std::size_t bandwidth)
{
    if (descriptors.empty())
        throw Error("common_descriptor: no descriptors");
    const AlgebraDescriptor& first = descriptors.front();
    std::size_t grid = 0;
    for (const auto& d : descriptors) {
        if (d.kind != first.kind)
            throw DescriptorMismatch(std::string("common_descriptor: mixes ") + to_string(first.kind) + " and " +
                                     to_string(d.kind));
        if (d.kind == AlgebraKind::SampledCK && d.grid_size != first.grid_size)
            throw DescriptorMismatch("common_descriptor: SampledCK elements on different point sets");
        grid = std::max(grid, d.grid_size);
    }
    switch (first.kind) {
    case AlgebraKind::Scalar:
        return AlgebraDescriptor::scalar();
    case AlgebraKind::SampledCK:
        return first;
    case AlgebraKind::Wiener:
        break;
    }
    if (grid < 2 * bandwidth + 1)
        grid = next_power_of_two(2 * bandwidth + 1);
    return AlgebraDescriptor::wiener(grid, bandwidth);
}

double max_sup_norm(const AlgebraMatrix& m, std::size_t oversample_factor)
{
    double best = 0.0;
    for (const auto& e : m.entries())
        best = std::max(best, sup_norm(e, oversample_factor));
    return best;
}

ResidualNorms algebra_residual(const AlgebraMatrix& a, const AlgebraMatrix& b, const AlgebraMatrix& c,
                               const AlgebraMatrix& x)
{
    if (!a.is_square() || !b.is_square() || c.rows() != a.rows() || c.cols() != b.rows() || x.rows() != a.rows() ||
        x.cols() != b.rows())
        throw DimensionMismatch("algebra_residual: inconsistent shapes");
    const std::size_t w =
        std::max(std::max(a.effective_bandwidth(), b.effective_bandwidth()) + x.effective_bandwidth(),
                 c.effective_bandwidth());
    const AlgebraDescriptor ds[] = {a.descriptor(), b.descriptor(), c.descriptor(), x.descriptor()};
    const AlgebraDescriptor d = common_descriptor(ds, w);
    const AlgebraMatrix wa = widen(a, d), wb = widen(b, d), wc = widen(c, d), wx = widen(x, d);
    const AlgebraMatrix r = mat_sub(mat_sub(mat_mul(wa, wx), mat_mul(wx, wb)), wc);

    ResidualNorms out;
    for (const auto& e : r.entries())
        out.wiener += wiener_norm(e);
    out.sup = max_sup_norm(r, 2);
    return out;
}

} // namespace sylv
