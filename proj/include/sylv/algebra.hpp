#pragma once

// Elements of three concrete commutative unital semisimple Banach algebras and
// their Gelfand transforms:
//
//   Scalar     C itself; the maximal ideal space is a single point.
//   Wiener     trigonometric polynomials sum_{|k|<=W} c_k e^{ik theta}, a dense
//              subalgebra of W(T); the maximal ideal space is the circle, sampled
//              at theta_j = 2 pi j / N.
//   SampledCK  continuous functions on a finite set K, stored by their values.

#include "sylv/linalg.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace sylv {

enum class AlgebraKind { Scalar, Wiener, SampledCK };

const char* to_string(AlgebraKind kind);

struct AlgebraDescriptor {
    AlgebraKind kind = AlgebraKind::Scalar;
    /// Wiener: evaluation points on the circle. SampledCK: |K|. Scalar: 1.
    std::size_t grid_size = 1;
    /// Wiener only: largest |k| of a stored coefficient.
    std::size_t bandwidth = 0;

    static AlgebraDescriptor scalar() { return {AlgebraKind::Scalar, 1, 0}; }
    /// Throws InsufficientGrid unless grid_size >= 2 * bandwidth + 1.
    static AlgebraDescriptor wiener(std::size_t grid_size, std::size_t bandwidth);
    static AlgebraDescriptor sampled(std::size_t points);

    /// Number of stored values per element.
    std::size_t payload_size() const;
    void validate() const;

    friend bool operator==(const AlgebraDescriptor&, const AlgebraDescriptor&) = default;
};

/// Smallest power of two >= n.
std::size_t next_power_of_two(std::size_t n);

class AlgebraElement {
public:
    AlgebraElement() = default;
    /// The zero element.
    explicit AlgebraElement(const AlgebraDescriptor& descriptor);
    AlgebraElement(const AlgebraDescriptor& descriptor, std::vector<Complex> values);

    static AlgebraElement zero(const AlgebraDescriptor& d) { return AlgebraElement(d); }
    static AlgebraElement unit(const AlgebraDescriptor& d) { return constant(d, 1.0); }
    /// z times the unit element.
    static AlgebraElement constant(const AlgebraDescriptor& d, Complex z);
    /// Wiener e_k (the function e^{ik theta}) scaled by coefficient.
    static AlgebraElement monomial(const AlgebraDescriptor& d, int k, Complex coefficient = 1.0);
    static AlgebraElement from_coefficients(const AlgebraDescriptor& d, const std::map<int, Complex>& coefficients);

    const AlgebraDescriptor& descriptor() const noexcept { return descriptor_; }
    AlgebraKind kind() const noexcept { return descriptor_.kind; }

    /// Raw payload: the value (Scalar), coefficients c_{-W..W} (Wiener), samples (SampledCK).
    std::span<const Complex> values() const noexcept { return values_; }

    /// Wiener coefficient c_k; zero outside the band.
    Complex coefficient(int k) const;
    void set_coefficient(int k, Complex value);
    Complex sample(std::size_t i) const;
    Complex scalar_value() const;

    /// Largest |k| with a nonzero Wiener coefficient (0 for other kinds).
    std::size_t effective_bandwidth() const;
    bool is_zero() const;
    bool all_finite() const;

    friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

private:
    AlgebraDescriptor descriptor_;
    std::vector<Complex> values_;
};

AlgebraElement alg_add(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement alg_sub(const AlgebraElement& x, const AlgebraElement& y);
/// Complex product, Laurent convolution, or pointwise product. Throws BandwidthOverflow
/// when a Wiener product would leave the stored band.
AlgebraElement alg_mul(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement alg_scale(const AlgebraElement& x, Complex s);

/// Re-embeds x into a wider descriptor of the same kind.
AlgebraElement widen(const AlgebraElement& x, const AlgebraDescriptor& target);

/// phi_index-th point of the descriptor's grid.
Complex gelfand_eval(const AlgebraElement& x, std::size_t phi_index);
/// Wiener/Scalar: value at an arbitrary angle.
Complex gelfand_eval_at(const AlgebraElement& x, double theta);

/// All N raw coefficients d_k = (1/N) sum_j s_j e^{-ik theta_j}, index k = 0..N-1.
std::vector<Complex> inverse_dft(std::span<const Complex> samples);
/// Maps a DFT index to the signed frequency in (-N/2, N/2].
long signed_frequency(std::size_t k, std::size_t n);

/// Wiener element of the given bandwidth interpolating samples on N = samples.size() points.
AlgebraElement from_samples(std::span<const Complex> samples, std::size_t bandwidth);

/// Wiener: sum |c_k|; SampledCK: max |sample|; Scalar: modulus.
double wiener_norm(const AlgebraElement& x);
/// Max modulus on a grid oversample_factor times denser than the descriptor's.
double sup_norm(const AlgebraElement& x, std::size_t oversample_factor = 1);

/// n x m matrix over one algebra.
class AlgebraMatrix {
public:
    AlgebraMatrix() = default;
    /// Zero matrix.
    AlgebraMatrix(std::size_t rows, std::size_t cols, const AlgebraDescriptor& descriptor);
    AlgebraMatrix(std::size_t rows, std::size_t cols, const AlgebraDescriptor& descriptor,
                  std::vector<AlgebraElement> entries);

    static AlgebraMatrix identity(std::size_t n, const AlgebraDescriptor& d);
    /// C0 times the unit element.
    static AlgebraMatrix constant(const ComplexMatrix& c0, const AlgebraDescriptor& d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    const AlgebraDescriptor& descriptor() const noexcept { return descriptor_; }

    const AlgebraElement& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    /// Replaces one entry; the descriptor must match.
    void set(std::size_t i, std::size_t j, AlgebraElement value);

    std::span<const AlgebraElement> entries() const noexcept { return entries_; }

    AlgebraMatrix block(std::size_t row, std::size_t col, std::size_t rows, std::size_t cols) const;
    void set_block(std::size_t row, std::size_t col, const AlgebraMatrix& m);

    std::size_t effective_bandwidth() const;
    bool is_zero() const;

    friend bool operator==(const AlgebraMatrix&, const AlgebraMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    AlgebraDescriptor descriptor_;
    std::vector<AlgebraElement> entries_;
};

AlgebraMatrix mat_add(const AlgebraMatrix& x, const AlgebraMatrix& y);
AlgebraMatrix mat_sub(const AlgebraMatrix& x, const AlgebraMatrix& y);
AlgebraMatrix mat_mul(const AlgebraMatrix& x, const AlgebraMatrix& y);
AlgebraMatrix mat_scale(const AlgebraMatrix& x, Complex s);
AlgebraMatrix widen(const AlgebraMatrix& m, const AlgebraDescriptor& target);

ComplexMatrix gelfand_matrix(const AlgebraMatrix& m, std::size_t phi_index);
ComplexMatrix gelfand_matrix_at(const AlgebraMatrix& m, double theta);

/// A descriptor of the common kind wide enough for `bandwidth`, with a grid at least
/// as fine as every input's. Throws DescriptorMismatch on differing kinds or
/// differing SampledCK grids.
AlgebraDescriptor common_descriptor(std::span<const AlgebraDescriptor> descriptors, std::size_t bandwidth);

/// Norms of R = AX - XB - C computed in algebra arithmetic.
struct ResidualNorms {
    /// sum over entries of wiener_norm
    double wiener = 0.0;
    /// max over entries of sup_norm on a 2x oversampled grid
    double sup = 0.0;
};

/// Widens all operands to a descriptor that holds the products exactly.
ResidualNorms algebra_residual(const AlgebraMatrix& a, const AlgebraMatrix& b, const AlgebraMatrix& c,
                               const AlgebraMatrix& x);

/// Max entry sup_norm(.., oversample_factor).
double max_sup_norm(const AlgebraMatrix& m, std::size_t oversample_factor = 2);

} // namespace sylv
