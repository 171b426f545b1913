#pragma once

// JSON interchange format for algebra-valued matrices, problems, solutions and
// similarity certificates.
//
// Entry encoding by algebra kind:
//   Scalar     [re, im]
//   Wiener     {"k": [re, im], ...} with k a decimal integer string ("-3"),
//              zero coefficients omitted
//   SampledCK  [[re, im], ...] with one pair per point of K
//
// Writers emit keys in a fixed order and numbers in shortest round-trip form,
// so serialize(parse(serialize(x))) is byte-identical to serialize(x).

#include "sylv/algebra.hpp"
#include "sylv/roth.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace sylv::io {

using Json = nlohmann::ordered_json;

Json descriptor_to_json(const AlgebraDescriptor& d);
AlgebraDescriptor descriptor_from_json(const Json& j);

Json element_to_json(const AlgebraElement& e);
AlgebraElement element_from_json(const Json& j, const AlgebraDescriptor& d);

Json matrix_to_json(const AlgebraMatrix& m);
AlgebraMatrix matrix_from_json(const Json& j, const AlgebraDescriptor& d);

struct ProblemFile {
    AlgebraDescriptor algebra;
    std::optional<AlgebraMatrix> a;
    std::optional<AlgebraMatrix> b;
    std::optional<AlgebraMatrix> c;
    /// Block upper triangular input for repeated removal.
    std::optional<BlockTriangular> blocks;
    /// Known exact solution, when the file was manufactured from one.
    std::optional<AlgebraMatrix> reference_x;
};

ProblemFile parse_problem(std::string_view text);
std::string serialize_problem(const ProblemFile& p);

struct ResultFile {
    AlgebraMatrix x;
    double residual_wiener = 0.0;
    double residual_sup = 0.0;
    double tail_mass = 0.0;
    double global_min_gap = 0.0;
    std::size_t grid_size = 0;
    std::size_t bandwidth = 0;
    std::optional<double> kron_discrepancy;
    Json config = Json::object();
};

ResultFile parse_result(std::string_view text);
std::string serialize_result(const ResultFile& r);

struct CertificateFile {
    AlgebraMatrix s;
    AlgebraMatrix s_inv;
    double residual = 0.0;
    double inverse_residual = 0.0;
    double tolerance = 0.0;
    bool certified = false;
    /// Diagonal block sizes of the transformed matrix.
    std::vector<std::size_t> dims;
    Json config = Json::object();
};

CertificateFile parse_certificate(std::string_view text);
std::string serialize_certificate(const CertificateFile& c);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

} // namespace sylv::io
