#include "sylv/io.hpp"

#include "sylv/errors.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace sylv::io {

namespace {

const Json& member(const Json& j, const char* key)
{
    if (!j.is_object())
        throw FormatError(std::string("expected an object holding \"") + key + "\"");
    const auto it = j.find(key);
    if (it == j.end())
        throw FormatError(std::string("missing key \"") + key + "\"");
    return *it;
}

double number(const Json& j, const char* what)
{
    if (!j.is_number())
        throw FormatError(std::string(what) + ": expected a number");
    return j.get<double>();
}

std::size_t count(const Json& j, const char* what)
{
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        throw FormatError(std::string(what) + ": expected a non-negative integer");
    return j.get<std::size_t>();
}

Json real_to_json(double v)
{
    return std::isfinite(v) ? Json(v) : Json(nullptr);
}

double real_from_json(const Json& j, const char* what)
{
    if (j.is_null())
        return std::numeric_limits<double>::infinity();
    return number(j, what);
}

Json complex_to_json(Complex z)
{
    return Json::array({z.real(), z.imag()});
}

Complex complex_from_json(const Json& j)
{
    if (!j.is_array() || j.size() != 2)
        throw FormatError("complex number must be a [re, im] pair");
    return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

template <typename Fn>
auto translate_json_errors(Fn&& fn)
{
    try {
        return fn();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
}

} // namespace

Json descriptor_to_json(const AlgebraDescriptor& d)
{
    Json j = Json::object();
    j["kind"] = to_string(d.kind);
    j["grid_size"] = d.grid_size;
    j["bandwidth"] = d.bandwidth;
    return j;
}

AlgebraDescriptor descriptor_from_json(const Json& j)
{
    const Json& kind = member(j, "kind");
    if (!kind.is_string())
        throw FormatError("algebra.kind must be a string");
    const std::string k = kind.get<std::string>();
    const auto optional_count = [&](const char* key, std::size_t fallback) {
        return j.contains(key) ? count(j.at(key), key) : fallback;
    };
    try {
        if (k == "Scalar")
            return AlgebraDescriptor::scalar();
        if (k == "Wiener")
            return AlgebraDescriptor::wiener(count(member(j, "grid_size"), "grid_size"), optional_count("bandwidth", 0));
        if (k == "SampledCK") {
            if (optional_count("bandwidth", 0) != 0)
                throw FormatError("SampledCK algebras have no bandwidth");
            return AlgebraDescriptor::sampled(count(member(j, "grid_size"), "grid_size"));
        }
    } catch (const FormatError&) {
        throw;
    } catch (const Error& e) {
        throw FormatError(std::string("invalid algebra descriptor: ") + e.what());
    }
    throw FormatError("unknown algebra kind \"" + k + "\" (expected Scalar, Wiener or SampledCK)");
}

Json element_to_json(const AlgebraElement& e)
{
    switch (e.kind()) {
    case AlgebraKind::Scalar:
        return complex_to_json(e.scalar_value());
    case AlgebraKind::Wiener: {
        Json j = Json::object();
        const long w = static_cast<long>(e.descriptor().bandwidth);
        for (long k = -w; k <= w; ++k)
            if (const Complex c = e.coefficient(static_cast<int>(k)); c != Complex(0.0))
                j[std::to_string(k)] = complex_to_json(c);
        return j;
    }
    case AlgebraKind::SampledCK: {
        Json j = Json::array();
        for (const Complex z : e.values())
            j.push_back(complex_to_json(z));
        return j;
    }
    }
    return nullptr;
}

AlgebraElement element_from_json(const Json& j, const AlgebraDescriptor& d)
{
    switch (d.kind) {
    case AlgebraKind::Scalar:
        return AlgebraElement::constant(d, complex_from_json(j));
    case AlgebraKind::Wiener: {
        if (!j.is_object())
            throw FormatError("Wiener entry must map Laurent indices to [re, im]");
        AlgebraElement e(d);
        for (const auto& [key, value] : j.items()) {
            std::size_t used = 0;
            long k = 0;
            try {
                k = std::stol(key, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != key.size() || key.empty())
                throw FormatError("Laurent index \"" + key + "\" is not a decimal integer");
            if (static_cast<std::size_t>(std::labs(k)) > d.bandwidth)
                throw FormatError("Laurent index " + key + " outside bandwidth " + std::to_string(d.bandwidth));
            e.set_coefficient(static_cast<int>(k), complex_from_json(value));
        }
        return e;
    }
    case AlgebraKind::SampledCK: {
        if (!j.is_array() || j.size() != d.grid_size)
            throw FormatError("SampledCK entry must list " + std::to_string(d.grid_size) + " samples");
        std::vector<Complex> v;
        v.reserve(d.grid_size);
        for (const auto& s : j)
            v.push_back(complex_from_json(s));
        return AlgebraElement(d, std::move(v));
    }
    }
    throw FormatError("unknown algebra kind");
}

Json matrix_to_json(const AlgebraMatrix& m)
{
    Json j = Json::object();
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    Json entries = Json::array();
    for (const auto& e : m.entries())
        entries.push_back(element_to_json(e));
    j["entries"] = std::move(entries);
    return j;
}

AlgebraMatrix matrix_from_json(const Json& j, const AlgebraDescriptor& d)
{
    const std::size_t rows = count(member(j, "rows"), "rows");
    const std::size_t cols = count(member(j, "cols"), "cols");
    if (rows == 0 || cols == 0)
        throw FormatError("matrices must have positive dimensions");
    const Json& entries = member(j, "entries");
    if (!entries.is_array() || entries.size() != rows * cols)
        throw FormatError("matrix of shape " + std::to_string(rows) + "x" + std::to_string(cols) + " needs " +
                          std::to_string(rows * cols) + " entries");
    std::vector<AlgebraElement> e;
    e.reserve(rows * cols);
    for (const auto& v : entries)
        e.push_back(element_from_json(v, d));
    return AlgebraMatrix(rows, cols, d, std::move(e));
}

ProblemFile parse_problem(std::string_view text)
{
    return translate_json_errors([&] {
        const Json j = Json::parse(text);
        ProblemFile p;
        p.algebra = descriptor_from_json(member(j, "algebra"));
        for (auto [key, slot] : {std::pair{"A", &p.a}, std::pair{"B", &p.b}, std::pair{"C", &p.c},
                                 std::pair{"reference_X", &p.reference_x}})
            if (j.contains(key))
                *slot = matrix_from_json(j.at(key), p.algebra);

        if (j.contains("blocks")) {
            const Json& blocks = j.at("blocks");
            const Json& dims_json = member(blocks, "dims");
            if (!dims_json.is_array() || dims_json.empty())
                throw FormatError("blocks.dims must be a non-empty array");
            std::vector<std::size_t> dims;
            for (const auto& d : dims_json)
                dims.push_back(count(d, "blocks.dims"));
            BlockTriangular t(dims, p.algebra);
            for (const auto& entry : member(blocks, "entries")) {
                const std::size_t row = count(member(entry, "row"), "row");
                const std::size_t col = count(member(entry, "col"), "col");
                if (row > col || col >= dims.size())
                    throw FormatError("block (" + std::to_string(row) + ", " + std::to_string(col) +
                                      ") is not on or above the diagonal");
                try {
                    t.set_block(row, col, matrix_from_json(member(entry, "matrix"), p.algebra));
                } catch (const ShapeMismatch& e) {
                    throw FormatError(e.what());
                }
            }
            p.blocks = std::move(t);
        } else if (!p.a || !p.b || !p.c) {
            throw FormatError("problem needs matrices A, B and C or a blocks section");
        }
        if (p.a && p.b && p.c &&
            (!p.a->is_square() || !p.b->is_square() || p.c->rows() != p.a->rows() || p.c->cols() != p.b->rows()))
            throw FormatError("A must be n x n, B m x m and C n x m");
        return p;
    });
}

std::string serialize_problem(const ProblemFile& p)
{
    Json j = Json::object();
    j["algebra"] = descriptor_to_json(p.algebra);
    if (p.a)
        j["A"] = matrix_to_json(*p.a);
    if (p.b)
        j["B"] = matrix_to_json(*p.b);
    if (p.c)
        j["C"] = matrix_to_json(*p.c);
    if (p.blocks) {
        Json blocks = Json::object();
        blocks["dims"] = p.blocks->dims();
        Json entries = Json::array();
        for (std::size_t i = 0; i < p.blocks->block_count(); ++i)
            for (std::size_t k = i; k < p.blocks->block_count(); ++k) {
                const AlgebraMatrix& b = p.blocks->block(i, k);
                if (i != k && b.is_zero())
                    continue;
                Json e = Json::object();
                e["row"] = i;
                e["col"] = k;
                e["matrix"] = matrix_to_json(b);
                entries.push_back(std::move(e));
            }
        blocks["entries"] = std::move(entries);
        j["blocks"] = std::move(blocks);
    }
    if (p.reference_x)
        j["reference_X"] = matrix_to_json(*p.reference_x);
    return j.dump(2) + "\n";
}

ResultFile parse_result(std::string_view text)
{
    return translate_json_errors([&] {
        const Json j = Json::parse(text);
        ResultFile r;
        r.x = matrix_from_json(member(j, "X"), descriptor_from_json(member(j, "algebra")));
        r.residual_wiener = real_from_json(member(j, "residual_wiener"), "residual_wiener");
        r.residual_sup = real_from_json(member(j, "residual_sup"), "residual_sup");
        r.tail_mass = real_from_json(member(j, "tail_mass"), "tail_mass");
        r.global_min_gap = real_from_json(member(j, "global_min_gap"), "global_min_gap");
        r.grid_size = count(member(j, "grid_size"), "grid_size");
        r.bandwidth = count(member(j, "bandwidth"), "bandwidth");
        if (j.contains("kron_discrepancy"))
            r.kron_discrepancy = real_from_json(j.at("kron_discrepancy"), "kron_discrepancy");
        if (j.contains("config"))
            r.config = j.at("config");
        return r;
    });
}

std::string serialize_result(const ResultFile& r)
{
    Json j = Json::object();
    j["algebra"] = descriptor_to_json(r.x.descriptor());
    j["X"] = matrix_to_json(r.x);
    j["residual_wiener"] = real_to_json(r.residual_wiener);
    j["residual_sup"] = real_to_json(r.residual_sup);
    j["tail_mass"] = real_to_json(r.tail_mass);
    j["global_min_gap"] = real_to_json(r.global_min_gap);
    j["grid_size"] = r.grid_size;
    j["bandwidth"] = r.bandwidth;
    if (r.kron_discrepancy)
        j["kron_discrepancy"] = real_to_json(*r.kron_discrepancy);
    j["config"] = r.config;
    return j.dump(2) + "\n";
}

CertificateFile parse_certificate(std::string_view text)
{
    return translate_json_errors([&] {
        const Json j = Json::parse(text);
        CertificateFile c;
        const AlgebraDescriptor d = descriptor_from_json(member(j, "algebra"));
        c.s = matrix_from_json(member(j, "S"), d);
        c.s_inv = matrix_from_json(member(j, "S_inv"), d);
        c.residual = real_from_json(member(j, "residual"), "residual");
        c.inverse_residual = real_from_json(member(j, "inverse_residual"), "inverse_residual");
        c.tolerance = real_from_json(member(j, "tolerance"), "tolerance");
        const Json& certified = member(j, "certified");
        if (!certified.is_boolean())
            throw FormatError("certified must be a boolean");
        c.certified = certified.get<bool>();
        for (const auto& d_json : member(j, "dims"))
            c.dims.push_back(count(d_json, "dims"));
        if (j.contains("config"))
            c.config = j.at("config");
        return c;
    });
}

std::string serialize_certificate(const CertificateFile& c)
{
    Json j = Json::object();
    j["algebra"] = descriptor_to_json(c.s.descriptor());
    j["S"] = matrix_to_json(c.s);
    j["S_inv"] = matrix_to_json(c.s_inv);
    j["residual"] = real_to_json(c.residual);
    j["inverse_residual"] = real_to_json(c.inverse_residual);
    j["tolerance"] = real_to_json(c.tolerance);
    j["certified"] = c.certified;
    j["dims"] = c.dims;
    j["config"] = c.config;
    return j.dump(2) + "\n";
}

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text(const std::filesystem::path& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw FormatError("cannot write " + path.string());
    out << text;
    if (!out)
        throw FormatError("write failed for " + path.string());
}

} // namespace sylv::io
