#include "sylv/cli.hpp"

#include "sylv/gelfand_solver.hpp"
#include "sylv/io.hpp"
#include "sylv/roth.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>

namespace sylv::cli {

namespace {

struct SolveFlags {
    std::optional<std::size_t> grid;
    std::optional<std::size_t> bandwidth;
    std::size_t refine = 0;
    std::optional<double> gap_tol;
    bool crosscheck_kron = false;
    double max_residual = 1e-6;
    std::string out;

    SolveConfig config() const
    {
        SolveConfig c;
        c.grid_size = grid;
        c.bandwidth = bandwidth;
        c.refine_levels = refine;
        c.gap_tol = gap_tol;
        c.crosscheck_kron = crosscheck_kron;
        return c;
    }

    io::Json echo(std::size_t grid_used, std::size_t bandwidth_used) const
    {
        io::Json j = io::Json::object();
        j["grid_size"] = grid_used;
        j["bandwidth"] = bandwidth_used;
        j["refine_levels"] = refine;
        j["gap_tol"] = gap_tol ? io::Json(*gap_tol) : io::Json(nullptr);
        j["max_residual"] = max_residual;
        j["crosscheck_kron"] = crosscheck_kron;
        return j;
    }
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f, bool with_crosscheck)
{
    cmd->add_option("--grid", f.grid, "Number of evaluation points on the circle (Wiener)");
    cmd->add_option("--bandwidth", f.bandwidth, "Bandwidth of the reconstructed solution (Wiener)");
    cmd->add_option("--refine", f.refine, "Refinement levels around the smallest gap");
    cmd->add_option("--gap-tol", f.gap_tol, "Absolute eigenvalue gap below which spectra count as touching");
    cmd->add_option("--max-residual", f.max_residual, "Largest acceptable sup-norm residual")->capture_default_str();
    if (with_crosscheck)
        cmd->add_flag("--crosscheck-kron", f.crosscheck_kron,
                      "Re-solve three grid points with the Kronecker solver");
}

io::ProblemFile load_problem(const std::string& path)
{
    return io::parse_problem(io::read_text(path));
}

void require_abc(const io::ProblemFile& p)
{
    if (!p.a || !p.b || !p.c)
        throw FormatError("problem file has no A, B, C matrices");
}

void print_report(const SeparationReport& r, std::ostream& out)
{
    out << "grid points: " << r.per_point.size() << "\n";
    out << "global_min_gap: " << r.global_min_gap << "\n";
    if (!r.refinement.empty())
        out << "refined points: " << r.refinement.size() << "\n";
    if (r.separated()) {
        out << "separated: yes\n";
        return;
    }
    out << "separated: no\nviolating grid indices:";
    for (const std::size_t i : r.violating_points)
        out << ' ' << i;
    out << "\n";
    for (const auto& s : r.refinement)
        if (s.violating)
            out << "violating refined theta: " << s.theta << " (level " << s.level << ")\n";
}

void write_gap_csv(const SeparationReport& r, const std::string& path)
{
    std::ofstream csv(path);
    if (!csv)
        throw FormatError("cannot write " + path);
    csv << std::setprecision(17);
    csv << "phi_index,theta,min_gap,witness_re_a,witness_im_a,witness_re_b,witness_im_b\n";
    for (const auto& s : r.per_point)
        csv << s.phi_index << ',' << s.theta << ',' << s.min_gap << ',' << s.witness_a.real() << ','
            << s.witness_a.imag() << ',' << s.witness_b.real() << ',' << s.witness_b.imag() << '\n';
}

int cmd_check_separation(const std::string& input, const SolveFlags& f, const std::string& csv, std::ostream& out)
{
    const io::ProblemFile p = load_problem(input);
    SeparationReport report;
    if (p.a && p.b) {
        report = certify_separation(*p.a, *p.b, f.config());
    } else {
        // blocks section: every pair of diagonal blocks must separate; report the worst pair
        const BlockTriangular& t = *p.blocks;
        std::optional<SeparationReport> worst;
        for (std::size_t i = 0; i < t.block_count(); ++i)
            for (std::size_t j = i + 1; j < t.block_count(); ++j) {
                SeparationReport r = certify_separation(t.block(i, i), t.block(j, j), f.config());
                out << "blocks (" << i << ", " << j << "): min gap " << r.global_min_gap
                    << (r.separated() ? "" : " VIOLATED") << "\n";
                if (!worst || (worst->separated() && (!r.separated() || r.global_min_gap < worst->global_min_gap)))
                    worst = std::move(r);
            }
        if (worst)
            report = std::move(*worst);
        else
            report.global_min_gap = std::numeric_limits<double>::infinity();
    }
    print_report(report, out);
    if (!csv.empty())
        write_gap_csv(report, csv);
    return report.separated() ? kSuccess : kSeparationViolated;
}

int cmd_solve(const std::string& input, const SolveFlags& f, std::ostream& out, std::ostream& err)
{
    const io::ProblemFile p = load_problem(input);
    require_abc(p);
    const SylvesterSolution sol = solve(*p.a, *p.b, *p.c, f.config());

    io::ResultFile r;
    r.x = sol.x;
    r.residual_wiener = sol.residual_wiener;
    r.residual_sup = sol.residual_sup;
    r.tail_mass = sol.tail_mass;
    r.global_min_gap = sol.report.global_min_gap;
    r.grid_size = sol.grid_size;
    r.bandwidth = sol.bandwidth;
    r.kron_discrepancy = sol.kron_discrepancy;
    r.config = f.echo(sol.grid_size, sol.bandwidth);
    const std::string text = io::serialize_result(r);
    if (f.out.empty())
        out << text;
    else
        io::write_text(f.out, text);

    // keep stdout pure JSON when the result goes there
    std::ostream& summary = f.out.empty() ? err : out;
    summary << "global_min_gap: " << sol.report.global_min_gap << "\n"
        << "residual_wiener: " << sol.residual_wiener << "\n"
        << "residual_sup: " << sol.residual_sup << "\n"
        << "tail_mass: " << sol.tail_mass << "\n";
    if (sol.kron_discrepancy)
        summary << "kron_discrepancy: " << *sol.kron_discrepancy << "\n";

    if (sol.residual_sup > f.max_residual) {
        err << "residual " << sol.residual_sup << " exceeds --max-residual " << f.max_residual << "\n";
        return kResidualFailure;
    }
    if (sol.kron_discrepancy && *sol.kron_discrepancy > f.max_residual) {
        err << "Kronecker cross-check differs by " << *sol.kron_discrepancy << "\n";
        return kResidualFailure;
    }
    return kSuccess;
}

int cmd_roth(const std::string& input, const SolveFlags& f, std::ostream& out, std::ostream& err)
{
    const io::ProblemFile p = load_problem(input);
    io::CertificateFile cert;
    SimilarityCertificate sc;
    std::size_t grid = 0, bandwidth = 0;
    if (p.blocks) {
        BlockDiagonalization bd = block_diagonalize(*p.blocks, f.config());
        sc = std::move(bd.certificate);
        cert.dims = p.blocks->dims();
        if (!bd.stages.empty()) {
            grid = bd.stages.front().grid_size;
            bandwidth = bd.stages.front().bandwidth;
        }
    } else {
        require_abc(p);
        RothDecision rd = roth_decide(*p.a, *p.b, *p.c, f.config());
        sc = std::move(rd.certificate);
        cert.dims = {p.a->rows(), p.b->rows()};
        grid = rd.solution.grid_size;
        bandwidth = rd.solution.bandwidth;
        (f.out.empty() ? err : out) << "global_min_gap: " << rd.solution.report.global_min_gap << "\n";
    }
    cert.s = sc.s;
    cert.s_inv = sc.s_inv;
    cert.residual = sc.residual;
    cert.inverse_residual = sc.inverse_residual;
    cert.tolerance = sc.tolerance;
    cert.certified = sc.certified();
    cert.config = f.echo(grid, bandwidth);
    const std::string text = io::serialize_certificate(cert);
    if (f.out.empty())
        out << text;
    else
        io::write_text(f.out, text);

    std::ostream& summary = f.out.empty() ? err : out;
    summary << "residual: " << sc.residual << "\n"
        << "inverse_residual: " << sc.inverse_residual << "\n";
    if (sc.residual > f.max_residual || sc.inverse_residual > f.max_residual) {
        err << "similarity residual exceeds --max-residual " << f.max_residual << "\n";
        return kResidualFailure;
    }
    return kSuccess;
}

int cmd_verify(const std::string& problem_path, const std::string& result_path, double max_residual,
               std::ostream& out, std::ostream& err)
{
    const io::ProblemFile p = load_problem(problem_path);
    require_abc(p);
    const io::ResultFile r = io::parse_result(io::read_text(result_path));
    const ResidualNorms norms = algebra_residual(*p.a, *p.b, *p.c, r.x);
    out << "residual_wiener: " << norms.wiener << " (recorded " << r.residual_wiener << ")\n"
        << "residual_sup: " << norms.sup << " (recorded " << r.residual_sup << ")\n";
    if (norms.sup > max_residual) {
        err << "residual " << norms.sup << " exceeds --max-residual " << max_residual << "\n";
        return kResidualFailure;
    }
    return kSuccess;
}

int cmd_normalize(const std::string& input, const std::string& output, std::ostream& out)
{
    const std::string text = io::read_text(input);
    io::Json j;
    try {
        j = io::Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
    std::string normalized;
    if (j.contains("S"))
        normalized = io::serialize_certificate(io::parse_certificate(text));
    else if (j.contains("X") && j.contains("residual_sup"))
        normalized = io::serialize_result(io::parse_result(text));
    else
        normalized = io::serialize_problem(io::parse_problem(text));
    if (output.empty())
        out << normalized;
    else
        io::write_text(output, normalized);
    return kSuccess;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Sylvester equations AX - XB = C over Banach algebras"};
    app.require_subcommand(1);

    std::string input, second, csv, output;
    SolveFlags flags;

    auto* check = app.add_subcommand("check-separation", "Check that the spectra of A^ and B^ stay apart on the grid");
    check->add_option("problem", input, "Problem file")->required();
    add_solve_flags(check, flags, false);
    check->add_option("--csv", csv, "Write the gap locus as CSV");

    auto* solve_cmd = app.add_subcommand("solve", "Solve AX - XB = C and write the result file");
    solve_cmd->add_option("problem", input, "Problem file")->required();
    add_solve_flags(solve_cmd, flags, true);
    solve_cmd->add_option("--out", flags.out, "Result file (default: stdout)");

    auto* roth = app.add_subcommand("roth", "Block-diagonalize by explicit similarity");
    roth->add_option("problem", input, "Problem file (A, B, C or a blocks section)")->required();
    add_solve_flags(roth, flags, false);
    roth->add_option("--out", flags.out, "Certificate file (default: stdout)");

    auto* verify = app.add_subcommand("verify", "Recompute AX - XB - C from a problem and a result file");
    verify->add_option("problem", input, "Problem file")->required();
    verify->add_option("result", second, "Result file")->required();
    verify->add_option("--max-residual", flags.max_residual, "Largest acceptable sup-norm residual")
        ->capture_default_str();

    auto* normalize = app.add_subcommand("normalize", "Rewrite a problem, result or certificate file canonically");
    normalize->add_option("file", input, "Input file")->required();
    normalize->add_option("--out", output, "Output file (default: stdout)");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInputError;
    }

    try {
        if (check->parsed())
            return cmd_check_separation(input, flags, csv, out);
        if (solve_cmd->parsed())
            return cmd_solve(input, flags, out, err);
        if (roth->parsed())
            return cmd_roth(input, flags, out, err);
        if (verify->parsed())
            return cmd_verify(input, second, flags.max_residual, out, err);
        if (normalize->parsed())
            return cmd_normalize(input, output, out);
    } catch (const SeparationViolated& e) {
        err << "separation violated: " << e.what() << "\n";
        print_report(e.report(), err);
        return kSeparationViolated;
    } catch (const SpectraOverlap& e) {
        err << "separation violated: " << e.what() << "\n";
        return kSeparationViolated;
    } catch (const sylv::Error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

} // namespace sylv::cli
