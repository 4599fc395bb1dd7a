// Command-line front end: validate/build/solve/enumerate/verify over the
// pencil library. Exit codes: 0 success, 1 mathematical-check failure,
// 2 usage or input error. Reports are deterministic for fixed inputs + seed.

#include "egfp/io.hpp"
#include "egfp/oracle.hpp"
#include "egfp/pencils.hpp"
#include "egfp/rational.hpp"
#include "egfp/recovery.hpp"
#include "egfp/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

using namespace egfp;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0, kMathFail = 1, kUsage = 2;

io::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    io::json j;
    in >> j;
    return j;
}

ToleranceConfig load_tolerances(double tol_override) {
    ToleranceConfig t = ToleranceConfig::defaults();
    if (const char* env = std::getenv("EGFP_TOL_CONFIG")) {
        io::json j = load_json(env);
        if (j.contains("rank_factor")) t.rank_factor = j["rank_factor"].get<double>();
        if (j.contains("eig_match_rel")) t.eig_match_rel = j["eig_match_rel"].get<double>();
        if (j.contains("residual_rel")) t.residual_rel = j["residual_rel"].get<double>();
        if (j.contains("condition_skip")) t.condition_skip = j["condition_skip"].get<double>();
        if (j.contains("infinite_beta")) t.infinite_beta = j["infinite_beta"].get<double>();
        if (j.contains("subspace_angle")) t.subspace_angle = j["subspace_angle"].get<double>();
    }
    if (tol_override > 0) {
        t.residual_rel = tol_override;
        t.eig_match_rel = tol_override;
    }
    return t;
}

io::json complex_to_json(std::complex<double> z) {
    return io::json::array({z.real(), z.imag()});
}

struct Inputs {
    std::optional<MatrixPolynomial> poly;
    std::optional<Realization> real;

    static Inputs load(const std::string& poly_path, const std::string& real_path) {
        Inputs in;
        if (!poly_path.empty()) in.poly = io::poly_from_json(load_json(poly_path));
        if (!real_path.empty()) in.real = io::realization_from_json(load_json(real_path));
        if (in.poly && in.real)
            throw std::runtime_error("give either --poly or --realization, not both");
        if (!in.poly && !in.real)
            throw std::runtime_error("one of --poly or --realization is required");
        return in;
    }
    const MatrixPolynomial& p() const { return real ? real->P : *poly; }
};

int cmd_validate(const std::string& spec_path) {
    EgfpSpec spec = io::spec_from_json(load_json(spec_path));
    ValidationReport r = validate(spec);
    io::json out{{"valid", r.valid},
                 {"violations", r.violations},
                 {"operation_free_predicted", r.operation_free_predicted},
                 {"required_invertible", r.required_invertible}};
    if (r.valid) out["predicted_bandwidth"] = band_class_name(predict_bandwidth(spec));
    std::cout << out.dump(2) << "\n";
    return r.valid ? kOk : kMathFail;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

void export_block_matrix(const fs::path& dir, const std::string& name, const BlockMatrix& m) {
    std::ofstream mm(dir / (name + ".mtx"));
    io::write_matrix_market(mm, m.dense());
    write_text(dir / (name + ".tags.json"), io::tag_sidecar(m).dump(2));
}

int cmd_build(const std::string& spec_path, const Inputs& in, const std::string& out_dir) {
    EgfpSpec spec = io::spec_from_json(load_json(spec_path));
    fs::create_directories(out_dir);
    fs::path dir(out_dir);

    io::json summary;
    if (in.real && in.real->r() > 0) {
        BorderedPencil bp = build_rational(spec, *in.real);
        export_block_matrix(dir, "L0_core", bp.core.L0);
        export_block_matrix(dir, "L1_core", bp.core.L1);
        {
            std::ofstream mm(dir / "L0.mtx");
            io::write_matrix_market(mm, bp.dense_l0());
        }
        {
            std::ofstream mm(dir / "L1.mtx");
            io::write_matrix_market(mm, bp.dense_l1());
        }
        summary = io::json{{"kind", "rational"},
                           {"dim", bp.dim()},
                           {"border_offset", spec.m * in.real->n()},
                           {"c_block_row", bp.c_block_row},
                           {"b_block_col", bp.b_block_col},
                           {"bandwidth", bandwidth_bordered(bp)},
                           {"predicted_bandwidth",
                            band_class_name(predict_bandwidth_rational(spec))}};
    } else {
        BlockPencil l = build(spec, in.p());
        export_block_matrix(dir, "L0", l.L0);
        export_block_matrix(dir, "L1", l.L1);
        std::vector<std::string> fams;
        for (Family f : classify(spec)) fams.push_back(family_name(f));
        summary = io::json{{"kind", "polynomial"},
                           {"dim", l.m * l.n},
                           {"bandwidth", bandwidth(l)},
                           {"operation_free", is_operation_free(l)},
                           {"families", fams},
                           {"predicted_bandwidth", band_class_name(predict_bandwidth(spec))}};
    }
    write_text(dir / "summary.json", summary.dump(2));
    std::cout << summary.dump(2) << "\n";
    return kOk;
}

int cmd_solve(const std::string& spec_path, const Inputs& in, const std::string& out_path,
              const ToleranceConfig& tol) {
    EgfpSpec spec = io::spec_from_json(load_json(spec_path));
    io::json report;
    bool all_ok = true;

    if (in.real && in.real->r() > 0) {
        const Realization& real = *in.real;
        BorderedPencil bp = build_rational(spec, real);
        EigenResult eig = generalized_eigs(bp.dense_l0(), bp.dense_l1(), tol);
        report["regular"] = eig.regular;
        io::json list = io::json::array();
        for (std::size_t k = 0; k < eig.finite.size(); ++k) {
            std::complex<double> mu =
                polish_eigenvalue(bp.dense_l0(), bp.dense_l1(), eig.finite[k]);
            io::json entry{{"mu", complex_to_json(mu)}, {"condition", eig.condition[k]}};
            if (eig.condition[k] <= tol.condition_skip) {
                Eigen::MatrixXcd z = null_basis(bp.eval(mu), Side::right, tol);
                if (z.cols() > 0) {
                    SystemRecovery rec =
                        recover_system_eigenvectors(spec, real, mu, z, Side::right);
                    entry["selector"] = rec.selector.str();
                    entry["residual"] = rec.max_residual;
                    entry["ok"] = rec.max_residual <= tol.residual_rel;
                    all_ok = all_ok && rec.max_residual <= tol.residual_rel;
                }
            } else {
                entry["skipped"] = "condition";
            }
            list.push_back(entry);
        }
        report["eigenvalues"] = list;
        report["infinite_count"] = eig.infinite_count;
    } else {
        const MatrixPolynomial& p = in.p();
        BlockPencil l = build(spec, p);
        EigenResult eig = generalized_eigs(l.L0.dense(), l.L1.dense(), tol);
        report["regular"] = eig.regular;
        io::json list = io::json::array();
        for (std::size_t k = 0; k < eig.finite.size(); ++k) {
            std::complex<double> mu =
                polish_eigenvalue(l.L0.dense(), l.L1.dense(), eig.finite[k]);
            io::json entry{{"mu", complex_to_json(mu)}, {"condition", eig.condition[k]}};
            if (eig.condition[k] <= tol.condition_skip) {
                for (Side side : {Side::right, Side::left}) {
                    Eigen::MatrixXcd z = null_basis(l.eval(mu), side, tol);
                    if (z.cols() == 0) continue;
                    RecoveryResult rec = recover_eigenvectors(spec, p, mu, z, side, tol);
                    const char* tag = side == Side::right ? "right" : "left";
                    entry[std::string(tag) + "_selector"] = rec.selector.str();
                    entry[std::string(tag) + "_residual"] = rec.max_residual;
                    all_ok = all_ok && rec.max_residual <= tol.residual_rel;
                }
            } else {
                entry["skipped"] = "condition";
            }
            list.push_back(entry);
        }
        report["eigenvalues"] = list;
        report["infinite_count"] = eig.infinite_count;
        // eigenvectors at infinity, when the leading coefficient is singular
        if (eig.infinite_count > 0 && spec.tau.contains(neg(spec.m))) {
            Eigen::MatrixXcd z = null_basis(l.L1.dense(), Side::right, tol);
            if (z.cols() > 0) {
                RecoveryResult rec = recover_eigenvectors_at_infinity(spec, p, z, Side::right, tol);
                report["infinity"] = io::json{{"selector", rec.selector.str()},
                                              {"residual", rec.max_residual},
                                              {"count", static_cast<int>(z.cols())}};
                all_ok = all_ok && rec.max_residual <= tol.residual_rel;
            }
        }
    }

    std::string text = report.dump(2) + "\n";
    if (!out_path.empty())
        write_text(out_path, text);
    else
        std::cout << text;
    return all_ok ? kOk : kMathFail;
}

int cmd_enumerate(int m, const std::string& band, const std::string& family, int opfree,
                  int cap, long long limit, const std::string& format) {
    EnumerationFilter filter;
    if (band == "tri")
        filter.band = BandClass::tridiagonal;
    else if (band == "penta")
        filter.band = BandClass::pentadiagonal;
    else if (band == "wider")
        filter.band = BandClass::wider;
    else if (!band.empty())
        return kUsage;
    if (family == "fp")
        filter.family = Family::FP;
    else if (family == "gfp")
        filter.family = Family::GFP;
    else if (family == "fpr")
        filter.family = Family::FPR;
    else if (family == "gfpr")
        filter.family = Family::GFPR;
    else if (family == "egfp")
        filter.family = Family::EGFP_proper;
    else if (!family.empty())
        return kUsage;
    if (opfree >= 0) filter.operation_free = opfree != 0;

    long long count = 0;
    enumerate_specs(
        m, filter,
        [&](const EgfpSpec& s) {
            io::json j = io::spec_to_json(s);
            j["families"] = io::json::array();
            for (Family f : classify(s)) j["families"].push_back(family_name(f));
            j["predicted_bandwidth"] = band_class_name(predict_bandwidth(s));
            j["operation_free"] = operation_free_hypothesis(s);
            std::cout << (format == "json" ? j.dump(2) : j.dump()) << "\n";
            ++count;
            return limit <= 0 || count < limit;
        },
        cap);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fiedler-family pencil toolkit: build, classify and solve "
                 "extended generalized Fiedler pencils of matrix polynomials "
                 "and rational matrices"};
    app.require_subcommand(1);

    std::string spec_path, poly_path, real_path, out_path, suite, band, family, format;
    double tol_override = -1;
    std::uint64_t seed = 1;
    int m = 3, cap = 2, opfree = -1;
    long long limit = 0;

    auto add_common = [&](CLI::App* c, bool needs_input) {
        c->add_option("--spec", spec_path, "pencil parameter file (JSON)")->required();
        if (needs_input) {
            c->add_option("--poly", poly_path, "matrix polynomial file (JSON)");
            c->add_option("--realization", real_path, "state-space realization file (JSON)");
        }
    };

    CLI::App* validate_cmd = app.add_subcommand("validate", "check a pencil parameter file");
    validate_cmd->add_option("--spec", spec_path)->required();

    CLI::App* build_cmd = app.add_subcommand("build", "assemble a pencil and export it");
    add_common(build_cmd, true);
    build_cmd->add_option("--out", out_path, "output directory")->required();

    CLI::App* solve_cmd = app.add_subcommand("solve", "eigenvalues plus recovered eigenvectors");
    add_common(solve_cmd, true);
    solve_cmd->add_option("--out", out_path, "report file (stdout if omitted)");
    solve_cmd->add_option("--tol", tol_override, "residual tolerance override");
    solve_cmd->add_option("--seed", seed, "random seed");

    CLI::App* enum_cmd = app.add_subcommand("enumerate", "stream valid parameter sets");
    enum_cmd->add_option("--m", m, "degree")->required();
    enum_cmd->add_option("--band", band, "tri|penta|wider");
    enum_cmd->add_option("--family", family, "fp|gfp|fpr|gfpr|egfp");
    enum_cmd->add_option("--opfree", opfree, "1 = operation-free only, 0 = complement");
    enum_cmd->add_option("--cap", cap, "decoration length cap (default 2)");
    enum_cmd->add_option("--limit", limit, "stop after this many");
    enum_cmd->add_option("--format", format, "json|jsonl (default jsonl)");

    CLI::App* verify_cmd = app.add_subcommand("verify", "run a named acceptance suite");
    verify_cmd->add_option("--suite", suite, "suite name (see --list)")->required();
    verify_cmd->add_option("--seed", seed, "random seed");

    CLI::App* suites_cmd = app.add_subcommand("suites", "list verification suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(validate_cmd)) return cmd_validate(spec_path);
        if (app.got_subcommand(build_cmd))
            return cmd_build(spec_path, Inputs::load(poly_path, real_path), out_path);
        if (app.got_subcommand(solve_cmd))
            return cmd_solve(spec_path, Inputs::load(poly_path, real_path), out_path,
                             load_tolerances(tol_override));
        if (app.got_subcommand(enum_cmd)) {
            if (format.empty()) format = "jsonl"; // one object per line by default
            int rc = cmd_enumerate(m, band, family, opfree, cap, limit, format);
            if (rc == kUsage) std::cerr << "unknown filter value\n";
            return rc;
        }
        if (app.got_subcommand(verify_cmd)) return egfp::verify::run_suite(suite, seed, std::cout);
        if (app.got_subcommand(suites_cmd)) {
            for (const auto& s : egfp::verify::suite_names()) std::cout << s << "\n";
            return kOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMathFail; // a mathematically invalid input, not a usage error
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
