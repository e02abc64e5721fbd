// bwh_cli.cpp -- batch front door: parse a configuration, run the requested
// pipeline, emit CSV/JSON artifacts plus a manifest tying them together.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error,
// 3 physics-degenerate input, 4 numerical-tolerance failure.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bwh/config.hpp"
#include "bwh/farfield.hpp"
#include "bwh/verify.hpp"

using namespace bwh;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846264338;

int log_level() {
    const char* v = std::getenv("BWH_LOG");
    if (!v) return 1;
    const std::string s(v);
    if (s == "quiet") return 0;
    if (s == "debug") return 2;
    return 1;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[bwh] " << msg << "\n";
}

struct Emitted {
    std::string name;
    std::string digest;
    std::size_t bytes = 0;
};

Emitted write_file(const fs::path& dir, const std::string& name, const std::string& content) {
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    out.close();
    log_info("wrote " + p.string());
    return {name, fnv1a_hex(content), content.size()};
}

json config_echo(const RunConfig& cfg) {
    json j;
    j["medium"] = {{"epsilon", cfg.epsilon},
                   {"mu", cfg.mu},
                   {"alpha", cfg.alpha},
                   {"beta", cfg.beta},
                   {"omega", cfg.omega}};
    j["propagation"] = {{"ky", cfg.ky}, {"loss", cfg.loss}};
    if (cfg.r0) j["source"] = {{"r0", *cfg.r0}, {"phi0_deg", *cfg.phi0 * 180.0 / kPi}};
    if (cfg.x0) j["source"] = {{"x0", *cfg.x0}, {"z0", *cfg.z0}};
    j["kernel"] = {{"strip_halfwidth", cfg.strip_halfwidth},
                   {"tol", cfg.kernel_tol},
                   {"node_budget", cfg.node_budget}};
    j["seed"] = cfg.seed;
    return j;
}

json derived_json(const DerivedRun& d, const SourceSpec* src) {
    json j;
    j["k"] = d.medium.k;
    j["eta"] = d.medium.eta;
    j["gamma1"] = d.medium.gamma1;
    j["gamma2"] = d.medium.gamma2;
    j["eta1"] = d.medium.eta1;
    j["eta2"] = d.medium.eta2;
    j["k1xz"] = {d.ctx.k1xz.real(), d.ctx.k1xz.imag()};
    j["k2xz"] = {d.ctx.k2xz.real(), d.ctx.k2xz.imag()};
    j["delta"] = {d.ctx.delta.real(), d.ctx.delta.imag()};
    if (src) {
        j["c"] = {src->amplitude_c.real(), src->amplitude_c.imag()};
        j["k1x"] = {src->k1x.real(), src->k1x.imag()};
        j["k1z"] = {src->k1z.real(), src->k1z.imag()};
    }
    return j;
}

struct ManifestBuilder {
    json j;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    ManifestBuilder(const std::string& command, const RunConfig& cfg) {
        j["tool_version"] = kToolVersion;
        j["command"] = command;
        j["config"] = config_echo(cfg);
        j["outputs"] = json::array();
        j["warnings"] = json::array();
    }
    void add(const Emitted& e) {
        j["outputs"].push_back({{"file", e.name}, {"fnv1a64", e.digest}, {"bytes", e.bytes}});
    }
    void warn(const std::string& w) { j["warnings"].push_back(w); }
    std::string finish() {
        const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
        j["wall_seconds"] = dt.count();
        return j.dump(2) + "\n";
    }
};

SourceSpec make_source(const RunConfig& cfg, const DerivedRun& d) {
    return SourceSpec::from_polar(d.r0, d.phi0, d.ctx);
}

int cmd_medium(const RunConfig& cfg) {
    const DerivedRun d = derive_run(cfg);
    const SourceSpec src = make_source(cfg, d);
    json out;
    out["derived"] = derived_json(d, &src);
    if (cfg.phi0_out_of_range)
        out["warnings"] = {"phi0 outside (-180, -90) degrees: source not below-left of the edge"};
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_factorize(const RunConfig& cfg, const fs::path& outdir) {
    const DerivedRun d = derive_run(cfg);
    ManifestBuilder mb("factorize", cfg);

    KernelSpec ks;
    ks.ctx = d.ctx;
    ks.strip_halfwidth = cfg.strip_halfwidth;
    ks.node_budget = cfg.node_budget;
    const FactorizedKernel fk = factorize(ks, cfg.kernel_tol);

    std::ostringstream csv;
    csv << "t,re_zeta,im_zeta,re_log_kernel,im_log_kernel,re_log_plus,im_log_plus,"
           "product_residual\n";
    for (const KernelDiagnosticsRow& r : fk.diagnostics()) {
        csv << csv_number(r.t) << ',' << csv_number(r.zeta.real()) << ','
            << csv_number(r.zeta.imag()) << ',' << csv_number(r.log_rem.real()) << ','
            << csv_number(r.log_rem.imag()) << ',' << csv_number(r.log_plus.real()) << ','
            << csv_number(r.log_plus.imag()) << ',' << csv_number(r.product_residual) << '\n';
    }
    mb.add(write_file(outdir, "kernel_diagnostics.csv", csv.str()));

    mb.j["derived"] = derived_json(d, nullptr);
    mb.j["product_error"] = fk.product_error();
    mb.j["node_count"] = fk.node_count();
    mb.j["strip_halfwidth"] = fk.strip_halfwidth();
    mb.j["surface_zero"] = {fk.surface_zero().real(), fk.surface_zero().imag()};
    write_file(outdir, "manifest.json", mb.finish());
    return 0;
}

int cmd_fieldmap(const RunConfig& cfg, const fs::path& outdir, unsigned workers) {
    const DerivedRun d = derive_run(cfg);
    ManifestBuilder mb("fieldmap", cfg);
    const SourceSpec src = make_source(cfg, d);
    const SpectralSolution sol = SpectralSolution::build(d.ctx, src, cfg.kernel_tol);

    const FieldGrid g = field_map(cfg.grid_x0, cfg.grid_x1, cfg.grid_z0, cfg.grid_z1, cfg.grid_nx,
                                  cfg.grid_nz, sol, cfg.field_tol, workers);
    std::ostringstream csv;
    csv << "x,z,re,im,abs,converged\n";
    for (const FieldSample& s : g.samples) {
        csv << csv_number(s.x) << ',' << csv_number(s.z) << ',' << csv_number(s.value.real())
            << ',' << csv_number(s.value.imag()) << ',' << csv_number(std::abs(s.value)) << ','
            << (s.converged ? 1 : 0) << '\n';
    }
    mb.add(write_file(outdir, "fieldmap.csv", csv.str()));

    std::size_t ok = 0;
    for (const FieldSample& s : g.samples) ok += s.converged ? 1 : 0;
    mb.j["derived"] = derived_json(d, &src);
    mb.j["converged_points"] = ok;
    mb.j["total_points"] = g.samples.size();
    if (cfg.phi0_out_of_range) mb.warn("phi0 outside (-180, -90) degrees");
    write_file(outdir, "manifest.json", mb.finish());
    return 0;
}

int cmd_farfield(const RunConfig& cfg, const fs::path& outdir, unsigned workers) {
    const DerivedRun d = derive_run(cfg);
    ManifestBuilder mb("farfield", cfg);
    const SourceSpec src = make_source(cfg, d);
    const SpectralSolution sol = SpectralSolution::build(d.ctx, src, cfg.kernel_tol);

    std::vector<double> thetas = cfg.angles;
    if (thetas.empty())
        for (int deg = 1; deg <= 179; ++deg) thetas.push_back(deg * kPi / 180.0);

    const double k = std::abs(d.ctx.k1xz);
    const double r = cfg.reference_radius > 0.0 ? cfg.reference_radius : 100.0 / k;
    if (k * r < 20.0) mb.warn("reference radius below the far-zone validity floor k*r >= 20");

    const FarFieldCut cut = far_field_cut(thetas, r, sol, workers);
    std::ostringstream csv;
    csv << "theta_deg,re_coeff,im_coeff,abs_coeff,abs_field_at_r,shadow_flag\n";
    for (std::size_t i = 0; i < cut.theta.size(); ++i) {
        csv << csv_number(cut.theta[i] * 180.0 / kPi) << ','
            << csv_number(cut.coefficient[i].real()) << ','
            << csv_number(cut.coefficient[i].imag()) << ','
            << csv_number(std::abs(cut.coefficient[i])) << ','
            << csv_number(std::abs(cut.field_at_r[i])) << ',' << int(cut.shadow_flags[i])
            << '\n';
    }
    mb.add(write_file(outdir, "farfield.csv", csv.str()));

    mb.j["derived"] = derived_json(d, &src);
    mb.j["reference_radius"] = r;
    write_file(outdir, "manifest.json", mb.finish());
    return 0;
}

int cmd_verify(const RunConfig& cfg, const fs::path& outdir) {
    const DerivedRun d = derive_run(cfg);
    ManifestBuilder mb("verify", cfg);
    const SourceSpec src = make_source(cfg, d);

    std::vector<std::string> checks = cfg.checks;
    if (checks.empty())
        checks = {"spectral", "factorization", "boundary", "cancellation", "helmholtz"};

    const std::vector<std::string> known{"spectral",  "factorization",    "boundary",
                                         "cancellation", "helmholtz",     "helmholtz_wrongk",
                                         "boundary_incident_only"};
    for (const std::string& c : checks)
        if (std::find(known.begin(), known.end(), c) == known.end())
            throw ConfigError("verify: unknown check name '" + c + "'");

    // build the solution lazily; some checks do not need it
    std::unique_ptr<SpectralSolution> sol;
    auto solution = [&]() -> const SpectralSolution& {
        if (!sol)
            sol = std::make_unique<SpectralSolution>(
                SpectralSolution::build(d.ctx, src, cfg.kernel_tol));
        return *sol;
    };

    bool all_passed = true;
    std::vector<ResidualReport> reports;
    for (const std::string& c : checks) {
        ResidualReport rep;
        if (c == "spectral") {
            rep = spectral_identity_check(src, d.ctx, 20, cfg.seed, cfg.spectral_tol);
        } else if (c == "factorization") {
            rep = factorization_check(solution().kernel(), 50, cfg.seed, cfg.factorization_tol);
        } else if (c == "boundary") {
            rep = boundary_check(solution(), 200, cfg.seed, cfg.boundary_tol, false);
        } else if (c == "boundary_incident_only") {
            rep = boundary_check(solution(), 50, cfg.seed, cfg.boundary_tol, true);
        } else if (c == "cancellation") {
            rep = cancellation_check(solution(), 50, cfg.seed, cfg.cancellation_tol);
        } else if (c == "helmholtz" || c == "helmholtz_wrongk") {
            const double k = std::abs(d.ctx.k1xz);
            const cplx kxz = c == "helmholtz" ? d.ctx.k1xz : 1.1 * d.ctx.k1xz;
            Region reg{1.0 / k, 4.0 / k, 1.0 / k, 4.0 / k};
            const double h = 1e-2 * 2.0 * kPi / k;
            rep = helmholtz_residual(
                [&](double x, double z) { return incident_exact(x, z, src, d.ctx); }, kxz, reg,
                h, 20, cfg.seed, 0.2);
            if (c == "helmholtz_wrongk") rep.check_name = "helmholtz_wrongk";
        }
        all_passed = all_passed && rep.passed;
        std::cout << rep.to_text() << "\n";
        reports.push_back(std::move(rep));
    }

    for (const ResidualReport& rep : reports)
        mb.add(write_file(outdir, "verify_" + rep.check_name + ".json", rep.to_json() + "\n"));
    mb.j["derived"] = derived_json(d, &src);
    mb.j["all_passed"] = all_passed;
    write_file(outdir, "manifest.json", mb.finish());
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semi-analytic half-plane diffraction solver for bi-isotropic media"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    unsigned workers = 0;
    std::uint64_t seed_override = 0;
    bool seed_given = false;
    double tol_override = 0.0;

    app.add_option("--config", config_path, "configuration file")->required();
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--workers", workers, "worker thread count (0: all processors)");
    app.add_option("--seed", seed_override, "override the sampling seed")
        ->each([&](const std::string&) { seed_given = true; });
    app.add_option("--tol", tol_override, "override the field quadrature tolerance");

    auto* c_medium = app.add_subcommand("medium", "print derived medium quantities as JSON");
    auto* c_fact = app.add_subcommand("factorize", "factorize the kernel, dump diagnostics");
    auto* c_field = app.add_subcommand("fieldmap", "total-field grid as CSV");
    auto* c_far = app.add_subcommand("farfield", "diffraction coefficient cut as CSV");
    auto* c_verify = app.add_subcommand("verify", "run residual checkers, write JSON reports");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg = parse_config_file(config_path);
        if (seed_given) cfg.seed = seed_override;
        if (tol_override > 0.0) cfg.field_tol = tol_override;

        if (c_medium->parsed()) return cmd_medium(cfg);
        if (c_fact->parsed()) return cmd_factorize(cfg, out_dir);
        if (c_field->parsed()) return cmd_fieldmap(cfg, out_dir, workers);
        if (c_far->parsed()) return cmd_farfield(cfg, out_dir, workers);
        if (c_verify->parsed()) return cmd_verify(cfg, out_dir);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SingularMedium& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DecoupledCase& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const AchiralDegenerate& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const EvanescentPartialWave& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ToleranceNotMet& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const QuadratureFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
