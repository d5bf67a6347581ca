// tadpole — command-line front end for the tadpole-graph spectral library.
//
// Subcommands: spectrum | modes | kernel | evolve | figure2 | verify.
// Exit codes: 0 success, 1 usage/config error, 2 numerical failure.
#include "CLI11.hpp"
#include "json.hpp"

#include "tadpole/core.hpp"
#include "tadpole/evolution.hpp"
#include "tadpole/modes.hpp"
#include "tadpole/oracle.hpp"
#include "tadpole/resolvent.hpp"
#include "tadpole/secular.hpp"
#include "tadpole/spectrum.hpp"
#include "tadpole/verify.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tadpole;

namespace {

struct RunConfig {
    double L = 2.0 * std::numbers::pi;
    double alpha = 1.0;
    double x_max = -1.0; // -1: GraphParams default (16 L)
    double h1 = -1.0;    // -1: L/200
    double h2 = -1.0;    // -1: L/400
    int nmax = 30;
    int kmax = 5;
    double tmax = 2.0;
    double dt = 1e-3;
    std::string out_dir = ".";
    std::string seed_branch = "minus"; // plus | minus | both

    GraphParams params() const { return GraphParams::make(L, alpha, x_max, h1, h2); }

    json to_json() const {
        return {{"L", L},       {"alpha", alpha}, {"x_max", x_max},
                {"h1", h1},     {"h2", h2},       {"nmax", nmax},
                {"kmax", kmax}, {"tmax", tmax},   {"dt", dt},
                {"out_dir", out_dir}, {"seed_branch", seed_branch}};
    }
    std::string header() const { return to_json().dump(); }
};

void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot read config file: " + path);
    json j = json::parse(is);
    static const char* known[] = {"L",    "alpha", "x_max", "h1",      "h2",         "nmax",
                                  "kmax", "tmax",  "dt",    "out_dir", "seed_branch"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw std::invalid_argument("unknown config field: " + it.key());
    }
    if (j.contains("L")) cfg.L = j["L"];
    if (j.contains("alpha")) cfg.alpha = j["alpha"];
    if (j.contains("x_max")) cfg.x_max = j["x_max"];
    if (j.contains("h1")) cfg.h1 = j["h1"];
    if (j.contains("h2")) cfg.h2 = j["h2"];
    if (j.contains("nmax")) cfg.nmax = j["nmax"];
    if (j.contains("kmax")) cfg.kmax = j["kmax"];
    if (j.contains("tmax")) cfg.tmax = j["tmax"];
    if (j.contains("dt")) cfg.dt = j["dt"];
    if (j.contains("out_dir")) cfg.out_dir = j["out_dir"];
    if (j.contains("seed_branch")) cfg.seed_branch = j["seed_branch"];
}

void validate(const RunConfig& cfg) {
    if (!(cfg.L > 0)) throw std::invalid_argument("L must be positive");
    if (cfg.alpha < 0) throw std::invalid_argument("alpha must be nonnegative");
    if (cfg.nmax < 1 || cfg.kmax < 1)
        throw std::invalid_argument("nmax and kmax must be >= 1");
    if (!(cfg.tmax > 0) || !(cfg.dt > 0))
        throw std::invalid_argument("tmax and dt must be positive");
    if (cfg.seed_branch != "plus" && cfg.seed_branch != "minus" &&
        cfg.seed_branch != "both")
        throw std::invalid_argument("seed_branch must be plus|minus|both");
    fs::create_directories(cfg.out_dir);
    if (!fs::is_directory(cfg.out_dir))
        throw std::invalid_argument("out_dir is not writable: " + cfg.out_dir);
}

std::string outpath(const RunConfig& cfg, const std::string& name) {
    return (fs::path(cfg.out_dir) / name).string();
}

std::vector<SeedSign> branches(const RunConfig& cfg) {
    if (cfg.seed_branch == "plus") return {SeedSign::plus};
    if (cfg.seed_branch == "minus") return {SeedSign::minus};
    return {SeedSign::plus, SeedSign::minus};
}

int cmd_spectrum(const RunConfig& cfg) {
    GraphParams p = cfg.params();
    auto spec = point_spectrum(cfg.nmax, p);
    write_spectrum_csv(spec, outpath(cfg, "spectrum.csv"), cfg.header());

    // Deviation of the refined family from the Proposition 2.4 expansion.
    {
        std::ofstream os(outpath(cfg, "asymptotic_deviation.csv"));
        os << "# " << cfg.header() << "\n";
        os << "branch,n,re_lambda_sq,im_lambda_sq,re_expansion,im_expansion,abs_deviation\n";
        for (SeedSign sign : branches(cfg)) {
            const char* bname = sign == SeedSign::plus ? "plus" : "minus";
            for (const auto& pt : spec) {
                if (pt.family == Family::embedded || pt.index == 0) continue;
                Complex ref = prop24_lambda_sq(pt.index, p, sign);
                os << bname << ',' << pt.index << ','
                   << format_double(pt.lambda_sq.real()) << ','
                   << format_double(pt.lambda_sq.imag()) << ','
                   << format_double(ref.real()) << ',' << format_double(ref.imag())
                   << ',' << format_double(std::abs(pt.lambda_sq - ref)) << "\n";
            }
        }
    }

    // Certification sweep; any mismatch is a numerical failure.
    bool certified = true;
    for (int k = 1; k <= cfg.nmax; ++k) {
        double c = 2.0 * k * std::numbers::pi / cfg.L;
        double half = std::numbers::pi / cfg.L;
        RootCertificate cert =
            count_roots_rectangle(c - half, c + half, -0.4, 0.4, p);
        int found = 0;
        for (const auto& pt : spec)
            if (pt.lambda.real() > c - half && pt.lambda.real() < c + half &&
                std::abs(pt.lambda.imag()) < 0.4)
                ++found;
        if (cert.winding_count != found) {
            std::cerr << "uncertified rectangle around 2*pi*" << k << "/L: winding "
                      << cert.winding_count << ", roots " << found << "\n";
            certified = false;
        }
    }
    return certified ? 0 : 2;
}

int cmd_modes(const RunConfig& cfg) {
    GraphParams p = cfg.params();
    for (int k = 1; k <= cfg.kmax; ++k) {
        ModeFunction m = build_confined_mode(k, p);
        write_mode_json(m, outpath(cfg, "mode_confined_" + std::to_string(k) + ".json"));
    }
    auto spec = point_spectrum(cfg.nmax, p);
    for (const auto& pt : spec) {
        if (pt.family == Family::embedded) continue;
        ModeFunction m = build_damped_mode(pt, p);
        std::string tag = pt.index == 0 ? "disk" : std::to_string(pt.index);
        write_mode_json(m, outpath(cfg, "mode_damped_" + tag + ".json"));
        if (pt.index == 1 || pt.index == 0)
            write_csv(m.sampled(p), p,
                      outpath(cfg, "mode_damped_" + tag + ".csv"), cfg.header());
    }
    return 0;
}

int cmd_kernel(const RunConfig& cfg) {
    GraphParams p = cfg.params();
    KernelDecomposition dec(p);
    Complex z(-1.0, 2.0);
    EdgePoint y{Edge::r2, p.L / 3.0};
    write_kernel_slice_csv(dec, y, z, p, outpath(cfg, "kernel_slice.csv"), cfg.header());
    json rep = {{"path", dec.report().path == SplitPath::printed ? "printed" : "rederived"},
                {"printed_max_err", dec.report().printed_max_err},
                {"chosen_max_err", dec.report().chosen_max_err}};
    std::ofstream os(outpath(cfg, "kernel_report.json"));
    os << rep.dump(2) << "\n";
    return 0;
}

int cmd_evolve(const RunConfig& cfg) {
    GraphParams p = cfg.params();
    auto disk = disk_eigenvalue_search(p);
    std::vector<SpectralPoint> spec = embedded_eigenvalues(cfg.kmax, p);
    spec.insert(spec.end(), disk.begin(), disk.end());
    if (spec.empty()) {
        std::cerr << "no admissible modes for the modal evolution\n";
        return 2;
    }

    GraphFunction u0 = GraphFunction::zero(p);
    for (const auto& pt : spec) {
        ModeFunction m = pt.family == Family::embedded ? build_confined_mode(pt.index, p)
                                                       : build_damped_mode(pt, p);
        u0.axpy(Complex(1.0, 0.0), m.sampled(p));
    }
    u0.scale(1.0 / norm(u0, p));
    write_csv(u0, p, outpath(cfg, "u0.csv"), cfg.header());

    std::vector<double> times;
    for (double t = 0.0; t <= cfg.tmax + 1e-12; t += std::max(cfg.tmax / 100.0, cfg.dt))
        times.push_back(t);
    EnergyTrace tr = energy_trace(u0, spec, times, p);
    write_energy_trace_csv(tr, outpath(cfg, "energy.csv"), cfg.header());

    GraphFunction uT = evolve_modal(u0, spec, cfg.tmax, p);
    write_csv(uT, p, outpath(cfg, "u_final.csv"), cfg.header());

    DecayRateReport rep = decay_rate_report(point_spectrum(cfg.nmax, p), p);
    json jr = {{"sup_re_i_lambda_sq", rep.sup_re_i_lambda_sq},
               {"paper_rate_8a_3L", rep.paper_rate},
               {"omega_hat", tr.omega_hat}};
    std::ofstream os(outpath(cfg, "decay_report.json"));
    os << jr.dump(2) << "\n";
    return 0;
}

int cmd_figure2(const RunConfig& cfg) {
    std::vector<double> alphas{0.25, 0.5, 1.0, 2.0};
    json hdr = cfg.to_json();
    hdr["alpha_sweep"] = alphas;
    write_figure2_csv(outpath(cfg, "figure2.csv"), cfg.L, alphas, cfg.nmax, hdr.dump());
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    std::vector<CriterionResult> results = run_acceptance(cfg.out_dir);
    json out = {{"config", cfg.to_json()}, {"criteria", acceptance_to_json(results)}};
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        std::printf("criterion %2d [%s] %s (%.1fs)\n", r.id, r.passed ? "PASS" : "FAIL",
                    r.name.c_str(), r.runtime_s);
    }
    std::ofstream os(outpath(cfg, "verify.json"));
    os << out.dump(2) << "\n";
    return all ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tadpole-graph dissipative Schrodinger spectral toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    std::vector<std::pair<std::string, std::function<int(const RunConfig&)>>> cmds = {
        {"spectrum", cmd_spectrum}, {"modes", cmd_modes},     {"kernel", cmd_kernel},
        {"evolve", cmd_evolve},     {"figure2", cmd_figure2}, {"verify", cmd_verify}};

    for (auto& [name, fn] : cmds) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON config file (RunConfig fields)");
        sub->add_option("--L", cfg.L);
        sub->add_option("--alpha", cfg.alpha);
        sub->add_option("--nmax", cfg.nmax);
        sub->add_option("--kmax", cfg.kmax);
        sub->add_option("--xmax", cfg.x_max);
        sub->add_option("--h1", cfg.h1);
        sub->add_option("--h2", cfg.h2);
        sub->add_option("--tmax", cfg.tmax);
        sub->add_option("--dt", cfg.dt);
        sub->add_option("--out", cfg.out_dir);
        sub->add_option("--seed-branch", cfg.seed_branch);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 1 : 0;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        // Config file first, then flag overrides on top.
        if (!config_path.empty()) {
            RunConfig from_file;
            load_config_file(from_file, config_path);
            for (const char* flag : {"--L", "--alpha", "--nmax", "--kmax", "--xmax",
                                     "--h1", "--h2", "--tmax", "--dt", "--out",
                                     "--seed-branch"}) {
                if (sub->count(flag)) continue; // flag wins
                if (std::string(flag) == "--L") cfg.L = from_file.L;
                else if (std::string(flag) == "--alpha") cfg.alpha = from_file.alpha;
                else if (std::string(flag) == "--nmax") cfg.nmax = from_file.nmax;
                else if (std::string(flag) == "--kmax") cfg.kmax = from_file.kmax;
                else if (std::string(flag) == "--xmax") cfg.x_max = from_file.x_max;
                else if (std::string(flag) == "--h1") cfg.h1 = from_file.h1;
                else if (std::string(flag) == "--h2") cfg.h2 = from_file.h2;
                else if (std::string(flag) == "--tmax") cfg.tmax = from_file.tmax;
                else if (std::string(flag) == "--dt") cfg.dt = from_file.dt;
                else if (std::string(flag) == "--out") cfg.out_dir = from_file.out_dir;
                else cfg.seed_branch = from_file.seed_branch;
            }
        }
        validate(cfg);
        cfg.params(); // grid invariants (throws DomainError on bad geometry)
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }

    try {
        for (auto& [name, fn] : cmds)
            if (sub->get_name() == name) return fn(cfg);
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
}
