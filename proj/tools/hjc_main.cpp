// hjc: Holstein-Jaynes-Cummings cavity-QED simulator CLI.
//
// Subcommands: spectrum, p0-sweep, disorder-ensemble, et-rate.  Each run
// reads a sectioned key-value config, writes one CSV (plus an optional
// per-realization CSV) and a JSON manifest with content digests.
//
// Exit codes: 0 success, 2 configuration error, 3 solver non-convergence
// (manifest still written), 4 I/O error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hjc/config.hpp"
#include "hjc/csv.hpp"
#include "hjc/disorder.hpp"
#include "hjc/errors.hpp"
#include "hjc/etrate.hpp"
#include "hjc/hamiltonian.hpp"
#include "hjc/manifest.hpp"
#include "hjc/model.hpp"
#include "hjc/parallel.hpp"
#include "hjc/polaron.hpp"
#include "hjc/rng.hpp"
#include "hjc/solver.hpp"
#include "hjc/version.hpp"

namespace {

using nlohmann::json;

struct CommonFlags {
    std::string config_path;
    std::optional<int> threads;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<std::string> mode;
    std::optional<long> dense_threshold;
};

// Flag > environment variable > config file (CLI11 consumes the env var
// when the flag is absent, so both arrive through the same option).
void apply_overrides(hjc::RunConfig& cfg, const CommonFlags& f) {
    if (f.threads) cfg.threads = *f.threads;
    if (f.seed) cfg.seed = *f.seed;
    if (f.out_dir) cfg.out_dir = *f.out_dir;
    if (f.mode) cfg.mode = *f.mode;
    if (f.dense_threshold) cfg.solver.dense_threshold = static_cast<std::size_t>(*f.dense_threshold);
    if (cfg.threads == 0) cfg.threads = static_cast<int>(hjc::available_parallelism());
}

json model_json(const hjc::ModelParams& m) {
    json j{{"n_molecules", m.n_molecules}, {"omega_v", m.omega_v},
           {"lambda_e", m.lambda_e},       {"omega_rabi", m.omega_rabi},
           {"delta_e", m.delta_e},         {"n_cav_max", m.n_cav_max},
           {"m_sym_max", m.trunc.m_sym_max}, {"m_nonsym_max", m.trunc.m_nonsym_max}};
    if (m.trunc.m_total_max) j["m_total_max"] = *m.trunc.m_total_max;
    else j["m_total_max"] = nullptr;
    return j;
}

json solver_json(const hjc::SolverOptions& s) {
    return json{{"tol", s.tol},
                {"max_matvecs", s.max_matvecs},
                {"krylov_dim", s.krylov_dim},
                {"dense_threshold", s.dense_threshold}};
}

json etrate_json(const hjc::ETParams& p) {
    return json{{"lambda_d", p.lambda_d},   {"lambda_a", p.lambda_a},
                {"omega_v", p.omega_v},     {"gamma_v", p.gamma_v},
                {"kbt", p.kbt},             {"v_coh", p.v_coh},
                {"delta_e_drive", p.delta_e_drive}, {"n_molecules", p.n_molecules},
                {"m_max", p.m_max},         {"include_stokes_shift", p.include_stokes_shift}};
}

class Run {
public:
    Run(const hjc::RunConfig& cfg, std::string subcommand)
        : cfg_(cfg), subcommand_(std::move(subcommand)),
          start_(std::chrono::steady_clock::now()) {
        label_ = cfg.label.empty() ? subcommand_ : cfg.label;
        std::filesystem::create_directories(cfg.out_dir);
        manifest_["tool"] = hjc::kToolName;
        manifest_["version"] = hjc::kToolVersion;
        manifest_["subcommand"] = subcommand_;
        manifest_["seed"] = cfg.seed;
        manifest_["threads"] = cfg.threads;
        manifest_["config"] = {{"model", model_json(cfg.model)},
                               {"solver", solver_json(cfg.solver)},
                               {"run",
                                {{"mode", cfg.mode},
                                 {"out_dir", cfg.out_dir},
                                 {"label", label_},
                                 {"real_gauge", cfg.real_gauge}}}};
        manifest_["flags"] = {{"lineshape", "lorentzian"},
                              {"cavity_et_model", "dressed-donor lambda_d/2N, polariton weight 1/2"},
                              {"real_gauge", cfg.real_gauge}};
    }

    std::string out_path(const std::string& suffix) const {
        return (std::filesystem::path(cfg_.out_dir) / (label_ + suffix)).string();
    }

    void register_output(const std::string& path) {
        manifest_["outputs"].push_back(
            json{{"path", path}, {"fnv1a64", hjc::fnv1a64_file_hex(path)}});
    }

    json& manifest() { return manifest_; }

    // Returns the process exit code.
    int finish(int code, const std::string& status, const std::string& error = "") {
        const auto dt = std::chrono::steady_clock::now() - start_;
        manifest_["wall_seconds"] = std::chrono::duration<double>(dt).count();
        manifest_["status"] = status;
        if (!error.empty()) manifest_["error"] = error;
        hjc::write_json_file(manifest_, out_path("_manifest.json"));
        return code;
    }

private:
    const hjc::RunConfig& cfg_;
    std::string subcommand_;
    std::string label_;
    json manifest_;
    std::chrono::steady_clock::time_point start_;
};

int run_spectrum(const hjc::RunConfig& cfg) {
    Run run(cfg, "spectrum");
    run.manifest()["config"]["spectrum"] = {{"n_pairs", cfg.spectrum_n_pairs}};

    const hjc::Basis basis(cfg.model);
    const hjc::SparseHermitian h =
        hjc::build_hjc(basis, std::nullopt, {.real_gauge = cfg.real_gauge});
    hjc::SolverOptions so = cfg.solver;
    so.n_pairs = cfg.spectrum_n_pairs;
    so.seed = cfg.seed;
    so.matvec_threads = cfg.threads;

    hjc::EigenResult res;
    try {
        res = hjc::lowest_eigenpairs(h, so);
    } catch (const hjc::solver_error& e) {
        std::cerr << "hjc spectrum: " << e.what()
                  << " (best residual " << e.best_residual() << ")\n";
        return run.finish(3, "solver_error", e.what());
    }

    // Nearest analytic dressed level: sign * sqrtN Omega/2 + omega_v * M.
    const double g = std::sqrt(static_cast<double>(cfg.model.n_molecules)) *
                     cfg.model.omega_rabi / 2.0;
    const double w = cfg.model.omega_v;
    auto nearest = [&](double e) {
        double best = 1e300;
        int best_sign = -1;
        long best_m = 0;
        for (const int sign : {-1, 1}) {
            const double m_real = (e - sign * g) / w;
            for (long m : {static_cast<long>(std::floor(m_real)),
                           static_cast<long>(std::ceil(m_real))}) {
                if (m < 0) m = 0;
                const double cand = sign * g + w * static_cast<double>(m);
                if (std::abs(e - cand) < std::abs(e - best)) {
                    best = cand;
                    best_sign = sign;
                    best_m = m;
                }
            }
        }
        return std::tuple<double, int, long>{best, best_sign, best_m};
    };

    hjc::CsvWriter csv(run.out_path(".csv"),
                       {"index", "energy", "residual", "analytic_energy",
                        "analytic_branch", "analytic_m_total", "offset"});
    json diag = json::array();
    for (std::size_t i = 0; i < res.eigenvalues.size(); ++i) {
        const auto [ae, sign, m] = nearest(res.eigenvalues[i]);
        csv.row({static_cast<std::uint64_t>(i), res.eigenvalues[i], res.residuals[i], ae,
                 static_cast<std::int64_t>(sign), static_cast<std::int64_t>(m),
                 res.eigenvalues[i] - ae});
    }
    csv.close();
    diag.push_back(json{{"dim", basis.dim()},
                        {"iterations", res.iterations},
                        {"used_dense", res.used_dense},
                        {"max_residual",
                         res.residuals.empty()
                             ? 0.0
                             : *std::max_element(res.residuals.begin(), res.residuals.end())}});
    run.manifest()["solver_diagnostics"] = diag;
    run.register_output(run.out_path(".csv"));
    return run.finish(0, "ok");
}

int run_p0_sweep(const hjc::RunConfig& cfg) {
    Run run(cfg, "p0-sweep");
    run.manifest()["config"]["p0_sweep"] = {{"axis", cfg.p0_axis},
                                            {"values", cfg.p0_values},
                                            {"omega_rabi_values", cfg.p0_rabi_values}};
    if (cfg.p0_values.empty()) {
        std::cerr << "hjc p0-sweep: [p0_sweep] values is empty\n";
        return run.finish(2, "config_error", "empty sweep");
    }

    // Work items: outer product of the Rabi family (optional) and the axis
    // values.  Each item is an independent solve with its own derived seed.
    const std::vector<double> rabi_family =
        cfg.p0_rabi_values.empty() ? std::vector<double>{cfg.model.omega_rabi}
                                   : cfg.p0_rabi_values;
    struct Item {
        double omega_rabi, axis_value;
        hjc::P0SweepPoint point;
    };
    std::vector<Item> items;
    for (const double om : rabi_family)
        for (const double v : cfg.p0_values)
            items.push_back({om, v, {}});

    hjc::parallel_for(items.size(), cfg.threads, [&](std::size_t i) {
        Item& it = items[i];
        it.point.axis_value = it.axis_value;
        try {
            hjc::ModelParams p = cfg.model;
            p.omega_rabi = it.omega_rabi;
            if (cfg.p0_axis == "n_molecules")
                p.n_molecules = static_cast<int>(it.axis_value);
            else
                p.omega_rabi = it.axis_value;
            hjc::SolverOptions so = cfg.solver;
            so.seed = hjc::derive_seed(cfg.seed, i);
            it.point.result = hjc::compute_p0(p, std::nullopt, so);
        } catch (const std::exception& e) {
            it.point.error = e.what();
        }
    });

    hjc::CsvWriter csv(run.out_path(".csv"),
                       {"n_molecules", "omega_rabi", "lambda_e", "p0", "bound",
                        "ground_energy", "residual", "dim", "error"});
    json diag = json::array();
    int n_failed = 0;
    for (const Item& it : items) {
        const bool is_n_axis = cfg.p0_axis == "n_molecules";
        const std::int64_t n_mol = is_n_axis ? static_cast<std::int64_t>(it.axis_value)
                                             : cfg.model.n_molecules;
        const double om = is_n_axis ? it.omega_rabi : it.axis_value;
        if (it.point.result) {
            const hjc::P0Result& r = *it.point.result;
            csv.row({n_mol, om, cfg.model.lambda_e, r.p0, r.bound, r.ground_energy,
                     r.residual, static_cast<std::uint64_t>(r.dim), std::string{}});
            diag.push_back(json{{"n_molecules", n_mol}, {"omega_rabi", om},
                                {"dim", r.dim}, {"residual", r.residual}});
        } else {
            ++n_failed;
            csv.row({n_mol, om, cfg.model.lambda_e, std::nan(""), std::nan(""),
                     std::nan(""), std::nan(""), std::uint64_t{0}, it.point.error});
            diag.push_back(json{{"n_molecules", n_mol}, {"omega_rabi", om},
                                {"error", it.point.error}});
        }
    }
    csv.close();
    run.manifest()["solver_diagnostics"] = diag;
    run.register_output(run.out_path(".csv"));
    if (n_failed > 0) {
        std::cerr << "hjc p0-sweep: " << n_failed << " point(s) failed\n";
        return run.finish(3, "solver_error", std::to_string(n_failed) + " points failed");
    }
    return run.finish(0, "ok");
}

int run_disorder(const hjc::RunConfig& cfg) {
    Run run(cfg, "disorder-ensemble");
    run.manifest()["config"]["disorder"] = {{"sigma", cfg.disorder.sigma},
                                            {"n_realizations", cfg.disorder.n_realizations},
                                            {"ratios", cfg.disorder_ratios},
                                            {"vary", cfg.disorder_vary},
                                            {"keep_values", cfg.disorder.keep_values}};
    if (cfg.disorder_ratios.empty()) {
        std::cerr << "hjc disorder-ensemble: [disorder] ratios is empty\n";
        return run.finish(2, "config_error", "empty ratio list");
    }

    hjc::CsvWriter csv(run.out_path(".csv"),
                       {"omega_rabi", "sigma", "ratio", "n_realizations", "n_failed",
                        "mean", "stddev", "min", "p5", "p25", "p50", "p75", "p95",
                        "max", "bound"});
    std::optional<hjc::CsvWriter> dump;
    if (cfg.disorder.keep_values)
        dump.emplace(run.out_path("_realizations.csv"),
                     std::vector<std::string>{"point_index", "omega_rabi", "sigma",
                                              "success_index", "p0"});
    json diag = json::array();
    std::string first_error;
    for (std::size_t pi = 0; pi < cfg.disorder_ratios.size(); ++pi) {
        const double ratio = cfg.disorder_ratios[pi];
        hjc::ModelParams p = cfg.model;
        hjc::DisorderSpec spec = cfg.disorder;
        if (cfg.disorder_vary == "omega_rabi")
            p.omega_rabi = ratio * spec.sigma;
        else
            spec.sigma = ratio > 0.0 ? p.omega_rabi / ratio : 0.0;
        spec.seed = hjc::derive_seed(cfg.seed, pi);
        hjc::SolverOptions so = cfg.solver;
        try {
            const hjc::EnsembleStats st = hjc::ensemble_p0(p, spec, so, cfg.threads);
            csv.row({p.omega_rabi, spec.sigma, ratio,
                     static_cast<std::int64_t>(spec.n_realizations),
                     static_cast<std::int64_t>(st.n_failed), st.mean, st.stddev, st.min,
                     st.percentiles[0], st.percentiles[1], st.percentiles[2],
                     st.percentiles[3], st.percentiles[4], st.max, st.bound});
            if (dump)
                for (std::size_t ri = 0; ri < st.p0_values.size(); ++ri)
                    dump->row({static_cast<std::uint64_t>(pi), p.omega_rabi, spec.sigma,
                               static_cast<std::uint64_t>(ri), st.p0_values[ri]});
            diag.push_back(json{{"ratio", ratio}, {"omega_rabi", p.omega_rabi},
                                {"sigma", spec.sigma}, {"n_failed", st.n_failed},
                                {"failures", st.failures}});
        } catch (const hjc::solver_error& e) {
            if (first_error.empty()) first_error = e.what();
            csv.row({p.omega_rabi, spec.sigma, ratio,
                     static_cast<std::int64_t>(spec.n_realizations),
                     static_cast<std::int64_t>(spec.n_realizations), std::nan(""),
                     std::nan(""), std::nan(""), std::nan(""), std::nan(""), std::nan(""),
                     std::nan(""), std::nan(""), std::nan(""), std::nan("")});
            diag.push_back(json{{"ratio", ratio}, {"error", e.what()}});
        }
    }
    csv.close();
    if (dump) {
        dump->close();
        run.register_output(run.out_path("_realizations.csv"));
    }
    run.manifest()["solver_diagnostics"] = diag;
    run.register_output(run.out_path(".csv"));
    if (!first_error.empty()) {
        std::cerr << "hjc disorder-ensemble: " << first_error << "\n";
        return run.finish(3, "solver_error", first_error);
    }
    return run.finish(0, "ok");
}

int run_etrate(const hjc::RunConfig& cfg) {
    Run run(cfg, "et-rate");
    // --mode overrides the sweep axis; an explicit [etrate] axis is used
    // otherwise.
    std::string axis = cfg.etrate_axis;
    if (cfg.mode == "n_molecules" || cfg.mode == "lambda_ratio") {
        axis = cfg.mode;
    } else if (!cfg.mode.empty() && cfg.mode != "default") {
        std::cerr << "hjc et-rate: unknown mode '" << cfg.mode
                  << "' (use n_molecules or lambda_ratio)\n";
        return run.finish(2, "config_error", "unknown mode");
    }
    run.manifest()["config"]["etrate"] = etrate_json(cfg.etrate);
    run.manifest()["config"]["etrate"]["axis"] = axis;
    run.manifest()["config"]["etrate"]["values"] = cfg.etrate_values;
    run.manifest()["config"]["etrate"]["delta_e_values"] = cfg.etrate_delta_e;
    if (cfg.etrate_values.empty()) {
        std::cerr << "hjc et-rate: [etrate] values is empty\n";
        return run.finish(2, "config_error", "empty sweep");
    }

    const hjc::RatioAxis ax = axis == "n_molecules" ? hjc::RatioAxis::NMolecules
                                                    : hjc::RatioAxis::LambdaRatio;
    // Both Stokes-shift variants are emitted so the finite-N model's
    // driving-force sensitivity is visible alongside the bare variant.
    std::vector<hjc::RatioPoint> rows;
    for (const bool stokes : {true, false}) {
        hjc::ETParams base = cfg.etrate;
        base.include_stokes_shift = stokes;
        const auto pts = hjc::sweep_ratio(base, ax, cfg.etrate_values, cfg.etrate_delta_e);
        rows.insert(rows.end(), pts.begin(), pts.end());
    }

    const std::string warning = hjc::et_rate_free(cfg.etrate).warning;
    if (!warning.empty()) std::cerr << "hjc et-rate: warning: " << warning << "\n";

    hjc::CsvWriter csv(run.out_path(".csv"),
                       {"axis", "axis_value", "delta_e", "n_molecules", "lambda_d",
                        "lambda_a", "k_cavity", "k_free", "ratio", "large_n_asymptote",
                        "include_stokes_shift"});
    for (const auto& r : rows)
        csv.row({axis, r.axis_value, r.delta_e, r.n_molecules, r.lambda_d, r.lambda_a,
                 r.k_cavity, r.k_free, r.ratio, r.asymptote,
                 static_cast<std::int64_t>(r.include_stokes_shift ? 1 : 0)});
    csv.close();
    if (!warning.empty()) run.manifest()["warnings"] = json::array({warning});
    run.register_output(run.out_path(".csv"));
    return run.finish(0, "ok");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Holstein-Jaynes-Cummings cavity-QED simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(hjc::kToolVersion));

    CommonFlags flags;
    std::vector<CLI::App*> subs;
    for (const char* name : {"spectrum", "p0-sweep", "disorder-ensemble", "et-rate"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", flags.config_path, "configuration file path")
            ->required();
        sub->add_option("--threads", flags.threads, "worker threads (0 = auto)")
            ->envname("HJC_THREADS");
        sub->add_option("--seed", flags.seed, "base RNG seed")->envname("HJC_SEED");
        sub->add_option("--out-dir", flags.out_dir, "output directory")
            ->envname("HJC_OUT_DIR");
        sub->add_option("--mode", flags.mode,
                        "sweep-axis override (et-rate: n_molecules | lambda_ratio)")
            ->envname("HJC_MODE");
        sub->add_option("--dense-threshold", flags.dense_threshold,
                        "dense-solver dimension cutoff")
            ->envname("HJC_DENSE_THRESHOLD");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        hjc::RunConfig cfg = hjc::load_config(flags.config_path);
        apply_overrides(cfg, flags);
        if (subs[0]->parsed()) return run_spectrum(cfg);
        if (subs[1]->parsed()) return run_p0_sweep(cfg);
        if (subs[2]->parsed()) return run_disorder(cfg);
        return run_etrate(cfg);
    } catch (const hjc::config_error& e) {
        std::cerr << "hjc: configuration error: " << e.what() << "\n";
        return 2;
    } catch (const hjc::param_error& e) {
        std::cerr << "hjc: invalid parameter: " << e.what() << "\n";
        return 2;
    } catch (const hjc::solver_error& e) {
        std::cerr << "hjc: solver failure: " << e.what() << "\n";
        return 3;
    } catch (const hjc::io_error& e) {
        std::cerr << "hjc: I/O error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "hjc: error: " << e.what() << "\n";
        return 1;
    }
}
