#pragma once

// Sectioned key-value configuration files.  Unknown sections or keys are
// hard errors so typos cannot silently fall back to defaults.  All
// physical values are in units of omega_v.
//
// Schema (defaults in parentheses):
//
//   [model]    n_molecules (1), omega_v (1.0), lambda_e (0.0),
//              omega_rabi (0.0), delta_e (0.0), m_sym_max (6),
//              m_nonsym_max (2), m_total_max (none)
//   [solver]   tol (1e-10), max_matvecs (200000), krylov_dim (48),
//              dense_threshold (2000)
//   [run]      mode (""), seed (1), threads (0 = auto), out_dir ("."),
//              label (mode name), real_gauge (false)
//   [spectrum] n_pairs (12)
//   [p0_sweep] axis (n_molecules), values (), omega_rabi_values ()
//   [disorder] sigma (0.1), n_realizations (100), ratios (),
//              vary (omega_rabi), keep_values (false)
//   [etrate]   lambda_d (0), lambda_a (0), gamma_v (0.01), kbt (0.1),
//              v_coh (0.01), m_max (8), n_molecules (1),
//              include_stokes_shift (true), axis (n_molecules),
//              values (), delta_e_values (0)
//
// List values are comma-separated numbers.  "values" for p0_sweep and the
// disorder "ratios" are the x-axis points (for disorder: omega_rabi/sigma
// when vary = omega_rabi, sigma alone is swept when vary = sigma).

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hjc/disorder.hpp"
#include "hjc/etrate.hpp"
#include "hjc/model.hpp"
#include "hjc/solver.hpp"

namespace hjc {

// Raw parse: ordered section -> key -> value strings.
using RawConfig = std::map<std::string, std::map<std::string, std::string>>;

RawConfig parse_config_text(const std::string& text, const std::string& origin);
RawConfig parse_config_file(const std::string& path);

struct RunConfig {
    ModelParams model;
    SolverOptions solver;

    std::string mode;
    std::uint64_t seed = 1;
    int threads = 0;  // 0 = available parallelism
    std::string out_dir = ".";
    std::string label;
    bool real_gauge = false;

    int spectrum_n_pairs = 12;

    std::string p0_axis = "n_molecules";
    std::vector<double> p0_values;
    std::vector<double> p0_rabi_values;

    DisorderSpec disorder;
    std::vector<double> disorder_ratios;
    std::string disorder_vary = "omega_rabi";

    ETParams etrate;
    std::string etrate_axis = "n_molecules";
    std::vector<double> etrate_values;
    std::vector<double> etrate_delta_e{0.0};
};

// Applies the schema above; throws config_error on unknown sections/keys,
// malformed numbers, or invariant violations.
RunConfig resolve_config(const RawConfig& raw);
RunConfig load_config(const std::string& path);

} // namespace hjc
