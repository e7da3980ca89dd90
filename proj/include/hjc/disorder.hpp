#pragma once

// Gaussian site-energy disorder: reproducible per-realization sampling and
// P0 ensemble statistics.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hjc/hamiltonian.hpp"
#include "hjc/model.hpp"
#include "hjc/solver.hpp"

namespace hjc {

struct DisorderSpec {
    double sigma = 0.0;        // standard deviation of the site detunings
    int n_realizations = 1;
    std::uint64_t seed = 1;
    bool keep_values = true;   // retain the per-realization P0 list

    void validate() const;     // throws param_error on violation
};

struct EnsembleStats {
    std::vector<double> p0_values;          // successful realizations, index order
    double min = 0.0, max = 0.0, mean = 0.0, stddev = 0.0;
    // Linear-interpolation percentiles at {5, 25, 50, 75, 95}.
    std::array<double, 5> percentiles{};
    double bound = 0.0;                     // exp(-lambda_e^2/4N)
    int n_failed = 0;
    std::vector<std::string> failures;      // messages for failed realizations
};

inline constexpr std::array<double, 5> kPercentileLevels{5.0, 25.0, 50.0, 75.0, 95.0};

// N independent Gaussian(0, sigma^2) detunings for one realization.  The
// stream is derived from (seed, realization_index) by the documented
// SplitMix64 hash split, so realizations are reproducible independently
// and in any order.
Detunings sample_detunings(const DisorderSpec& spec, std::uint64_t realization_index,
                           int n_sites);

// Percentile with linear interpolation between order statistics (the
// convention used throughout the statistics outputs).  data need not be
// sorted.
double percentile(std::vector<double> data, double level);

// compute_p0 over all realizations (parallel over realizations); result is
// independent of execution order and thread count.  Hard error if more
// than 1% of realizations fail to converge; otherwise statistics cover
// the successes and failures are reported in the stats.
EnsembleStats ensemble_p0(const ModelParams& params, const DisorderSpec& spec,
                          const SolverOptions& solver_options = {}, int n_threads = 1);

} // namespace hjc
