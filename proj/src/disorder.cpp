#include "hjc/disorder.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "hjc/errors.hpp"
#include "hjc/parallel.hpp"
#include "hjc/polaron.hpp"
#include "hjc/rng.hpp"

namespace hjc {

void DisorderSpec::validate() const {
    if (sigma < 0.0) throw param_error("sigma must be non-negative");
    if (n_realizations < 1) throw param_error("n_realizations must be >= 1");
}

Detunings sample_detunings(const DisorderSpec& spec, std::uint64_t realization_index,
                           int n_sites) {
    spec.validate();
    if (realization_index >= static_cast<std::uint64_t>(spec.n_realizations))
        throw param_error("realization_index out of range");
    Rng rng(derive_seed(spec.seed, realization_index));
    Detunings d(static_cast<std::size_t>(n_sites));
    for (auto& x : d) x = spec.sigma * rng.gaussian();
    return d;
}

double percentile(std::vector<double> data, double level) {
    if (data.empty()) throw param_error("percentile of empty data");
    std::sort(data.begin(), data.end());
    const double rank = level / 100.0 * static_cast<double>(data.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(rank));
    const std::size_t hi = std::min(lo + 1, data.size() - 1);
    const double frac = rank - static_cast<double>(lo);
    return data[lo] * (1.0 - frac) + data[hi] * frac;
}

EnsembleStats ensemble_p0(const ModelParams& params, const DisorderSpec& spec,
                          const SolverOptions& solver_options, int n_threads) {
    params.validate();
    spec.validate();
    const std::size_t n = static_cast<std::size_t>(spec.n_realizations);

    struct Slot {
        std::optional<double> p0;
        std::string error;
    };
    std::vector<Slot> slots(n);

    parallel_for(n, n_threads, [&](std::size_t i) {
        try {
            const Detunings det = sample_detunings(spec, i, params.n_molecules);
            SolverOptions so = solver_options;
            // Per-realization solver seed from the same documented stream.
            so.seed = derive_seed(derive_seed(spec.seed, i), 1);
            slots[i].p0 = compute_p0(params, det, so).p0;
        } catch (const std::exception& e) {
            slots[i].error = e.what();
        }
    });

    EnsembleStats stats;
    stats.bound = std::exp(-params.lambda_e * params.lambda_e /
                           (4.0 * static_cast<double>(params.n_molecules)));
    std::vector<double> ok;
    ok.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (slots[i].p0) {
            ok.push_back(*slots[i].p0);
        } else {
            ++stats.n_failed;
            stats.failures.push_back("realization " + std::to_string(i) + ": " + slots[i].error);
        }
    }
    if (static_cast<double>(stats.n_failed) > 0.01 * static_cast<double>(n))
        throw solver_error("more than 1% of disorder realizations failed (" +
                               std::to_string(stats.n_failed) + " of " + std::to_string(n) + ")",
                           0.0);
    if (ok.empty())
        throw solver_error("no disorder realization succeeded", 0.0);

    stats.min = *std::min_element(ok.begin(), ok.end());
    stats.max = *std::max_element(ok.begin(), ok.end());
    double sum = 0.0;
    for (const double v : ok) sum += v;
    stats.mean = sum / static_cast<double>(ok.size());
    double ss = 0.0;
    for (const double v : ok) ss += (v - stats.mean) * (v - stats.mean);
    stats.stddev = ok.size() > 1 ? std::sqrt(ss / static_cast<double>(ok.size() - 1)) : 0.0;
    for (std::size_t j = 0; j < kPercentileLevels.size(); ++j)
        stats.percentiles[j] = percentile(ok, kPercentileLevels[j]);
    if (spec.keep_values) stats.p0_values = std::move(ok);
    return stats;
}

} // namespace hjc
