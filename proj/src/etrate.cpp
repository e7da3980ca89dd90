#include "hjc/etrate.hpp"

#include <cmath>
#include <numbers>

#include "hjc/errors.hpp"
#include "hjc/quantum_ops.hpp"

namespace hjc {

void ETParams::validate() const {
    if (!(omega_v > 0.0)) throw param_error("omega_v must be positive");
    if (!(gamma_v > 0.0)) throw param_error("gamma_v must be positive");
    if (kbt < 0.0) throw param_error("kbt must be non-negative");
    if (n_molecules < 1.0) throw param_error("n_molecules must be >= 1");
    if (m_max < 0) throw param_error("m_max must be non-negative");
}

double lineshape(double delta, double gamma) {
    if (!(gamma > 0.0)) throw param_error("lineshape width must be positive");
    return gamma / (std::numbers::pi * (delta * delta + gamma * gamma));
}

namespace {

RateResult channel_sum(const ETParams& p, double lambda_rel, double prefactor,
                       double resonance_offset, Environment env) {
    p.validate();
    RateResult res;
    res.environment = env;
    if (p.v_coh > 0.1 * p.omega_v)
        res.warning = "v_coh exceeds 0.1 omega_v: outside the non-adiabatic regime";
    const std::vector<double> eta = boltzmann_weights(p.kbt, p.omega_v, p.m_max);
    res.channels.reserve(static_cast<std::size_t>(p.m_max + 1) *
                         static_cast<std::size_t>(p.m_max + 1));
    for (int md = 0; md <= p.m_max; ++md) {
        for (int ma = 0; ma <= p.m_max; ++ma) {
            Channel c;
            c.m_d = md;
            c.m_a = ma;
            c.weight = eta[static_cast<std::size_t>(md)];
            c.fc = fc_factor(md, ma, lambda_rel);
            c.lineshape =
                lineshape(p.delta_e_drive + (md - ma) * p.omega_v + resonance_offset, p.gamma_v);
            c.contribution = prefactor * c.weight * c.fc * c.lineshape;
            res.rate += c.contribution;
            res.channels.push_back(c);
        }
    }
    return res;
}

} // namespace

RateResult et_rate_free(const ETParams& p) {
    return channel_sum(p, p.lambda_d - p.lambda_a, 1.0, 0.0, Environment::Free);
}

RateResult et_rate_cavity(const ETParams& p) {
    const double n = p.n_molecules;
    const double lambda_eff = p.lambda_d / (2.0 * n) - p.lambda_a;
    const double stokes =
        p.include_stokes_shift ? p.omega_v * p.lambda_d * p.lambda_d / (4.0 * n) : 0.0;
    return channel_sum(p, lambda_eff, 0.5, stokes, Environment::Cavity);
}

double large_n_ratio(double lambda_d, double lambda_a) {
    return 0.5 * std::exp(lambda_d * lambda_d - 2.0 * lambda_d * lambda_a);
}

std::vector<RatioPoint> sweep_ratio(const ETParams& base, RatioAxis axis,
                                    const std::vector<double>& values,
                                    const std::vector<double>& delta_e_values) {
    std::vector<RatioPoint> out;
    out.reserve(values.size() * delta_e_values.size());
    for (const double v : values) {
        for (const double de : delta_e_values) {
            ETParams p = base;
            if (axis == RatioAxis::NMolecules)
                p.n_molecules = v;
            else
                p.lambda_d = v * p.lambda_a;
            p.delta_e_drive = de;
            RatioPoint pt;
            pt.axis_value = v;
            pt.delta_e = de;
            pt.n_molecules = p.n_molecules;
            pt.lambda_d = p.lambda_d;
            pt.lambda_a = p.lambda_a;
            pt.include_stokes_shift = p.include_stokes_shift;
            pt.k_cavity = et_rate_cavity(p).rate;
            pt.k_free = et_rate_free(p).rate;
            pt.ratio = pt.k_free > 0.0 ? pt.k_cavity / pt.k_free : 0.0;
            pt.asymptote = large_n_ratio(p.lambda_d, p.lambda_a);
            out.push_back(pt);
        }
    }
    return out;
}

} // namespace hjc
