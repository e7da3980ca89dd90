#pragma once

// Non-adiabatic electron-transfer rates between displaced harmonic wells:
// free-space golden-rule rate, the cavity-modified rate for a collectively
// dressed donor, and the large-N asymptotic ratio.
//
// Rates are reported in units of 2 pi V^2 / omega_v (the coherent-transfer
// prefactor V is kept symbolic; the reported cavity/free comparisons are
// ratios in which it cancels).

#include <string>
#include <vector>

namespace hjc {

struct ETParams {
    double lambda_d = 0.0;    // donor displacement
    double lambda_a = 0.0;    // acceptor displacement
    double omega_v = 1.0;     // vibrational frequency (unit scale)
    double gamma_v = 0.01;    // vibrational relaxation rate
    double kbt = 0.1;         // thermal energy
    double v_coh = 0.01;      // coherent transfer amplitude (validity check only)
    double delta_e_drive = 0.0;  // driving force, same in cavity and free space
    double n_molecules = 1.0;    // ensemble size for the cavity rate; enters
                                 // only through lambda_d/2N and the residual
                                 // Stokes shift, so real values are allowed
    int m_max = 8;               // vibrational channel cap per well
    bool include_stokes_shift = true;  // residual collective shift omega_v lambda_d^2/4N

    void validate() const;  // throws param_error on violation
};

struct Channel {
    int m_d = 0, m_a = 0;
    double fc = 0.0;         // Franck-Condon factor of the channel
    double weight = 0.0;     // thermal weight of the donor level
    double lineshape = 0.0;  // spectral density at the channel mismatch
    double contribution = 0.0;
};

enum class Environment { Free, Cavity };

struct RateResult {
    double rate = 0.0;  // units of 2 pi V^2 / omega_v; equals the channel sum
    std::vector<Channel> channels;
    Environment environment = Environment::Free;
    std::string warning;  // set when outside the non-adiabatic validity regime
};

// Normalized Lorentzian (1/pi) gamma / (delta^2 + gamma^2).
double lineshape(double delta, double gamma);

// k0: thermal channel sum of Franck-Condon weighted Lorentzians at the
// relative displacement lambda_d - lambda_a.
RateResult et_rate_free(const ETParams& p);

// Cavity rate for a donor dressed by the collective vacuum coupling: the
// per-molecule donor displacement shrinks to lambda_d/2N, the polariton
// electronic weight contributes a global factor 1/2, and a residual
// collective Stokes shift omega_v lambda_d^2/4N offsets the channel
// resonance when include_stokes_shift is on.  Reproduces the analytic
// large-N ratio exactly as N -> infinity.
RateResult et_rate_cavity(const ETParams& p);

// Large-N asymptotic ratio k_cavity/k_free = (1/2) exp(lambda_d^2
// - 2 lambda_d lambda_a) for resonant tunneling.
double large_n_ratio(double lambda_d, double lambda_a);

enum class RatioAxis { NMolecules, LambdaRatio };

struct RatioPoint {
    double axis_value = 0.0;
    double delta_e = 0.0;
    double n_molecules = 1.0;
    double lambda_d = 0.0;
    double lambda_a = 0.0;
    double k_cavity = 0.0;
    double k_free = 0.0;
    double ratio = 0.0;
    double asymptote = 0.0;  // large_n_ratio at the point's displacements
    bool include_stokes_shift = true;
};

// Cartesian sweep: for each axis value and each driving force, computes
// both environments.  NMolecules varies n_molecules; LambdaRatio varies
// lambda_d = value * lambda_a at fixed n_molecules.
std::vector<RatioPoint> sweep_ratio(const ETParams& base, RatioAxis axis,
                                    const std::vector<double>& values,
                                    const std::vector<double>& delta_e_values);

} // namespace hjc
