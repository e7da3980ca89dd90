#pragma once

// Truncated harmonic-oscillator kernels: displacement-operator matrix
// elements, Franck-Condon factors and thermal occupation weights.

#include <vector>

namespace hjc {

// <m|D(lambda)|n> for the displacement D(lambda) = exp[lambda(b^dag - b)],
// lambda real.  Uses the associated-Laguerre closed form evaluated by a
// three-term recurrence; exact Kronecker delta at lambda = 0.
double displacement_element(int m, int n, double lambda);

// Franck-Condon factor |<m|D(lambda_rel)|n>|^2 between two harmonic wells
// whose minima differ by the dimensionless displacement lambda_rel.
double fc_factor(int m, int n, double lambda_rel);

// Thermal weights eta_m over m = 0..m_max for a mode of frequency omega_v
// at thermal energy kbt.  kbt = 0 returns (1, 0, ..., 0); normalized.
std::vector<double> boltzmann_weights(double kbt, double omega_v, int m_max);

} // namespace hjc
