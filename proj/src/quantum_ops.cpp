#include "hjc/quantum_ops.hpp"

#include <cmath>

#include "hjc/errors.hpp"

namespace hjc {

namespace {

// Associated Laguerre L_n^(a)(x) by the three-term recurrence in n.
double laguerre(int n, int a, double x) {
    if (n == 0) return 1.0;
    double lm1 = 1.0;
    double l = 1.0 + a - x;
    for (int k = 1; k < n; ++k) {
        double lp1 = ((2.0 * k + 1.0 + a - x) * l - (k + a) * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

} // namespace

double displacement_element(int m, int n, double lambda) {
    if (m < 0 || n < 0) throw param_error("displacement_element: negative quantum number");
    if (lambda == 0.0) return m == n ? 1.0 : 0.0;
    if (m < n) {
        // <m|D|n> = (-1)^(m-n) <n|D|m> for real lambda
        double s = ((n - m) % 2 == 0) ? 1.0 : -1.0;
        return s * displacement_element(n, m, lambda);
    }
    const int d = m - n;
    const double x = lambda * lambda;
    // log-magnitude form avoids factorial overflow for large m, n
    double logmag = -0.5 * x + 0.5 * (std::lgamma(n + 1.0) - std::lgamma(m + 1.0))
                    + d * std::log(std::abs(lambda));
    double sign = (lambda < 0.0 && d % 2 != 0) ? -1.0 : 1.0;
    double lag = laguerre(n, d, x);
    return sign * std::exp(logmag) * lag;
}

double fc_factor(int m, int n, double lambda_rel) {
    double a = displacement_element(m, n, lambda_rel);
    return a * a;
}

std::vector<double> boltzmann_weights(double kbt, double omega_v, int m_max) {
    if (omega_v <= 0.0) throw param_error("boltzmann_weights: omega_v must be positive");
    if (kbt < 0.0) throw param_error("boltzmann_weights: negative kbt");
    if (m_max < 0) throw param_error("boltzmann_weights: negative m_max");
    std::vector<double> w(static_cast<std::size_t>(m_max) + 1, 0.0);
    if (kbt == 0.0) {
        w[0] = 1.0;
        return w;
    }
    double z = 0.0;
    for (int mq = 0; mq <= m_max; ++mq) {
        w[mq] = std::exp(-mq * omega_v / kbt);
        z += w[mq];
    }
    for (auto& x : w) x /= z;
    return w;
}

} // namespace hjc
