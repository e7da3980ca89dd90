#include "hjc/polaron.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "hjc/errors.hpp"
#include "hjc/parallel.hpp"
#include "hjc/quantum_ops.hpp"
#include "hjc/rng.hpp"

namespace hjc {

namespace {

// Eigenvector of the zero-phonon cavity block [[0, hge],[conj(hge), delta]]
// for the lower (Minus) or upper (Plus) eigenvalue, phase-fixed so the
// second (|Excited(0)>) component is real non-negative.
Eigen::Vector2cd cavity_block_vector(const ModelParams& p, Branch branch,
                                     const HamiltonianOptions& options) {
    const double g = std::sqrt(static_cast<double>(p.n_molecules)) * p.omega_rabi / 2.0;
    const Complex hge = options.real_gauge ? Complex{g, 0.0} : Complex{0.0, g};
    Eigen::Matrix2cd block;
    block << Complex{0.0, 0.0}, hge, std::conj(hge), Complex{p.detuning_total(), 0.0};
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(block);
    Eigen::Vector2cd v = es.eigenvectors().col(branch == Branch::Minus ? 0 : 1);
    Complex anchor = v(1);
    if (std::abs(anchor) < 1e-14) anchor = v(0);
    v *= std::conj(anchor) / std::abs(anchor);
    return v;
}

} // namespace

std::vector<Complex> dressed_state_vector(const Basis& basis, Branch branch, int m_sym,
                                          const HamiltonianOptions& options) {
    const ModelParams& p = basis.params();
    if (m_sym < 0 || m_sym > p.trunc.m_sym_max)
        throw param_error("m_sym outside the truncation");
    const Eigen::Vector2cd psi = cavity_block_vector(p, branch, options);
    const double shift = p.lambda_e / (2.0 * std::sqrt(static_cast<double>(p.n_molecules)));

    std::vector<Complex> out(basis.dim(), Complex{0.0, 0.0});
    BasisState g_state = BasisState::ground(p.n_molecules);
    BasisState e_state = BasisState::excited(0, p.n_molecules);
    for (int m = 0; m <= p.trunc.m_sym_max; ++m) {
        if (p.trunc.m_total_max && m > *p.trunc.m_total_max) break;
        // <m| D^dag(shift) |m_sym> = <m| D(-shift) |m_sym>
        const double amp = displacement_element(m, m_sym, -shift);
        g_state.phonons[0] = m;
        e_state.phonons[0] = m;
        out[basis.index_of(g_state)] = psi(0) * amp;
        out[basis.index_of(e_state)] = psi(1) * amp;
    }
    return out;
}

double dressed_energy(const ModelParams& params, Branch branch, int m_sym,
                      std::span<const int> nonsym_occupations) {
    if (m_sym < 0 || m_sym > params.trunc.m_sym_max)
        throw param_error("m_sym outside the truncation");
    long nonsym = 0;
    for (const int m : nonsym_occupations) {
        if (m < 0 || m > params.trunc.m_nonsym_max)
            throw param_error("non-symmetric occupation outside the truncation");
        nonsym += m;
    }
    const double g =
        std::sqrt(static_cast<double>(params.n_molecules)) * params.omega_rabi / 2.0;
    const double sign = (branch == Branch::Plus) ? 1.0 : -1.0;
    return sign * g + params.omega_v * m_sym + params.omega_v * static_cast<double>(nonsym);
}

P0Result compute_p0(const ModelParams& params, const std::optional<Detunings>& detunings,
                    const SolverOptions& solver_options) {
    const Basis basis(params);
    const SparseHermitian h = build_hjc(basis, detunings);

    SolverOptions opt = solver_options;
    opt.n_pairs = 2;  // second pair detects ground-state degeneracy
    const EigenResult ground = lowest_eigenpairs(h, opt);

    // Target |psi_-; m=0> evaluated at zero displacement: same basis and
    // Rabi coupling, lambda_e = 0 (this also zeroes the block detuning
    // shift omega_v lambda_e^2, as the definition requires).
    ModelParams target_params = params;
    target_params.lambda_e = 0.0;
    const Basis target_basis(target_params);
    const std::vector<Complex> t = dressed_state_vector(target_basis, Branch::Minus, 0);

    auto overlap2 = [&](const std::vector<Complex>& v) {
        Complex acc{0.0, 0.0};
        for (std::size_t i = 0; i < v.size(); ++i) acc += std::conj(v[i]) * t[i];
        return std::norm(acc);
    };

    P0Result res;
    res.params = params;
    res.dim = basis.dim();
    res.ground_energy = ground.eigenvalues.at(0);
    res.residual = ground.residuals.at(0);
    res.bound = std::exp(-params.lambda_e * params.lambda_e /
                         (4.0 * static_cast<double>(params.n_molecules)));
    res.p0 = overlap2(ground.eigenvectors.at(0));
    if (ground.eigenvalues.size() > 1 &&
        ground.eigenvalues[1] - ground.eigenvalues[0] < 1e-10)
        res.p0 += overlap2(ground.eigenvectors.at(1));
    return res;
}

std::vector<P0SweepPoint> sweep_p0(const ModelParams& base, P0Axis axis,
                                   const std::vector<double>& values,
                                   const SolverOptions& solver_options, int n_threads) {
    std::vector<P0SweepPoint> out(values.size());
    parallel_for(values.size(), n_threads, [&](std::size_t i) {
        P0SweepPoint& pt = out[i];
        pt.axis_value = values[i];
        try {
            ModelParams p = base;
            if (axis == P0Axis::NMolecules)
                p.n_molecules = static_cast<int>(values[i]);
            else
                p.omega_rabi = values[i];
            SolverOptions so = solver_options;
            so.seed = derive_seed(solver_options.seed, i);
            pt.result = compute_p0(p, std::nullopt, so);
        } catch (const std::exception& e) {
            pt.error = e.what();
        }
    });
    return out;
}

} // namespace hjc
