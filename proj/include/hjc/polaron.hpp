#pragma once

// Polaron-decoupling metric P0, its analytic bound exp(-lambda_e^2/4N),
// and the analytic dressed vibronic states.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hjc/hamiltonian.hpp"
#include "hjc/model.hpp"
#include "hjc/solver.hpp"

namespace hjc {

enum class Branch { Plus, Minus };

// Dressed state |branch; m_sym> = |psi_branch> (x) D^dag(lambda_e/2sqrtN)|m_sym>
// (x) |0...0>, expanded in the Basis ordering.  |psi_branch> is the exact
// eigenvector of the two-dimensional zero-phonon cavity block
// [[0, i g],[-i g, Delta]] (g = sqrtN Omega_e/2), lower eigenvalue for
// Minus; its phase is fixed by making the |Excited(0)> component real
// positive.  The vector is not renormalized: its norm reflects the
// truncation loss of the displaced symmetric mode.
std::vector<Complex> dressed_state_vector(const Basis& basis, Branch branch, int m_sym,
                                          const HamiltonianOptions& options = {});

// Dressed-level energy: (+/-) sqrtN Omega_e/2 + omega_v m_sym
// + omega_v sum(nonsym_occupations).  Collective Stokes shifts of order
// 1/N are ignored (the symmetric-mode quantum number is approximated by
// the occupation itself).
double dressed_energy(const ModelParams& params, Branch branch, int m_sym,
                      std::span<const int> nonsym_occupations);

struct P0Result {
    double p0 = 0.0;
    double bound = 0.0;        // exp(-lambda_e^2 / 4N)
    double ground_energy = 0.0;
    double residual = 0.0;     // solver residual of the ground pair
    std::size_t dim = 0;
    ModelParams params;
};

// P0 = |<ground state | psi_-; m=0 target>|^2 with the target evaluated at
// zero displacement (lambda_e = 0).  A degenerate ground space (gap below
// 1e-10) contributes the summed squared overlap over the degenerate pair,
// i.e. the maximum over the subspace.
P0Result compute_p0(const ModelParams& params,
                    const std::optional<Detunings>& detunings = std::nullopt,
                    const SolverOptions& solver_options = {});

enum class P0Axis { NMolecules, OmegaRabi };

struct P0SweepPoint {
    double axis_value = 0.0;
    std::optional<P0Result> result;  // empty on failure
    std::string error;
};

// Independent compute_p0 runs, one per axis value; failures are recorded
// per point and do not abort the sweep.
std::vector<P0SweepPoint> sweep_p0(const ModelParams& base, P0Axis axis,
                                   const std::vector<double>& values,
                                   const SolverOptions& solver_options = {},
                                   int n_threads = 1);

} // namespace hjc
