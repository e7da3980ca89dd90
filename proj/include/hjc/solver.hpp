#pragma once

// Lowest eigenpairs of a SparseHermitian: thick-restart Rayleigh-Ritz
// (Lanczos-type Krylov iteration with full reorthogonalization) for large
// dimensions, direct dense diagonalization below dense_threshold.

#include <cstdint>
#include <vector>

#include "hjc/sparse.hpp"

namespace hjc {

struct SolverOptions {
    int n_pairs = 1;
    double tol = 1e-10;                  // absolute residual ||Hv - Ev||
    int max_matvecs = 200000;
    int krylov_dim = 48;                 // restart subspace size
    std::size_t dense_threshold = 2000;  // dense fallback below this dim
    std::uint64_t seed = 1;              // starting-vector RNG seed
    int matvec_threads = 1;              // threads inside one matvec
};

struct EigenResult {
    std::vector<double> eigenvalues;  // ascending
    std::vector<std::vector<Complex>> eigenvectors;
    std::vector<double> residuals;    // explicit ||Hv - Ev|| per pair
    int iterations = 0;               // matrix-vector products consumed
    bool converged = false;
    bool used_dense = false;
};

// Throws solver_error (carrying the best residual reached) when the Krylov
// iteration does not converge within max_matvecs.
EigenResult lowest_eigenpairs(const SparseHermitian& h, const SolverOptions& options = {});

} // namespace hjc
