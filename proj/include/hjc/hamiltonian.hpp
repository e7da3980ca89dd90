#pragma once

// Assembly of the sparse HJC Hamiltonian in the (k,q) momentum basis and
// the P/Q manifold projectors.
//
// H = omega_v * sum_q b_q^dag b_q                                (phonons)
//   + Delta * sum_k |k><k|  (+ site-disorder Fourier block)      (electronic)
//   + (lambda_e omega_v / sqrt(N)) sum_{k,q} |k+q><k| (b_q + b_{-q}^dag)
//   - i sqrt(N) (Omega_e/2) (|k=0><G| a - h.c.)                  (cavity)
//
// with Delta = delta_e + omega_v lambda_e^2.  Matrix elements leaving the
// truncated phonon space are dropped (projection, not renormalization).

#include <optional>
#include <vector>

#include "hjc/model.hpp"
#include "hjc/sparse.hpp"

namespace hjc {

// Per-site excited-state detunings relative to the uniform delta_e; the
// total site detuning is delta_e + detunings[i].  Length must equal N.
using Detunings = std::vector<double>;

struct HamiltonianOptions {
    // Gauge a -> i a: makes the cavity block real.  Spectra and |overlap|^2
    // metrics are invariant; the ground-sector phase rotates.
    bool real_gauge = false;
};

SparseHermitian build_hjc(const Basis& basis,
                          const std::optional<Detunings>& detunings = std::nullopt,
                          const HamiltonianOptions& options = {});

// Selector for the permutation-symmetric manifold P = {|G>, |Excited(k=0)>}
// (any phonon content) or its complement Q.
class Projector {
public:
    static Projector manifold_P(const Basis& basis);
    static Projector manifold_Q(const Basis& basis);

    bool contains(BasisIndex index) const {
        const bool in_p = index < 2 * n_phonon_;
        return is_p_ ? in_p : !in_p;
    }
    // Zeroes the complement components in place.
    void apply(std::vector<Complex>& v) const;
    // Number of selected basis states (trace of the projection operator).
    std::size_t trace() const;

private:
    Projector(std::size_t dim, std::size_t n_phonon, bool is_p)
        : dim_(dim), n_phonon_(n_phonon), is_p_(is_p) {}
    std::size_t dim_, n_phonon_;
    bool is_p_;
};

} // namespace hjc
