#include "hjc/hamiltonian.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "hjc/errors.hpp"

namespace hjc {

SparseHermitian build_hjc(const Basis& basis,
                          const std::optional<Detunings>& detunings,
                          const HamiltonianOptions& options) {
    const ModelParams& p = basis.params();
    const int n = p.n_molecules;
    const std::size_t np = basis.n_phonon_configs();
    if (detunings && detunings->size() != static_cast<std::size_t>(n))
        throw param_error("detunings length does not match n_molecules");

    SparseBuilder b(basis.dim());
    const double coupling = p.lambda_e * p.omega_v / std::sqrt(static_cast<double>(n));
    const double g = std::sqrt(static_cast<double>(n)) * p.omega_rabi / 2.0;
    const double polaron_shift = p.omega_v * p.lambda_e * p.lambda_e;

    // Electronic disorder block (1/N) sum_i D_i exp(-i (k-k') r_i) with
    // D_i = delta_e + detunings[i]; diagonal in the phonon configuration.
    // Without disorder this collapses to the uniform delta_e diagonal.
    std::vector<std::vector<Complex>> dis_block;
    if (detunings) {
        dis_block.assign(static_cast<std::size_t>(n), std::vector<Complex>(static_cast<std::size_t>(n)));
        for (int k = 0; k < n; ++k)
            for (int k2 = k; k2 < n; ++k2) {
                Complex acc{0.0, 0.0};
                for (int i = 0; i < n; ++i) {
                    const double phase = -2.0 * std::numbers::pi * (k - k2) * i / n;
                    acc += (p.delta_e + (*detunings)[static_cast<std::size_t>(i)]) *
                           Complex{std::cos(phase), std::sin(phase)};
                }
                acc /= static_cast<double>(n);
                dis_block[static_cast<std::size_t>(k)][static_cast<std::size_t>(k2)] = acc;
            }
    }

    std::vector<int> occ(static_cast<std::size_t>(n));
    std::vector<int> occ2(static_cast<std::size_t>(n));
    for (std::size_t rank = 0; rank < np; ++rank) {
        basis.phonon_unrank(rank, occ);
        int total_quanta = 0;
        for (int q = 0; q < n; ++q) total_quanta += occ[static_cast<std::size_t>(q)];
        const double phonon_energy = p.omega_v * total_quanta;

        // Ground sector: phonon energy only.
        b.add(rank, rank, phonon_energy);

        // Cavity coupling <Excited(0), m | H | G, m> = -i g (or +g in the
        // real gauge), diagonal in the phonon configuration.
        if (g != 0.0)
            b.add(np + rank, rank, options.real_gauge ? Complex{g, 0.0} : Complex{0.0, -g});

        for (int k = 0; k < n; ++k) {
            const std::size_t row = (static_cast<std::size_t>(k) + 1) * np + rank;
            double diag = phonon_energy + polaron_shift;
            if (!detunings) diag += p.delta_e;
            b.add(row, row, diag);

            if (detunings) {
                for (int k2 = k; k2 < n; ++k2)
                    b.add(row, (static_cast<std::size_t>(k2) + 1) * np + rank,
                          dis_block[static_cast<std::size_t>(k)][static_cast<std::size_t>(k2)]);
            }

            // Vibronic coupling, phonon-raising half only; the lowering half
            // is supplied by the Hermitian completion.  For each q the raised
            // mode is -q = (N - q) mod N (momentum conservation):
            // <Excited(k+q), m + e_{-q} | H | Excited(k), m>
            //   = (lambda_e omega_v / sqrt(N)) sqrt(m_{-q} + 1).
            if (coupling != 0.0) {
                for (int q = 0; q < n; ++q) {
                    const int mq = (n - q) % n;
                    occ2 = occ;
                    ++occ2[static_cast<std::size_t>(mq)];
                    if (!basis.phonon_admissible(occ2)) continue;
                    const int k2 = (k + q) % n;
                    const std::size_t col =
                        (static_cast<std::size_t>(k2) + 1) * np + basis.phonon_rank(occ2);
                    b.add(col, row,
                          coupling * std::sqrt(static_cast<double>(occ[static_cast<std::size_t>(mq)] + 1)));
                }
            }
        }
    }
    return std::move(b).finalize();
}

Projector Projector::manifold_P(const Basis& basis) {
    return Projector(basis.dim(), basis.n_phonon_configs(), true);
}

Projector Projector::manifold_Q(const Basis& basis) {
    return Projector(basis.dim(), basis.n_phonon_configs(), false);
}

void Projector::apply(std::vector<Complex>& v) const {
    if (v.size() != dim_)
        throw param_error("projector input length does not match basis dimension");
    for (std::size_t i = 0; i < dim_; ++i)
        if (!contains(i)) v[i] = Complex{0.0, 0.0};
}

std::size_t Projector::trace() const {
    const std::size_t p_states = 2 * n_phonon_;
    return is_p_ ? p_states : dim_ - p_states;
}

} // namespace hjc
