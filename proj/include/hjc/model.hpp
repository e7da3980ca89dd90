#pragma once

// Model parameters and the truncated one-excitation basis of the
// Holstein-Jaynes-Cummings (HJC) ensemble model.
//
// Units: all energies are measured in units of the vibrational frequency
// omega_v unless stated otherwise.  Mode labels k (electronic) and q
// (phonon) are integers 0..N-1 identified with momenta 2*pi*j/N on a ring
// with unit lattice spacing (r_i = i, periodic boundaries).

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace hjc {

// Huang-Rhys factor lambda^2 = (omega_v/2) * q0^2 from a dimensional
// mass-weighted equilibrium shift q0.
double huang_rhys_from_shift(double omega_v, double q0);

// Per-mode occupation caps of the phonon space.
struct Truncation {
    int m_sym_max = 6;     // max quanta in the symmetric mode q = 0
    int m_nonsym_max = 2;  // max quanta in each mode q != 0
    std::optional<int> m_total_max;  // optional cap on total quanta

    void validate() const;
};

struct ModelParams {
    int n_molecules = 1;       // N
    double omega_v = 1.0;      // vibrational frequency (sets the unit scale)
    double lambda_e = 0.0;     // vibronic displacement; lambda_e^2 is the Huang-Rhys factor
    double omega_rabi = 0.0;   // single-molecule Rabi frequency, units of omega_v
    double delta_e = 0.0;      // detuning from the 0-0 line, units of omega_v
    int n_cav_max = 1;         // fixed: single-photon sector only
    Truncation trunc{};

    // Detuning from the cavity frequency, Delta = delta_e + omega_v*lambda_e^2.
    double detuning_total() const { return delta_e + omega_v * lambda_e * lambda_e; }

    void validate() const;  // throws param_error on violation
};

// One element of the one-excitation basis.  Exactly one quantum is shared
// between the cavity and the electronic system: either |G, n_cav=1> or
// |Excited(k), n_cav=0>.
struct BasisState {
    int cavity_occ = 0;
    std::optional<int> excited_k;  // nullopt = ensemble ground state
    std::vector<int> phonons;      // occupation per phonon momentum q = 0..N-1

    bool is_ground() const { return !excited_k.has_value(); }

    static BasisState ground(int n_molecules);
    static BasisState excited(int k, int n_molecules);
};

using BasisIndex = std::size_t;

// Bijective enumeration of the truncated basis.
//
// Ordering (frozen): index = sector * n_phonon_configs() + phonon_rank,
// with sector 0 = |G, n_cav=1> and sector 1+k = |Excited(k), n_cav=0>,
// k ascending; phonon configurations are ordered lexicographically with
// the q = 0 occupation most significant.  Serialized eigenvectors rely on
// this ordering.
class Basis {
public:
    explicit Basis(const ModelParams& params);

    const ModelParams& params() const { return params_; }
    int n_sites() const { return params_.n_molecules; }
    std::size_t dim() const { return dim_; }
    std::size_t n_phonon_configs() const { return n_phonon_; }

    BasisIndex index_of(const BasisState& state) const;
    BasisState state_of(BasisIndex index) const;
    std::vector<BasisState> enumerate() const;

    // Phonon-configuration rank within the sector (same lexicographic order).
    std::size_t phonon_rank(std::span<const int> occ) const;
    void phonon_unrank(std::size_t rank, std::span<int> occ) const;
    bool phonon_admissible(std::span<const int> occ) const;
    int phonon_cap(int q) const {
        return q == 0 ? params_.trunc.m_sym_max : params_.trunc.m_nonsym_max;
    }

    // Electronic momentum plus net phonon momentum, mod N (ground sector
    // counts as k = 0).  Conserved by the disorder-free Hamiltonian.
    int total_momentum(const BasisState& state) const;

private:
    ModelParams params_;
    std::size_t n_phonon_ = 0;
    std::size_t dim_ = 0;
    std::vector<std::size_t> stride_;  // product basis (no total cap)
    // suffix_count_[p][b]: admissible configurations of modes p..N-1 with
    // total quanta <= b (only built when a total cap is set)
    std::vector<std::vector<std::size_t>> suffix_count_;
};

} // namespace hjc
