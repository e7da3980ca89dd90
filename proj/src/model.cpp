#include "hjc/model.hpp"

#include <limits>
#include <sstream>
#include <string>

#include "hjc/errors.hpp"

namespace hjc {

double huang_rhys_from_shift(double omega_v, double q0) {
    if (!(omega_v > 0.0))
        throw param_error("huang_rhys_from_shift: omega_v must be positive");
    return 0.5 * omega_v * q0 * q0;
}

void Truncation::validate() const {
    if (m_sym_max < 0 || m_nonsym_max < 0)
        throw param_error("truncation caps must be non-negative");
    if (m_nonsym_max > m_sym_max)
        throw param_error("m_nonsym_max must not exceed m_sym_max");
    if (m_total_max && *m_total_max < 0)
        throw param_error("m_total_max must be non-negative");
}

void ModelParams::validate() const {
    if (n_molecules < 1)
        throw param_error("n_molecules must be >= 1");
    if (!(omega_v > 0.0))
        throw param_error("omega_v must be positive");
    if (omega_rabi < 0.0)
        throw param_error("omega_rabi must be non-negative");
    if (n_cav_max != 1)
        throw param_error("only the single-photon sector (n_cav_max = 1) is supported");
    trunc.validate();
}

BasisState BasisState::ground(int n_molecules) {
    BasisState s;
    s.cavity_occ = 1;
    s.excited_k = std::nullopt;
    s.phonons.assign(static_cast<std::size_t>(n_molecules), 0);
    return s;
}

BasisState BasisState::excited(int k, int n_molecules) {
    BasisState s;
    s.cavity_occ = 0;
    s.excited_k = k;
    s.phonons.assign(static_cast<std::size_t>(n_molecules), 0);
    return s;
}

namespace {

std::string u128_to_string(unsigned __int128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v > 0) {
        out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return out;
}

} // namespace

Basis::Basis(const ModelParams& params) : params_(params) {
    params_.validate();
    const int n = params_.n_molecules;
    const auto& tr = params_.trunc;

    if (tr.m_total_max) {
        // Count admissible suffixes by dynamic programming so that ranking
        // stays O(N) per configuration.
        const int budget = *tr.m_total_max;
        suffix_count_.assign(static_cast<std::size_t>(n) + 1,
                             std::vector<std::size_t>(static_cast<std::size_t>(budget) + 1, 0));
        for (int b = 0; b <= budget; ++b) suffix_count_[static_cast<std::size_t>(n)][static_cast<std::size_t>(b)] = 1;
        for (int p = n - 1; p >= 0; --p) {
            const int cap = phonon_cap(p);
            for (int b = 0; b <= budget; ++b) {
                unsigned __int128 acc = 0;
                for (int m = 0; m <= cap && m <= b; ++m)
                    acc += suffix_count_[static_cast<std::size_t>(p) + 1][static_cast<std::size_t>(b - m)];
                if (acc > std::numeric_limits<std::size_t>::max())
                    throw param_error("basis dimension overflows the index type: phonon suffix count " +
                                      u128_to_string(acc));
                suffix_count_[static_cast<std::size_t>(p)][static_cast<std::size_t>(b)] =
                    static_cast<std::size_t>(acc);
            }
        }
        n_phonon_ = suffix_count_[0][static_cast<std::size_t>(budget)];
    } else {
        // Product basis: mixed-radix strides, least significant at q = N-1.
        stride_.assign(static_cast<std::size_t>(n), 0);
        unsigned __int128 acc = 1;
        for (int q = n - 1; q >= 0; --q) {
            stride_[static_cast<std::size_t>(q)] = static_cast<std::size_t>(acc);
            acc *= static_cast<unsigned>(phonon_cap(q)) + 1;
            if (acc > std::numeric_limits<std::size_t>::max())
                throw param_error("basis dimension overflows the index type: phonon configuration count " +
                                  u128_to_string(acc));
        }
        n_phonon_ = static_cast<std::size_t>(acc);
    }

    const unsigned __int128 total =
        static_cast<unsigned __int128>(n + 1) * static_cast<unsigned __int128>(n_phonon_);
    if (total > std::numeric_limits<std::size_t>::max())
        throw param_error("basis dimension overflows the index type: " + u128_to_string(total));
    dim_ = static_cast<std::size_t>(total);
}

bool Basis::phonon_admissible(std::span<const int> occ) const {
    if (occ.size() != static_cast<std::size_t>(params_.n_molecules)) return false;
    long total = 0;
    for (std::size_t q = 0; q < occ.size(); ++q) {
        if (occ[q] < 0 || occ[q] > phonon_cap(static_cast<int>(q))) return false;
        total += occ[q];
    }
    if (params_.trunc.m_total_max && total > *params_.trunc.m_total_max) return false;
    return true;
}

std::size_t Basis::phonon_rank(std::span<const int> occ) const {
    if (!phonon_admissible(occ))
        throw param_error("phonon occupation outside the truncation");
    const int n = params_.n_molecules;
    if (params_.trunc.m_total_max) {
        // Count configurations lexicographically below occ: at each mode p,
        // every admissible choice m < occ[p] contributes the number of
        // completions of the remaining modes within the remaining budget.
        int budget = *params_.trunc.m_total_max;
        std::size_t rank = 0;
        for (int p = 0; p < n; ++p) {
            for (int m = 0; m < occ[static_cast<std::size_t>(p)]; ++m)
                rank += suffix_count_[static_cast<std::size_t>(p) + 1][static_cast<std::size_t>(budget - m)];
            budget -= occ[static_cast<std::size_t>(p)];
        }
        return rank;
    }
    std::size_t rank = 0;
    for (int q = 0; q < n; ++q)
        rank += static_cast<std::size_t>(occ[static_cast<std::size_t>(q)]) * stride_[static_cast<std::size_t>(q)];
    return rank;
}

void Basis::phonon_unrank(std::size_t rank, std::span<int> occ) const {
    if (rank >= n_phonon_)
        throw param_error("phonon rank out of range");
    const int n = params_.n_molecules;
    if (occ.size() != static_cast<std::size_t>(n))
        throw param_error("phonon occupation span has wrong length");
    if (params_.trunc.m_total_max) {
        int budget = *params_.trunc.m_total_max;
        for (int p = 0; p < n; ++p) {
            const int cap = phonon_cap(p);
            int m = 0;
            for (; m <= cap && m <= budget; ++m) {
                const std::size_t block =
                    suffix_count_[static_cast<std::size_t>(p) + 1][static_cast<std::size_t>(budget - m)];
                if (rank < block) break;
                rank -= block;
            }
            occ[static_cast<std::size_t>(p)] = m;
            budget -= m;
        }
        return;
    }
    for (int q = 0; q < n; ++q) {
        const std::size_t s = stride_[static_cast<std::size_t>(q)];
        occ[static_cast<std::size_t>(q)] = static_cast<int>(rank / s);
        rank %= s;
    }
}

BasisIndex Basis::index_of(const BasisState& state) const {
    const int n = params_.n_molecules;
    int sector;
    if (state.is_ground()) {
        if (state.cavity_occ != 1)
            throw param_error("ground-sector state must carry the cavity photon");
        sector = 0;
    } else {
        const int k = *state.excited_k;
        if (k < 0 || k >= n)
            throw param_error("excited-state momentum out of range");
        if (state.cavity_occ != 0)
            throw param_error("excited-sector state must have an empty cavity");
        sector = 1 + k;
    }
    return static_cast<BasisIndex>(sector) * n_phonon_ + phonon_rank(state.phonons);
}

BasisState Basis::state_of(BasisIndex index) const {
    if (index >= dim_)
        throw param_error("basis index out of range");
    const int sector = static_cast<int>(index / n_phonon_);
    const std::size_t rank = index % n_phonon_;
    BasisState s;
    if (sector == 0) {
        s.cavity_occ = 1;
        s.excited_k = std::nullopt;
    } else {
        s.cavity_occ = 0;
        s.excited_k = sector - 1;
    }
    s.phonons.assign(static_cast<std::size_t>(params_.n_molecules), 0);
    phonon_unrank(rank, s.phonons);
    return s;
}

std::vector<BasisState> Basis::enumerate() const {
    std::vector<BasisState> out;
    out.reserve(dim_);
    for (BasisIndex i = 0; i < dim_; ++i) out.push_back(state_of(i));
    return out;
}

int Basis::total_momentum(const BasisState& state) const {
    const int n = params_.n_molecules;
    long k = state.is_ground() ? 0 : *state.excited_k;
    for (int q = 0; q < n; ++q)
        k += static_cast<long>(q) * state.phonons[static_cast<std::size_t>(q)];
    return static_cast<int>(((k % n) + n) % n);
}

} // namespace hjc
