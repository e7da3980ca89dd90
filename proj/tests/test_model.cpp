#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "hjc/errors.hpp"
#include "hjc/model.hpp"
#include "hjc/rng.hpp"

using hjc::Basis;
using hjc::BasisState;
using hjc::ModelParams;

namespace {

ModelParams make(int n, int m_sym, int m_nonsym, std::optional<int> m_total = {}) {
    ModelParams p;
    p.n_molecules = n;
    p.trunc.m_sym_max = m_sym;
    p.trunc.m_nonsym_max = m_nonsym;
    p.trunc.m_total_max = m_total;
    return p;
}

} // namespace

TEST_CASE("huang-rhys factor from a dimensional equilibrium shift") {
    CHECK(hjc::huang_rhys_from_shift(1.0, 2.0) == doctest::Approx(2.0));
    CHECK(hjc::huang_rhys_from_shift(1.0, std::sqrt(2.0)) == doctest::Approx(1.0));
    CHECK(hjc::huang_rhys_from_shift(2.0, 1.0) == doctest::Approx(1.0));
    CHECK(hjc::huang_rhys_from_shift(1.0, 0.0) == 0.0);
    CHECK_THROWS_AS(hjc::huang_rhys_from_shift(0.0, 1.0), hjc::param_error);
}

TEST_CASE("basis dimension: bare two-level limit") {
    // One molecule, no phonon quanta allowed: only |G,1> and |Excited,0>.
    Basis b(make(1, 0, 0));
    CHECK(b.dim() == 2);
    CHECK(b.n_phonon_configs() == 1);
}

TEST_CASE("basis dimension: hand-enumerated 12-state case") {
    // N=2, one quantum allowed in each of the two modes: 3 electronic
    // sectors x 4 phonon vectors.
    Basis b(make(2, 1, 1));
    CHECK(b.dim() == 12);
    CHECK(b.n_phonon_configs() == 4);
}

TEST_CASE("basis dimension: closed-form product at default caps") {
    // (m_sym+1) * (m_nonsym+1)^(N-1) phonon vectors, N+1 sectors.
    Basis b(make(10, 6, 2));
    CHECK(b.n_phonon_configs() == 7u * 19683u);  // 7 * 3^9
    CHECK(b.dim() == 1515591u);
}

TEST_CASE("basis ordering anchor: index 0 is the photonic vacuum-phonon state") {
    Basis b(make(3, 2, 1));
    const BasisState s0 = b.state_of(0);
    CHECK(s0.is_ground());
    CHECK(s0.cavity_occ == 1);
    CHECK(std::all_of(s0.phonons.begin(), s0.phonons.end(), [](int m) { return m == 0; }));

    // First excited-sector state: k = 0, zero phonons.
    const BasisState se = b.state_of(b.n_phonon_configs());
    REQUIRE(se.excited_k.has_value());
    CHECK(*se.excited_k == 0);
    CHECK(se.cavity_occ == 0);
}

TEST_CASE("index/state bijection over a full product basis") {
    Basis b(make(4, 3, 2));
    REQUIRE(b.dim() == 5u * 4u * 27u);
    for (std::size_t i = 0; i < b.dim(); ++i) {
        const BasisState s = b.state_of(i);
        CHECK(b.index_of(s) == i);
    }
    // enumerate() agrees with state_of order.
    const auto all = b.enumerate();
    REQUIRE(all.size() == b.dim());
    CHECK(b.index_of(all.front()) == 0);
    CHECK(b.index_of(all.back()) == b.dim() - 1);
}

TEST_CASE("index/state bijection under a total-quanta cap (random probes)") {
    Basis b(make(6, 6, 2, 5));
    hjc::Rng rng(42);
    for (int t = 0; t < 100000; ++t) {
        const auto i = static_cast<std::size_t>(rng.next_u64() % b.dim());
        const BasisState s = b.state_of(i);
        CHECK(b.index_of(s) == i);
        int total = 0;
        for (int q = 0; q < 6; ++q) {
            total += s.phonons[static_cast<std::size_t>(q)];
            CHECK(s.phonons[static_cast<std::size_t>(q)] <= b.phonon_cap(q));
        }
        CHECK(total <= 5);
    }
}

TEST_CASE("total-quanta cap at or above the per-mode sum leaves the basis unchanged") {
    const auto p_unc = make(3, 3, 2);
    const auto p_cap = make(3, 3, 2, 3 + 2 * 2);
    Basis a(p_unc), b(p_cap);
    REQUIRE(a.dim() == b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const auto sa = a.state_of(i), sb = b.state_of(i);
        CHECK(sa.phonons == sb.phonons);
        CHECK(sa.excited_k == sb.excited_k);
    }
}

TEST_CASE("capped enumeration covers exactly the admissible configurations") {
    Basis b(make(3, 4, 2, 4));
    std::set<std::vector<int>> seen;
    for (std::size_t r = 0; r < b.n_phonon_configs(); ++r) {
        std::vector<int> occ(3);
        b.phonon_unrank(r, occ);
        CHECK(b.phonon_rank(occ) == r);
        CHECK(b.phonon_admissible(occ));
        seen.insert(occ);
    }
    CHECK(seen.size() == b.n_phonon_configs());
    // Exhaustive cross-count.
    std::size_t expected = 0;
    for (int a0 = 0; a0 <= 4; ++a0)
        for (int a1 = 0; a1 <= 2; ++a1)
            for (int a2 = 0; a2 <= 2; ++a2)
                if (a0 + a1 + a2 <= 4) ++expected;
    CHECK(b.n_phonon_configs() == expected);
    CHECK_FALSE(b.phonon_admissible(std::vector<int>{3, 2, 0}));  // total 5 > 4
    CHECK_FALSE(b.phonon_admissible(std::vector<int>{0, 3, 0}));  // per-mode cap
}

TEST_CASE("total momentum of basis states") {
    Basis b(make(4, 3, 2));
    BasisState s = BasisState::excited(1, 4);
    s.phonons = {0, 0, 1, 0};  // one quantum at q=2
    CHECK(b.total_momentum(s) == 3);
    s.phonons = {0, 0, 0, 2};  // two quanta at q=3: 1 + 6 = 7 = 3 mod 4
    CHECK(b.total_momentum(s) == 3);
    CHECK(b.total_momentum(BasisState::ground(4)) == 0);
}

TEST_CASE("parameter validation rejects malformed models") {
    CHECK_THROWS_AS(Basis(make(0, 2, 1)), hjc::param_error);
    CHECK_THROWS_AS(Basis(make(2, 1, 2)), hjc::param_error);  // nonsym > sym
    {
        ModelParams p = make(2, 2, 1);
        p.omega_v = 0.0;
        CHECK_THROWS_AS(p.validate(), hjc::param_error);
    }
    {
        ModelParams p = make(2, 2, 1);
        p.omega_rabi = -1.0;
        CHECK_THROWS_AS(p.validate(), hjc::param_error);
    }
    {
        ModelParams p = make(2, 2, 1);
        p.n_cav_max = 2;
        CHECK_THROWS_AS(p.validate(), hjc::param_error);
    }
    {
        ModelParams p = make(2, 2, 1, -1);
        CHECK_THROWS_AS(p.validate(), hjc::param_error);
    }
}

TEST_CASE("oversized bases are rejected with the computed dimension") {
    // 7 * 3^44 * 46 overflows a 64-bit index.
    try {
        Basis b(make(45, 6, 2));
        FAIL("expected param_error");
    } catch (const hjc::param_error& e) {
        CHECK(std::string(e.what()).find("overflow") != std::string::npos);
    }
}

TEST_CASE("detuning_total combines bare detuning and polaron shift") {
    ModelParams p = make(2, 2, 1);
    p.delta_e = 0.3;
    p.lambda_e = 2.0;
    p.omega_v = 1.5;
    CHECK(p.detuning_total() == doctest::Approx(0.3 + 1.5 * 4.0));
}
