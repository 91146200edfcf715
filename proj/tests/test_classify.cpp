#include <doctest.h>

#include <random>

#include "dbx/classify.hpp"
#include "dbx/phimap.hpp"
#include "oracles.hpp"

using namespace dbx;
using dbx::testing::random_bprime_pair;
using dbx::testing::random_epseq;

namespace {
const EpSeq MU01("", "01");
const EpSeq ALPHA10("", "10");
const EpSeq MU_D2("0001", "01");     // D'-family member, N=2
const EpSeq ALPHA_D2("1110", "10");
SolveConfig cfg;
} // namespace

TEST_CASE("in_C_prime worked examples") {
    CHECK(in_C_prime(EpSeq::zeros(), ALPHA10));
    CHECK(in_C_prime(MU01, EpSeq("1101", "0")));
    CHECK(!in_C_prime(MU01, ALPHA10));
    CHECK(in_C_prime(EpSeq("0010", "1"), ALPHA10));  // co-finite mu
    CHECK(in_C_prime(MU01, EpSeq::ones()));
}

TEST_CASE("in_B_prime worked examples") {
    CHECK(in_B_prime(MU01, ALPHA10).value.is_yes());
    CHECK(in_B_prime(EpSeq("", "0001"), ALPHA10).value.is_yes());
    const Verdict v = in_B_prime(EpSeq("", "0100"), ALPHA10);
    CHECK(v.value.is_no());
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->shift == 2);
    CHECK(v.witness->condition == "sigma^2(mu) < mu");
}

TEST_CASE("in_U2_prime worked examples") {
    CHECK(in_U2_prime(MU_D2, ALPHA_D2).value.is_yes());
    CHECK(in_U2_prime(MU01, ALPHA10).value.is_no());
    CHECK(in_U2_prime(EpSeq::zeros(), EpSeq::ones()).value.is_no());
}

TEST_CASE("in_V2_prime worked examples") {
    CHECK(in_V2_prime(MU01, ALPHA10).value.is_yes());
    CHECK(in_V2_prime(MU_D2, ALPHA_D2).value.is_yes());
    const Verdict v = in_V2_prime(EpSeq("", "0011"), ALPHA10);
    CHECK(v.value.is_no());
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->sequence == "mu");
    CHECK(v.witness->shift == 2);
}

TEST_CASE("in_closure_U2_prime worked examples and the periodic witness") {
    const Verdict golden = in_closure_U2_prime(MU01, ALPHA10);
    CHECK(golden.value.is_no());
    const PairClass pc = classify_pair(MU01, ALPHA10);
    CHECK(pc.in_V2prime.is_yes());
    CHECK(pc.in_closureU2prime.is_no());
    CHECK(pc.in_VminusClosure.is_yes());
    REQUIRE(pc.periodic_uv.has_value());
    CHECK(pc.periodic_uv->first == "0");
    CHECK(pc.periodic_uv->second == "1");

    CHECK(in_closure_U2_prime(EpSeq("", "0001"), ALPHA_D2).value.is_yes());
    CHECK(in_closure_U2_prime(MU_D2, ALPHA_D2).value.is_yes());
}

TEST_CASE("classify_base_pair worked examples") {
    precision_scope scope(128);
    const BaseClass on_c = classify_base_pair(BasePair(Rational(2), Rational(2), 128), 64, cfg);
    CHECK(on_c.region == Region::C);
    CHECK(on_c.in_U2.is_yes());
    CHECK(on_c.in_V2.is_yes());
    CHECK(on_c.in_closureU2.is_yes());

    const Real phi = (1 + boost::multiprecision::sqrt(Real(5))) / 2;
    const BaseClass golden = classify_base_pair(BasePair(phi, phi, 128), 64, cfg);
    CHECK(golden.region == Region::B);
    CHECK(golden.exact);
    CHECK(golden.in_V2.is_yes());
    CHECK(golden.in_closureU2.is_no());
    CHECK(golden.in_U2.is_no());
    REQUIRE(golden.detected_mu.has_value());
    CHECK(*golden.detected_mu == MU01);
    CHECK(*golden.detected_alpha == ALPHA10);

    const PhiInverse inv = phi_inverse(MU_D2, ALPHA_D2, cfg);
    const BaseClass member = classify_base_pair(BasePair(inv.q0, inv.q1, 128), 64, cfg);
    CHECK(member.exact);
    CHECK(member.in_U2.is_yes());

    const BaseClass outside = classify_base_pair(BasePair(Rational(3), Rational(2), 128), 16, cfg);
    CHECK(outside.region == Region::Outside);
    CHECK(outside.in_U2.is_no());
}

TEST_CASE("classify_base_pair never reports yes from prefixes alone") {
    precision_scope scope(128);
    // irrational-looking pair; no exact confirmation expected
    const BasePair q(Real(Rational(19, 10)), Real(Rational(7, 5)) + Real(1e-7), 128);
    const BaseClass bc = classify_base_pair(q, 48, cfg);
    if (!bc.exact) {
        CHECK(!bc.in_U2.is_yes());
        CHECK(!bc.in_V2.is_yes());
    }
}

TEST_CASE("property: nesting of the symbolic sets") {
    std::mt19937_64 rng(59);
    for (int i = 0; i < 1000; ++i) {
        const EpSeq mu_raw = random_epseq(rng);
        const EpSeq alpha_raw = random_epseq(rng);
        const EpSeq mu = mu_raw.digit(1) == '0' ? mu_raw : conjugate(mu_raw);
        const EpSeq alpha = alpha_raw.digit(1) == '1' ? alpha_raw : conjugate(alpha_raw);
        const PairClass pc = classify_pair(mu, alpha);
        REQUIRE(!pc.in_U2prime.is_unknown());
        if (pc.in_U2prime.is_yes()) CHECK(pc.in_closureU2prime.is_yes());
        if (pc.in_closureU2prime.is_yes()) CHECK(pc.in_V2prime.is_yes());
        if (pc.in_Cprime.is_yes()) CHECK(pc.in_Bprime.is_no());
        // conjugate symmetry of V'2
        const PairClass swapped = classify_pair(conjugate(alpha), conjugate(mu));
        CHECK(swapped.in_V2prime.value == pc.in_V2prime.value);
    }
}

TEST_CASE("property: interleaved periodic pairs satisfy the shift equivalences") {
    std::mt19937_64 rng(109);
    std::uniform_int_distribution<std::size_t> len(1, 4);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int i = 0; i < 200; ++i) {
        Word u(len(rng), '0'), v(len(rng), '0');
        for (std::size_t j = 1; j < u.size(); ++j) u[j] = bit(rng) ? '1' : '0';
        v[0] = '1';
        for (std::size_t j = 1; j < v.size(); ++j) v[j] = bit(rng) ? '1' : '0';
        const EpSeq mu("", u + v);
        const EpSeq alpha("", v + u);
        // the four shift characterizations of the interleaved form coincide
        CHECK(shift(mu, u.size()) == alpha);
        CHECK(shift(alpha, v.size()) == mu);
        CHECK(shift(mu, u.size() + v.size()) == mu);
        const PairClass pc = classify_pair(mu, alpha);
        if (pc.in_V2prime.is_yes()) {
            CHECK(pc.in_VminusClosure.is_yes());
            CHECK(pc.in_closureU2prime.is_no());
        }
    }
}

TEST_CASE("property: V' \\ closure points carry the periodic interleaved form") {
    std::mt19937_64 rng(61);
    int found = 0;
    for (int i = 0; i < 4000 && found < 20; ++i) {
        const EpSeq mu_raw = random_epseq(rng, 2, 6);
        const EpSeq mu = mu_raw.digit(1) == '0' ? mu_raw : conjugate(mu_raw);
        const EpSeq alpha_raw = random_epseq(rng, 2, 6);
        const EpSeq alpha = alpha_raw.digit(1) == '1' ? alpha_raw : conjugate(alpha_raw);
        const PairClass pc = classify_pair(mu, alpha);
        if (!pc.in_VminusClosure.is_yes()) continue;
        ++found;
        REQUIRE(pc.periodic_uv.has_value());
        const auto& [u, v] = *pc.periodic_uv;
        CHECK(EpSeq("", u + v) == mu);
        CHECK(EpSeq("", v + u) == alpha);
    }
    CHECK(found > 0);
}

TEST_CASE("property: base-pair classification matches the symbolic verdicts through phi") {
    // solve tightly so the returned representative reproduces enough digits
    // for period detection to recover the symbolic pair
    precision_scope scope(256);
    SolveConfig tight;
    tight.root_tol = 1e-40;
    tight.precision_bits = 256;
    std::mt19937_64 rng(67);
    for (int i = 0; i < 20; ++i) {
        const auto [mu, alpha] = random_bprime_pair(rng, 2, 6);
        const PairClass symbolic = classify_pair(mu, alpha);
        const PhiInverse inv = phi_inverse(mu, alpha, tight);
        const BaseClass base = classify_base_pair(BasePair(inv.q0, inv.q1, 256), 40, tight);
        REQUIRE(base.exact);
        CHECK(base.in_U2.value == symbolic.in_U2prime.value);
        CHECK(base.in_V2.value == symbolic.in_V2prime.value);
        CHECK(base.in_closureU2.value == symbolic.in_closureU2prime.value);
    }
}

TEST_CASE("perturbation stability probe") {
    precision_scope scope(128);
    const BasePair q(Rational(2), Rational(3, 2), 128);
    const StabilityReport tight = perturbation_stability_probe(q, 1e-10, 24);
    REQUIRE(!tight.neighbors.empty());
    CHECK(tight.min_agreement >= 24);
    const StabilityReport zero = perturbation_stability_probe(q, 0.0, 24);
    CHECK(zero.min_agreement == 24);

    // agreement length is non-decreasing as eps shrinks
    std::size_t prev = 0;
    for (double eps : {1e-4, 1e-7, 1e-10}) {
        const StabilityReport r = perturbation_stability_probe(q, eps, 40);
        CHECK(r.min_agreement >= prev);
        prev = r.min_agreement;
    }
}

TEST_CASE("build_approximant_U2prime") {
    const auto [mu1, alpha1] = build_approximant_U2prime(MU_D2, ALPHA_D2, 0);
    CHECK(in_U2_prime(mu1, alpha1).value.is_yes());
    CHECK(alpha1 == ALPHA_D2);
    // shared prefix of length n_k means metric <= 2^-n_k
    const auto cuts = mu_cut_indices(MU_D2);
    REQUIRE(cuts.size() >= 3);
    CHECK(seq_metric(mu1, MU_D2) <= std::ldexp(1.0, -static_cast<int>(cuts[0])));
    // monotone approach from below
    const auto [mu2, alpha2] = build_approximant_U2prime(MU_D2, ALPHA_D2, 1);
    (void)alpha2;
    CHECK(compare_lex(mu1, mu2) == Ordering::Less);
    CHECK(compare_lex(mu2, MU_D2) == Ordering::Less);
    CHECK_THROWS_AS(build_approximant_U2prime(MU_D2, ALPHA_D2, 1000), precondition_error);
}

TEST_CASE("build_VminusClosure_witness") {
    const auto [muw, alphaw] = build_VminusClosure_witness(MU_D2, ALPHA_D2, 4, 4);
    const PairClass pc = classify_pair(muw, alphaw);
    CHECK(pc.in_VminusClosure.is_yes());
    CHECK(seq_metric(muw, MU_D2) <= std::ldexp(1.0, -4));
    CHECK(seq_metric(alphaw, ALPHA_D2) <= std::ldexp(1.0, -4));
    // periodic interleaved structure
    CHECK(shift(muw, 4) == alphaw);
    CHECK(shift(alphaw, 4) == muw);
    CHECK_THROWS_AS(build_VminusClosure_witness(MU_D2, ALPHA_D2, 3, 4), precondition_error);
    CHECK_THROWS_AS(build_VminusClosure_witness(MU_D2, ALPHA_D2, 4, 3), precondition_error);
}
