#include <doctest.h>

#include <functional>
#include <map>
#include <set>

#include "schurkit/classify.hpp"
#include "schurkit/groups.hpp"

using namespace schurkit;

namespace {

bool fails_with(Err code, const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

// Generative oracle for the integer families, mirroring the scan order.
std::optional<std::string> brute_family(uint64_t n, uint64_t limit) {
    std::vector<uint64_t> primes;
    for (uint64_t p = 2; p <= limit; ++p)
        if (is_prime(static_cast<uint32_t>(p))) primes.push_back(p);

    std::set<uint64_t> pk, pqk, two_pqk, pqr, two_pqr;
    pk.insert(1);
    for (uint64_t p : primes)
        for (uint64_t v = p; v <= limit; v *= p) pk.insert(v);
    // The primes within a pattern are distinct from each other; 2 may stand
    // in for any of them.
    for (uint64_t p : primes)
        for (uint64_t q : primes) {
            if (p == q) continue;
            for (uint64_t v = p * q; v <= limit; v *= q) {
                pqk.insert(v);
                if (2 * v <= limit) two_pqk.insert(2 * v);
            }
        }
    for (std::size_t i = 0; i < primes.size(); ++i)
        for (std::size_t j = i + 1; j < primes.size(); ++j)
            for (std::size_t k = j + 1; k < primes.size(); ++k) {
                uint64_t v = primes[i] * primes[j] * primes[k];
                if (v <= limit) pqr.insert(v);
                if (2 * v <= limit) two_pqr.insert(2 * v);
            }
    if (pk.count(n)) return "p^k";
    if (pqk.count(n)) return "pq^k";
    if (two_pqk.count(n)) return "2pq^k";
    if (pqr.count(n)) return "pqr";
    if (two_pqr.count(n)) return "2pqr";
    return std::nullopt;
}

// All abelian groups of order n, as factor multisets.
void partitions_of(uint32_t e, std::vector<std::vector<uint32_t>>& out) {
    std::vector<uint32_t> cur;
    std::function<void(uint32_t, uint32_t)> rec = [&](uint32_t left, uint32_t max) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (uint32_t part = std::min(left, max); part >= 1; --part) {
            cur.push_back(part);
            rec(left - part, part);
            cur.pop_back();
        }
    };
    rec(e, e);
}

std::vector<GroupSpec> abelian_groups_of_order(uint64_t n) {
    std::map<uint32_t, uint32_t> fact;
    uint64_t m = n;
    for (uint32_t p = 2; static_cast<uint64_t>(p) * p <= m; ++p)
        while (m % p == 0) {
            ++fact[p];
            m /= p;
        }
    if (m > 1) ++fact[static_cast<uint32_t>(m)];

    std::vector<std::vector<std::vector<uint32_t>>> per_prime;
    std::vector<uint32_t> prime_list;
    for (auto& [p, e] : fact) {
        std::vector<std::vector<uint32_t>> parts;
        partitions_of(e, parts);
        per_prime.push_back(parts);
        prime_list.push_back(p);
    }
    std::vector<GroupSpec> out;
    std::vector<std::size_t> pick(per_prime.size(), 0);
    while (true) {
        std::vector<uint32_t> factors;
        for (std::size_t i = 0; i < per_prime.size(); ++i)
            for (uint32_t e : per_prime[i][pick[i]]) {
                uint32_t f = 1;
                for (uint32_t k = 0; k < e; ++k) f *= prime_list[i];
                factors.push_back(f);
            }
        out.push_back(GroupSpec::from_factors(factors));
        std::size_t i = 0;
        for (; i < pick.size(); ++i) {
            if (++pick[i] < per_prime[i].size()) break;
            pick[i] = 0;
        }
        if (i == pick.size()) break;
        if (per_prime.empty()) break;
    }
    return out;
}

} // namespace

TEST_CASE("arithmetic invariants") {
    auto check = [](uint64_t n, uint32_t w, uint32_t big, uint32_t star) {
        ArithInvariants a = arith_invariants(n);
        CHECK(a.omega_small == w);
        CHECK(a.omega_big == big);
        CHECK(a.omega_star == star);
    };
    check(15, 2, 2, 2);
    check(8, 1, 3, 2);
    check(2, 1, 1, 0);
    check(120, 3, 5, 4);
}

TEST_CASE("theorem1_family unit cases") {
    CHECK(theorem1_family(20) == "pq^k");
    CHECK(theorem1_family(60) == "2pqr");
    CHECK(!theorem1_family(120));
    CHECK(theorem1_family(1) == "p^k");
    CHECK(theorem1_family(24) == "pq^k");
    CHECK(theorem1_family(30) == "2pq^k");
}

TEST_CASE("theorem1_family agrees with the generative oracle up to 1000") {
    for (uint64_t n = 1; n <= 1000; ++n) CHECK(theorem1_family(n) == brute_family(n, 1000));
}

TEST_CASE("theorem3_family") {
    CHECK(theorem3_family(GroupSpec::from_factors({2, 8})) == "C2xC2^k");
    CHECK(theorem3_family(GroupSpec::from_factors({3, 3, 4})) == "E9xC_2q");
    CHECK(!theorem3_family(GroupSpec::from_factors({4, 4})));
    CHECK(theorem3_family(GroupSpec::from_factors({2, 2, 9})) == "E4xC_p^k");
    CHECK(theorem3_family(GroupSpec::from_factors({2, 2, 5})) == "C2pxC2^k");
    CHECK(theorem3_family(GroupSpec::from_factors({2, 2, 2, 7})) == "E4xC_pq");
    CHECK(theorem3_family(GroupSpec::from_factors({3, 3, 7})) == "E9xC_q");
    CHECK(theorem3_family(GroupSpec::from_factors({2, 3, 3, 3})) == "E9xC_2q");
    CHECK(fails_with(Err::NotApplicable, [] { theorem3_family(GroupSpec::from_factors({12})); }));
    CHECK(fails_with(Err::NotApplicable,
                     [] { theorem3_family(GroupSpec::from_factors({3, 3, 3})); }));
}

TEST_CASE("sylow_screen") {
    auto report_for = [](std::vector<uint32_t> f, uint32_t p) {
        for (const SylowReport& r : sylow_screen(GroupSpec::from_factors(f)))
            if (r.prime == p) return r;
        return SylowReport{};
    };
    CHECK(report_for({2, 2, 2}, 2).admissible);
    CHECK(!report_for({5, 5}, 5).admissible);
    CHECK(!report_for({2, 2, 2, 2}, 2).admissible);
    CHECK(report_for({3, 9}, 3).admissible);
    CHECK(!report_for({4, 4}, 2).admissible);
    CHECK(!report_for({2, 2, 4}, 2).admissible);
}

TEST_CASE("prop31_decomposition") {
    auto d = prop31_decomposition(GroupSpec::from_factors({3, 5, 8}));
    REQUIRE(d.has_value());
    CHECK(d->h2_shape == H2Shape::EightC8);
    CHECK(d->h1.parts.size() == 2);
    CHECK(d->h1.parts[0].second == 3);
    CHECK(d->h1.parts[1].second == 5);
    CHECK(d->h2.parts.size() == 1);
    CHECK(d->h2.parts[0].second == 8);

    CHECK(!prop31_decomposition(GroupSpec::from_factors({4, 5})));
    CHECK(!prop31_decomposition(GroupSpec::from_factors({2, 2, 3, 3})));

    auto e4 = prop31_decomposition(GroupSpec::from_factors({2, 2, 3, 3, 5}));
    REQUIRE(e4.has_value());
    CHECK(e4->h2_shape == H2Shape::FourQE4);

    auto oddodd = prop31_decomposition(GroupSpec::from_factors({3, 3, 5, 7}));
    REQUIRE(oddodd.has_value());
    CHECK(oddodd->h2_shape == H2Shape::OddOdd);

    auto fourq = prop31_decomposition(GroupSpec::from_factors({3, 4, 5, 7}));
    REQUIRE(fourq.has_value());
    CHECK(fourq->h2_shape == H2Shape::FourQCyclic);

    auto c2c4 = prop31_decomposition(GroupSpec::from_factors({3, 4, 4, 5}));
    REQUIRE(c2c4.has_value());
    CHECK(c2c4->h2_shape == H2Shape::EightC2C4);
}

TEST_CASE("classify verdicts") {
    auto v = classify(GroupSpec::from_factors({3, 5, 8}));
    CHECK(v.status == VerdictStatus::NotWeaklySeparable);
    CHECK(v.reason == ExclusionReason::Theorem1Exclusion);
    CHECK(v.witness_route == WitnessRoute::Prop31);

    auto e4c5 = classify(GroupSpec::from_factors({2, 2, 5}));
    CHECK(e4c5.status == VerdictStatus::KnownSeparableKA);

    auto c4c4 = classify(GroupSpec::from_factors({4, 4}));
    CHECK(c4c4.status == VerdictStatus::NotWeaklySeparable);
    CHECK(c4c4.reason == ExclusionReason::Theorem3Exclusion);
    CHECK(c4c4.witness_route == WitnessRoute::SquareLemma);

    auto e4e9 = classify(GroupSpec::from_factors({2, 2, 3, 3}));
    CHECK(e4e9.status == VerdictStatus::NotWeaklySeparable);
    CHECK(e4e9.witness_route == WitnessRoute::SquareLemma);

    auto e4c4 = classify(GroupSpec::from_factors({2, 2, 4}));
    CHECK(e4c4.status == VerdictStatus::NotWeaklySeparable);
    CHECK(e4c4.witness_route == WitnessRoute::ExternalE4C4);

    auto e16 = classify(GroupSpec::from_factors({2, 2, 2, 2}));
    CHECK(e16.status == VerdictStatus::NotWeaklySeparable);
    CHECK(e16.reason == ExclusionReason::Theorem2Exclusion);
    CHECK(e16.witness_route == WitnessRoute::SquareLemma);

    CHECK(classify(GroupSpec::from_factors({8})).status == VerdictStatus::KnownSeparableKA);
    CHECK(classify(GroupSpec::from_factors({2, 2, 2})).status == VerdictStatus::KnownSeparableKA);
    CHECK(classify(GroupSpec::from_factors({20})).status == VerdictStatus::Candidate);
    CHECK(classify(GroupSpec::from_factors({2, 8})).status == VerdictStatus::KnownSeparableKA);
    CHECK(classify(GroupSpec::from_factors({3, 3, 4})).status == VerdictStatus::Candidate);
    CHECK(classify(GroupSpec::from_factors({4, 5})).status == VerdictStatus::Candidate);
}

TEST_CASE("classification is consistent across all abelian groups up to order 1000") {
    for (uint64_t n = 2; n <= 1000; ++n) {
        for (const GroupSpec& spec : abelian_groups_of_order(n)) {
            Verdict v = classify(spec);
            bool sylow_bad = false;
            for (const SylowReport& r : sylow_screen(spec)) sylow_bad |= !r.admissible;
            // Lemma-level screening can only strengthen the exclusion.
            if (sylow_bad) CHECK(v.status == VerdictStatus::NotWeaklySeparable);
            // No in-family spec has an inadmissible Sylow subgroup.
            if (v.status != VerdictStatus::NotWeaklySeparable) CHECK(!sylow_bad);
            // A NotWeaklySeparable verdict always carries a reason.
            if (v.status == VerdictStatus::NotWeaklySeparable)
                CHECK(v.reason != ExclusionReason::None);
        }
    }
}

TEST_CASE("verdict JSON shape") {
    GroupSpec spec = GroupSpec::from_factors({3, 5, 8});
    std::string j = verdict_to_json(spec, classify(spec));
    CHECK(j.find("\"group\": \"3x5x8\"") != std::string::npos);
    CHECK(j.find("\"status\": \"NotWeaklySeparable\"") != std::string::npos);
    CHECK(j.find("\"reason\": \"Theorem1Exclusion\"") != std::string::npos);
    CHECK(j.find("\"witness_route\": \"Prop31\"") != std::string::npos);
}
