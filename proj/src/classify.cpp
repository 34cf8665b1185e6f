#include "schurkit/classify.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "schurkit/groups.hpp"

namespace schurkit {

using Json = nlohmann::ordered_json;

namespace {

std::map<uint64_t, uint32_t> factorize(uint64_t n) {
    std::map<uint64_t, uint32_t> f;
    for (uint64_t p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            ++f[p];
            n /= p;
        }
    if (n > 1) ++f[n];
    return f;
}

bool is_prime_power(uint64_t n, uint64_t& p, uint32_t& e) {
    p = 0;
    e = 0;
    auto f = factorize(n);
    if (f.size() != 1) return false;
    p = f.begin()->first;
    e = f.begin()->second;
    return true;
}

} // namespace

GroupSpec GroupSpec::from_factors(const std::vector<uint32_t>& factor_orders) {
    GroupPtr g = make_group(factor_orders);
    return GroupSpec{g->factors()};
}

uint64_t GroupSpec::order() const {
    uint64_t n = 1;
    for (uint32_t f : factors) n *= f;
    return n;
}

bool GroupSpec::is_cyclic() const {
    std::map<uint64_t, uint32_t> primes;
    for (uint32_t f : factors) {
        uint64_t p;
        uint32_t e;
        is_prime_power(f, p, e);
        if (primes.count(p)) return false;
        primes[p] = e;
    }
    return true;
}

bool GroupSpec::is_elementary_abelian() const {
    if (factors.empty()) return true;
    uint32_t p = factors[0];
    if (!is_prime(p)) return false;
    for (uint32_t f : factors)
        if (f != p) return false;
    return true;
}

std::string GroupSpec::literal() const {
    if (factors.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) s += 'x';
        s += std::to_string(factors[i]);
    }
    return s;
}

ArithInvariants arith_invariants(uint64_t n) {
    auto count = [](uint64_t m) {
        auto f = factorize(m);
        uint32_t small = static_cast<uint32_t>(f.size());
        uint32_t big = 0;
        for (auto& [p, e] : f) big += e;
        return std::pair<uint32_t, uint32_t>(small, big);
    };
    auto [w, W] = count(n);
    uint32_t ws = n % 2 == 0 ? count(n / 2).second : W;
    return ArithInvariants{w, W, ws};
}

std::optional<std::string> theorem1_family(uint64_t n) {
    if (n == 0) return std::nullopt;
    auto f = factorize(n);
    std::vector<std::pair<uint64_t, uint32_t>> pe(f.begin(), f.end());

    // p^k (k >= 0, so n = 1 included)
    if (pe.size() <= 1) return "p^k";

    // pq^k: two primes, one exponent equal to 1
    if (pe.size() == 2 && (pe[0].second == 1 || pe[1].second == 1)) return "pq^k";

    // 2pq^k: the literal prime 2 times p times q^k; p or q may also be 2
    if (n % 2 == 0) {
        uint64_t m = n / 2;
        auto fm = factorize(m);
        for (auto& [p, ep] : fm) {
            if (m % p != 0) continue;
            uint64_t rest = m / p;
            uint64_t q;
            uint32_t k;
            if (rest > 1 && is_prime_power(rest, q, k) && q != p) return "2pq^k";
        }
    }

    // pqr: three distinct primes, squarefree
    if (pe.size() == 3 && pe[0].second == 1 && pe[1].second == 1 && pe[2].second == 1) return "pqr";

    // 2pqr: p, q, r distinct; one of them may be 2 (giving 4qr)
    if (n % 2 == 0) {
        uint64_t m = n / 2;
        auto fm = factorize(m);
        if (fm.size() == 3) {
            bool squarefree = true;
            for (auto& [p, e] : fm)
                if (e != 1) squarefree = false;
            if (squarefree) return "2pqr";
        }
    }
    return std::nullopt;
}

namespace {

// Multiset of p-power exponents per prime, exponents descending.
std::map<uint32_t, std::vector<uint32_t>> prime_shapes(const GroupSpec& spec) {
    std::map<uint32_t, std::vector<uint32_t>> shape;
    for (uint32_t f : spec.factors) {
        uint64_t p;
        uint32_t e;
        is_prime_power(f, p, e);
        shape[static_cast<uint32_t>(p)].push_back(e);
    }
    for (auto& [p, es] : shape) std::sort(es.rbegin(), es.rend());
    return shape;
}

bool is_pow(uint32_t n, uint32_t p, uint32_t& k) {
    k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return n == 1;
}

} // namespace

std::optional<std::string> theorem3_family(const GroupSpec& spec) {
    if (spec.is_cyclic()) fail(Err::NotApplicable, "CyclicInput");
    if (spec.is_elementary_abelian()) fail(Err::NotApplicable, "ElementaryAbelianInput");
    std::vector<uint32_t> fs = spec.factors;
    std::sort(fs.begin(), fs.end());
    uint32_t k;

    // (1) C2 x C2^k, k >= 2
    if (fs.size() == 2 && fs[0] == 2 && is_pow(fs[1], 2, k) && k >= 2) return "C2xC2^k";
    // (2) C2p x C2^k = {2, p, 2^k}, p odd prime, k >= 1
    if (fs.size() == 3) {
        std::vector<uint32_t> twos, odds;
        for (uint32_t f : fs) (f % 2 == 0 ? twos : odds).push_back(f);
        if (twos.size() == 2 && odds.size() == 1 && is_prime(odds[0])) {
            std::sort(twos.begin(), twos.end());
            if (twos[0] == 2 && is_pow(twos[1], 2, k) && k >= 1) return "C2pxC2^k";
        }
    }
    // (3) E4 x C_{p^k}, p odd prime, k >= 1
    if (fs.size() == 3 && fs[0] == 2 && fs[1] == 2 && fs[2] % 2 == 1) {
        uint64_t p;
        uint32_t e;
        if (is_prime_power(fs[2], p, e)) return "E4xC_p^k";
    }
    // (4) E4 x C_{pq}: {2,2,p,q} with p, q odd distinct, and the proof's
    // |G_q| = q case E4 x C_{2q} = {2,2,2,q} with q odd
    if (fs.size() == 4 && fs[0] == 2 && fs[1] == 2 && is_prime(fs[2]) && is_prime(fs[3]) &&
        fs[2] % 2 == 1 && fs[3] % 2 == 1 && fs[2] != fs[3])
        return "E4xC_pq";
    if (fs.size() == 4 && fs[0] == 2 && fs[1] == 2 && fs[2] == 2 && is_prime(fs[3]) &&
        fs[3] % 2 == 1)
        return "E4xC_pq";
    // (5) C3 x C3^k, k >= 2
    if (fs.size() == 2 && fs[0] == 3 && is_pow(fs[1], 3, k) && k >= 2) return "C3xC3^k";
    // (6) C6 x C3^k = {2, 3, 3^k}, k >= 1
    if (fs.size() == 3 && fs[0] == 2 && fs[1] == 3 && is_pow(fs[2], 3, k) && k >= 1)
        return "C6xC3^k";
    // (7) E9 x C_q, q an odd prime other than 3 (the proof's reading)
    if (fs.size() == 3 && fs[0] == 3 && fs[1] == 3 && is_prime(fs[2]) && fs[2] % 2 == 1 &&
        fs[2] != 3)
        return "E9xC_q";
    // (8) E9 x C_{2q}: {2, 3, 3, q} with q an odd prime, or E9 x C4 = {3, 3, 4}
    if (fs.size() == 4 && fs[0] == 2 && fs[1] == 3 && fs[2] == 3 && is_prime(fs[3]) &&
        fs[3] % 2 == 1)
        return "E9xC_2q";
    if (fs == std::vector<uint32_t>{3, 3, 4}) return "E9xC_2q";
    return std::nullopt;
}

std::vector<SylowReport> sylow_screen(const GroupSpec& spec) {
    std::vector<SylowReport> out;
    for (auto& [p, es] : prime_shapes(spec)) {
        SylowReport r;
        r.prime = p;
        std::string shape;
        for (std::size_t i = 0; i < es.size(); ++i) {
            if (i) shape += "x";
            shape += "C" + std::to_string(p) + (es[i] > 1 ? "^" + std::to_string(es[i]) : "");
        }
        r.shape = shape;
        if (p >= 5) {
            r.admissible = es.size() == 1;
            if (!r.admissible) r.clause = "p>=5 requires a cyclic Sylow subgroup";
        } else {
            if (es.size() == 1) {
                r.admissible = true;
            } else if (es.size() == 2 && es[1] == 1) {
                r.admissible = true; // C_p x C_{p^k}
            } else if (es.size() == 3 && es[0] == 1) {
                r.admissible = true; // C_p^3
            } else if (es.size() >= 4) {
                r.admissible = false;
                r.clause = "direct product of at least four cyclic groups";
            } else if (es.size() >= 2 && es[1] >= 2) {
                r.admissible = false;
                r.clause = "contains C_{p^2} x C_{p^2}";
            } else {
                r.admissible = false; // {p, p, p^k}, k >= 2
                r.clause = "C_p x C_p x C_{p^k} with k >= 2";
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::optional<Prop31Decomposition> prop31_decomposition(const GroupSpec& spec) {
    const auto& fs = spec.factors;
    auto prime_of = [&](std::size_t i) {
        uint64_t p;
        uint32_t e;
        is_prime_power(fs[i], p, e);
        return static_cast<uint32_t>(p);
    };

    // H1: p1 * q1 for the two smallest distinct odd primes, each realized in
    // the smallest unused factor carrying that prime.
    std::vector<bool> used(fs.size(), false);
    auto take_odd_prime = [&](uint32_t exclude) -> std::optional<std::pair<std::size_t, uint32_t>> {
        std::optional<std::pair<std::size_t, uint32_t>> best;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            if (used[i]) continue;
            uint32_t p = prime_of(i);
            if (p == 2 || p == exclude) continue;
            if (!best || p < best->second || (p == best->second && fs[i] < fs[best->first]))
                best = {{i, p}};
        }
        return best;
    };

    auto first_odd = take_odd_prime(0);
    if (!first_odd) return std::nullopt;
    used[first_odd->first] = true;
    auto second_odd = take_odd_prime(first_odd->second);
    if (!second_odd) return std::nullopt;
    used[second_odd->first] = true;

    Prop31Decomposition d;
    d.h1.parts = {{first_odd->first, first_odd->second}, {second_odd->first, second_odd->second}};

    // H2 preference: odd*odd, then 4*q2 (cyclic C4 preferred over E4), then
    // order 8 (C8, then C2xC4, then E8).
    auto third_odd = take_odd_prime(0);
    if (third_odd) {
        std::vector<bool> used2 = used;
        used2[third_odd->first] = true;
        auto save = used;
        used = used2;
        auto fourth_odd = take_odd_prime(third_odd->second);
        used = save;
        if (fourth_odd) {
            d.h2.parts = {{third_odd->first, third_odd->second},
                          {fourth_odd->first, fourth_odd->second}};
            d.h2_shape = H2Shape::OddOdd;
            return d;
        }
    }

    // Even-side building blocks among unused factors.
    auto smallest_two_power = [&](uint32_t min_exp, const std::vector<bool>& in_use)
        -> std::optional<std::size_t> {
        std::optional<std::size_t> best;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            if (in_use[i] || prime_of(i) != 2) continue;
            uint32_t k;
            is_pow(fs[i], 2, k);
            if (k < min_exp) continue;
            if (!best || fs[i] < fs[*best]) best = i;
        }
        return best;
    };

    if (third_odd) {
        // 4 * q2 with cyclic C4
        if (auto c4 = smallest_two_power(2, used)) {
            d.h2.parts = {{*c4, 4}, {third_odd->first, third_odd->second}};
            d.h2_shape = H2Shape::FourQCyclic;
            return d;
        }
        // 4 * q2 with E4
        auto e1 = smallest_two_power(1, used);
        if (e1) {
            auto used2 = used;
            used2[*e1] = true;
            if (auto e2 = smallest_two_power(1, used2)) {
                d.h2.parts = {{*e1, 2}, {*e2, 2}, {third_odd->first, third_odd->second}};
                d.h2_shape = H2Shape::FourQE4;
                return d;
            }
        }
    }

    // |H2| = 8: C8
    if (auto c8 = smallest_two_power(3, used)) {
        d.h2.parts = {{*c8, 8}};
        d.h2_shape = H2Shape::EightC8;
        return d;
    }
    // C2 x C4
    if (auto c4 = smallest_two_power(2, used)) {
        auto used2 = used;
        used2[*c4] = true;
        if (auto c2 = smallest_two_power(1, used2)) {
            d.h2.parts = {{*c2, 2}, {*c4, 4}};
            d.h2_shape = H2Shape::EightC2C4;
            return d;
        }
    }
    // E8
    {
        auto used2 = used;
        std::vector<std::size_t> picks;
        for (int k = 0; k < 3; ++k) {
            auto e = smallest_two_power(1, used2);
            if (!e) break;
            used2[*e] = true;
            picks.push_back(*e);
        }
        if (picks.size() == 3) {
            d.h2.parts = {{picks[0], 2}, {picks[1], 2}, {picks[2], 2}};
            d.h2_shape = H2Shape::EightE8;
            return d;
        }
    }
    return std::nullopt;
}

namespace {

// Largest |H| with H x H embeddable in the group: per prime take every
// second exponent (divisor embedding, as in the C_{p^2} x C_{p^2} argument).
uint64_t max_square_side(const GroupSpec& spec) {
    uint64_t side = 1;
    for (auto& [p, es] : prime_shapes(spec))
        for (std::size_t i = 1; i < es.size(); i += 2)
            for (uint32_t k = 0; k < es[i]; ++k) side *= p;
    return side;
}

bool external_e4c4_route(const GroupSpec& spec) {
    for (auto& [p, es] : prime_shapes(spec)) {
        if (p != 2 && p != 3) continue;
        if (es.size() >= 3 && es[0] >= 2) return true;
    }
    return false;
}

WitnessRoute witness_route_for(const GroupSpec& spec) {
    if (prop31_decomposition(spec)) return WitnessRoute::Prop31;
    if (max_square_side(spec) >= 4) return WitnessRoute::SquareLemma;
    if (external_e4c4_route(spec)) return WitnessRoute::ExternalE4C4;
    return WitnessRoute::None;
}

// The "Moreover" separability facts are properties of the isomorphism type,
// independent of which family tag the scanner reports first.
bool known_separable_ka(const GroupSpec& spec) {
    std::vector<uint32_t> fs = spec.factors;
    std::sort(fs.begin(), fs.end());
    if (spec.is_cyclic()) {
        // cyclic p-groups (including the trivial group)
        return fs.size() <= 1;
    }
    uint64_t n = spec.order();
    if (spec.is_elementary_abelian()) return n == 4 || n == 8 || n == 9 || n == 27;
    uint32_t k;
    if (fs.size() == 2 && fs[0] == 2 && is_pow(fs[1], 2, k)) return true; // C2 x C2^k
    if (fs.size() == 2 && fs[0] == 3 && is_pow(fs[1], 3, k)) return true; // C3 x C3^k
    if (fs.size() == 3 && fs[0] == 2 && fs[1] == 2 && is_prime(fs[2]) && fs[2] % 2 == 1)
        return true; // E4 x C_p
    return false;
}

} // namespace

Verdict classify(const GroupSpec& spec) {
    Verdict v;
    if (spec.is_cyclic()) {
        auto fam = theorem1_family(spec.order());
        if (fam) {
            v.family = fam;
            v.status = known_separable_ka(spec) ? VerdictStatus::KnownSeparableKA
                                                : VerdictStatus::Candidate;
        } else {
            v.status = VerdictStatus::NotWeaklySeparable;
            v.reason = ExclusionReason::Theorem1Exclusion;
            v.witness_route = witness_route_for(spec);
        }
        return v;
    }
    if (spec.is_elementary_abelian()) {
        uint64_t n = spec.order();
        if (n == 4 || n == 8 || n == 9 || n == 27) {
            v.status = VerdictStatus::KnownSeparableKA;
            v.family = "E" + std::to_string(n);
        } else {
            v.status = VerdictStatus::NotWeaklySeparable;
            v.reason = ExclusionReason::Theorem2Exclusion;
            v.witness_route = witness_route_for(spec);
        }
        return v;
    }
    auto fam = theorem3_family(spec);
    if (fam) {
        v.family = fam;
        v.status = known_separable_ka(spec) ? VerdictStatus::KnownSeparableKA
                                            : VerdictStatus::Candidate;
        return v;
    }
    v.status = VerdictStatus::NotWeaklySeparable;
    v.reason = ExclusionReason::Theorem3Exclusion;
    v.witness_route = witness_route_for(spec);
    return v;
}

const char* verdict_status_name(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::KnownSeparableKA: return "KnownSeparableKA";
        case VerdictStatus::Candidate: return "Candidate";
        case VerdictStatus::NotWeaklySeparable: return "NotWeaklySeparable";
    }
    return "?";
}

const char* exclusion_reason_name(ExclusionReason r) {
    switch (r) {
        case ExclusionReason::None: return "None";
        case ExclusionReason::Theorem1Exclusion: return "Theorem1Exclusion";
        case ExclusionReason::Theorem2Exclusion: return "Theorem2Exclusion";
        case ExclusionReason::Theorem3Exclusion: return "Theorem3Exclusion";
    }
    return "?";
}

const char* witness_route_name(WitnessRoute r) {
    switch (r) {
        case WitnessRoute::None: return "None";
        case WitnessRoute::Prop31: return "Prop31";
        case WitnessRoute::SquareLemma: return "SquareLemma";
        case WitnessRoute::ExternalE4C4: return "ExternalE4C4";
    }
    return "?";
}

std::string verdict_to_json(const GroupSpec& spec, const Verdict& v, int indent) {
    Json j;
    j["group"] = spec.literal();
    j["status"] = verdict_status_name(v.status);
    if (v.family)
        j["family"] = *v.family;
    else
        j["family"] = nullptr;
    if (v.status == VerdictStatus::NotWeaklySeparable)
        j["reason"] = exclusion_reason_name(v.reason);
    else
        j["reason"] = nullptr;
    j["witness_route"] = witness_route_name(v.witness_route);
    return j.dump(indent) + "\n";
}

} // namespace schurkit
