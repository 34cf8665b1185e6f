#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace schurkit {

// Isomorphism type of a finite abelian group: multiset of prime-power
// factors, canonically sorted ascending.
struct GroupSpec {
    std::vector<uint32_t> factors;

    static GroupSpec from_factors(const std::vector<uint32_t>& factor_orders);
    uint64_t order() const;
    bool is_cyclic() const;
    bool is_elementary_abelian() const;
    std::string literal() const;
};

struct ArithInvariants {
    uint32_t omega_small; // number of distinct prime divisors
    uint32_t omega_big;   // number of prime divisors with multiplicity
    uint32_t omega_star;  // omega_big for odd n, omega_big(n/2) for even n
};

ArithInvariants arith_invariants(uint64_t n);

// Theorem-1 integer families, scanned in this order:
// p^k, pq^k, 2pq^k, pqr, 2pqr (distinct primes, 2 allowed among them).
std::optional<std::string> theorem1_family(uint64_t n);

// The eight families of non-cyclic, non-elementary-abelian candidates,
// matched extensionally on the primary factor multiset.
std::optional<std::string> theorem3_family(const GroupSpec& spec);

struct SylowReport {
    uint32_t prime;
    bool admissible;
    std::string shape;  // e.g. "C8", "C2xC8", "C2^3"
    std::string clause; // failing clause when inadmissible
};

std::vector<SylowReport> sylow_screen(const GroupSpec& spec);

enum class VerdictStatus { KnownSeparableKA, Candidate, NotWeaklySeparable };
enum class ExclusionReason { None, Theorem1Exclusion, Theorem2Exclusion, Theorem3Exclusion };
enum class WitnessRoute { None, Prop31, SquareLemma, ExternalE4C4 };

const char* verdict_status_name(VerdictStatus s);
const char* exclusion_reason_name(ExclusionReason r);
const char* witness_route_name(WitnessRoute r);

struct Verdict {
    VerdictStatus status;
    std::optional<std::string> family;
    ExclusionReason reason = ExclusionReason::None;
    WitnessRoute witness_route = WitnessRoute::None;
};

// A side of the witness decomposition: (factor index in the spec, subgroup
// order taken inside that factor).
struct Prop31Side {
    std::vector<std::pair<std::size_t, uint32_t>> parts;
};

enum class H2Shape { OddOdd, FourQCyclic, FourQE4, EightC8, EightC2C4, EightE8 };

struct Prop31Decomposition {
    Prop31Side h1;
    Prop31Side h2;
    H2Shape h2_shape;
};

// Two independent subgroups on disjoint primary factors: |H1| = p1*q1 with
// p1, q1 distinct odd primes, and |H2| in {p2*q2 (odd, distinct), 4*q2, 8}.
std::optional<Prop31Decomposition> prop31_decomposition(const GroupSpec& spec);

Verdict classify(const GroupSpec& spec);

std::string verdict_to_json(const GroupSpec& spec, const Verdict& v, int indent = 2);

} // namespace schurkit
