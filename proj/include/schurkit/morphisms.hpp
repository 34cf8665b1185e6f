#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schurkit/bigcount.hpp"
#include "schurkit/permgrp.hpp"
#include "schurkit/sring.hpp"

namespace schurkit {

// A basic-set bijection verified to preserve all structure constants.
// Instances are only produced by the validating constructors below.
struct AlgebraicIso {
    std::vector<uint32_t> class_map; // source class index -> target class index

    uint32_t apply(uint32_t cls) const { return class_map[cls]; }
    bool is_identity() const;
};

// Shared, monotonically decreasing node budget for the backtracking searches.
struct SearchBudget {
    uint64_t limit;
    uint64_t used = 0;

    explicit SearchBudget(uint64_t limit = 100000000ull) : limit(limit) {}
    bool spend() {
        if (used >= limit) return false;
        ++used;
        return true;
    }
};

enum class IsoStatus { Found, NotFound, Timeout };

const char* iso_status_name(IsoStatus s);

struct SchemeIsoResult {
    IsoStatus status = IsoStatus::NotFound;
    std::optional<Perm> witness; // point bijection, set iff Found
    uint64_t nodes_explored = 0;
};

// Validates the full rank^3 constant-preservation condition.
AlgebraicIso algebraic_iso_from_map(const SRing& a, const SRing& a2,
                                    const std::vector<uint32_t>& class_map);

// The complete group of algebraic automorphisms, by backtracking over class
// bijections with size/symmetry/constant pruning. Sorted lexicographically.
std::vector<AlgebraicIso> find_algebraic_autos(const SRing& a);

// All algebraic isomorphisms from a to a2 (same machinery, cross ring).
std::vector<AlgebraicIso> find_algebraic_isos(const SRing& a, const SRing& a2);

// The class map X -> X' with R(X)^f = R(X'), verified; f must carry the
// relation family of a onto that of a2.
AlgebraicIso induced_algebraic_iso(const Perm& f, const SRing& a, const SRing& a2);

// Complete backtracking search for a combinatorial isomorphism inducing phi,
// with f(e) pinned to e'. NotFound is exhaustive (up to that reduction);
// Timeout is a distinct outcome.
SchemeIsoResult find_inducing_iso(const SRing& a, const SRing& a2, const AlgebraicIso& phi,
                                  SearchBudget& budget);
SchemeIsoResult find_inducing_iso(const SRing& a, const AlgebraicIso& phi, SearchBudget& budget);

// Aut(A)_e: all color-preserving point bijections fixing the identity,
// returned as an explicit permutation group with exact order, found by a
// stabilizer-chain-structured complete search. Throws BudgetExceeded.
PermutationGroup scheme_stabilizer_autos(const SRing& a, SearchBudget& budget);

// A is schurian iff the orbits of Aut(A)_e are exactly the basic sets.
bool is_schurian(const SRing& a, SearchBudget& budget);

struct SeparabilityRow {
    AlgebraicIso phi;
    int target = -1; // -1: automorphism of a; otherwise index into targets
    IsoStatus status;
    std::optional<Perm> witness;
    uint64_t nodes = 0;
};

struct SeparabilityReport {
    std::vector<SeparabilityRow> rows;
    bool any_not_found = false;
    bool any_timeout = false;

    // "not separable" if any NotFound; "separable within scope" if all Found.
    std::string verdict() const;
};

SeparabilityReport separability_report(const SRing& a, const std::vector<SRing>& targets,
                                       SearchBudget& budget);

std::string separability_report_to_json(const SeparabilityReport& report, int indent = 2);

} // namespace schurkit
