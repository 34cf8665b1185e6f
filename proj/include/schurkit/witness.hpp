#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "schurkit/classify.hpp"
#include "schurkit/morphisms.hpp"
#include "schurkit/sring.hpp"

namespace schurkit {

enum class WitnessBranch { CyclicA2, E4A2 };

// Everything needed to run the witness construction over H = H1 x H2.
// Built canonically from a decomposition; validated by build_prop31_sring.
struct WitnessPlan {
    GroupPtr g; // the full group
    GroupPtr h; // H1 x H2 as its own group
    WitnessBranch branch;
    H2Shape h2_shape;

    uint32_t p1 = 0; // |A1|
    uint32_t q1 = 0; // |H1/A1|
    uint32_t m2 = 0; // |H2/A2|

    // H-element indices
    uint32_t a1 = 0, b1 = 0, b2 = 0;
    uint32_t a2 = 0;           // cyclic branch generator of A2
    uint32_t a21 = 0, a22 = 0; // E4 branch generators

    Subgroup h1, h2, a1_sub, a2_sub, l_sub;
};

WitnessPlan make_witness_plan(const GroupSpec& spec, const Prop31Decomposition& d);

struct Prop31Build {
    SRing ring;
    AlgebraicIso phi;
    std::vector<Perm> sigmas;
    BigCount k_order = 0;
    std::vector<uint32_t> w_classes; // indices of the classes swapped by phi's family
    bool formulas_match = false;
    bool all_symmetric = false;
    bool w_sizes_two = false;
    bool product_patterns = false;
    bool s_wreath = false;
    bool s_wreath_proper = false;
};

// The cyclotomic-style S-ring of the plan together with the verified
// algebraic automorphism phi (X_ij -> X_{(|A1|-i) j} on W, identity else).
Prop31Build build_prop31_sring(const WitnessPlan& plan);

struct WitnessCertificate {
    GroupSpec spec;
    WitnessPlan plan;
    Prop31Build build;

    BigCount aut_e_order = 0;
    bool aut_order_consistent = false;
    bool a_schurian = false;

    uint32_t fusion_rank = 0;
    bool fusion_rank_expected = false;
    bool fusion_non_schurian = false;

    std::optional<SchemeIsoResult> direct_search;

    // Lift to G when H is proper.
    bool lifted = false;
    std::optional<SRing> lifted_ring;
    std::vector<uint32_t> lift_embed;
    std::vector<uint32_t> psi;
    bool lift_valid = false;

    std::string conclusion; // empty unless the full chain holds

    bool chain_holds() const;
};

// Wreath lifting: extends phi on B to psi on B wreath Z(G/H)
// acting as the identity on the coset classes; psi is re-validated.
struct LiftResult {
    SRing ring;
    std::vector<uint32_t> embed;
    std::vector<uint32_t> psi;
    AlgebraicIso psi_iso;
};

LiftResult lift_by_wreath(const SRing& b, const AlgebraicIso& phi, GroupPtr g);

// Full pipeline: plan, build, schurity of A, fusion and its non-schurity,
// optional direct non-inducedness search, wreath lift when H < G.
WitnessCertificate build_witness(const GroupSpec& spec, SearchBudget& budget,
                                 bool run_direct_search = true);

std::string certificate_to_json(const WitnessCertificate& cert, int indent = 2);

} // namespace schurkit
