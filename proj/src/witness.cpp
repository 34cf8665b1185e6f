#include "schurkit/witness.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace schurkit {

using Json = nlohmann::ordered_json;

namespace {

const char* branch_name(WitnessBranch b) {
    return b == WitnessBranch::CyclicA2 ? "CyclicA2" : "E4A2";
}

const char* h2_shape_name(H2Shape s) {
    switch (s) {
        case H2Shape::OddOdd: return "OddOdd";
        case H2Shape::FourQCyclic: return "FourQCyclic";
        case H2Shape::FourQE4: return "FourQE4";
        case H2Shape::EightC8: return "EightC8";
        case H2Shape::EightC2C4: return "EightC2C4";
        case H2Shape::EightE8: return "EightE8";
    }
    return "?";
}

} // namespace

WitnessPlan make_witness_plan(const GroupSpec& spec, const Prop31Decomposition& d) {
    WitnessPlan plan;
    plan.g = make_group(spec.factors);
    plan.h2_shape = d.h2_shape;
    plan.branch = (d.h2_shape == H2Shape::FourQE4 || d.h2_shape == H2Shape::EightE8)
                      ? WitnessBranch::E4A2
                      : WitnessBranch::CyclicA2;

    std::vector<uint32_t> h_orders;
    for (auto& [idx, sub] : d.h1.parts) h_orders.push_back(sub);
    for (auto& [idx, sub] : d.h2.parts) h_orders.push_back(sub);
    std::vector<std::size_t> pos;
    plan.h = make_group_tracked(h_orders, pos);
    const AbelianGroup& h = *plan.h;

    std::size_t p1f = pos[0], q1f = pos[1];
    plan.p1 = h.factors()[p1f];
    plan.q1 = h.factors()[q1f];
    if (plan.p1 > plan.q1) std::swap(p1f, q1f), std::swap(plan.p1, plan.q1);
    plan.a1 = h.factor_generator(p1f);
    plan.b1 = h.factor_generator(q1f);

    std::vector<std::size_t> h2f;
    for (std::size_t k = 0; k < d.h2.parts.size(); ++k) h2f.push_back(pos[2 + k]);

    std::vector<uint32_t> a2_gens;
    switch (d.h2_shape) {
        case H2Shape::OddOdd: {
            std::size_t p2f = h2f[0], q2f = h2f[1];
            if (h.factors()[p2f] > h.factors()[q2f]) std::swap(p2f, q2f);
            plan.a2 = h.factor_generator(p2f);
            plan.b2 = h.factor_generator(q2f);
            plan.m2 = h.factors()[q2f];
            a2_gens = {plan.a2};
            break;
        }
        case H2Shape::FourQCyclic: {
            std::size_t c4f = h2f[0], q2f = h2f[1];
            if (h.factors()[c4f] != 4) std::swap(c4f, q2f);
            plan.a2 = h.factor_generator(c4f);
            plan.b2 = h.factor_generator(q2f);
            plan.m2 = h.factors()[q2f];
            a2_gens = {plan.a2};
            break;
        }
        case H2Shape::FourQE4: {
            std::vector<std::size_t> twos, odds;
            for (std::size_t f : h2f) (h.factors()[f] == 2 ? twos : odds).push_back(f);
            std::sort(twos.begin(), twos.end());
            plan.a21 = h.factor_generator(twos[0]);
            plan.a22 = h.factor_generator(twos[1]);
            plan.b2 = h.factor_generator(odds[0]);
            plan.m2 = h.factors()[odds[0]];
            a2_gens = {plan.a21, plan.a22};
            break;
        }
        case H2Shape::EightC8: {
            std::size_t c8f = h2f[0];
            plan.b2 = h.factor_generator(c8f);
            plan.a2 = h.power(plan.b2, 2); // order-4 subgroup of C8
            plan.m2 = 2;
            a2_gens = {plan.a2};
            break;
        }
        case H2Shape::EightC2C4: {
            std::size_t c2f = h2f[0], c4f = h2f[1];
            if (h.factors()[c2f] != 2) std::swap(c2f, c4f);
            plan.a2 = h.factor_generator(c4f);
            plan.b2 = h.factor_generator(c2f);
            plan.m2 = 2;
            a2_gens = {plan.a2};
            break;
        }
        case H2Shape::EightE8: {
            std::vector<std::size_t> twos = h2f;
            std::sort(twos.begin(), twos.end());
            plan.a21 = h.factor_generator(twos[0]);
            plan.a22 = h.factor_generator(twos[1]);
            plan.b2 = h.factor_generator(twos[2]);
            plan.m2 = 2;
            a2_gens = {plan.a21, plan.a22};
            break;
        }
    }

    plan.h1 = subgroup_generated(plan.h, {plan.a1, plan.b1});
    std::vector<uint32_t> h2_gens;
    for (std::size_t f : h2f) h2_gens.push_back(h.factor_generator(f));
    plan.h2 = subgroup_generated(plan.h, h2_gens);
    plan.a1_sub = subgroup_generated(plan.h, {plan.a1});
    plan.a2_sub = subgroup_generated(plan.h, a2_gens);
    std::vector<uint32_t> l_gens = a2_gens;
    l_gens.push_back(plan.a1);
    plan.l_sub = subgroup_generated(plan.h, l_gens);
    return plan;
}

namespace {

void validate_plan(const WitnessPlan& plan) {
    const AbelianGroup& h = *plan.h;
    if (plan.p1 < 3 || !is_prime(plan.p1))
        fail(Err::PlanInvalid, "|A1| must be an odd prime");
    if (h.element_order(plan.a1) != plan.p1) fail(Err::PlanInvalid, "a1 has wrong order");
    if (!is_prime(plan.q1) || plan.h1.order() != plan.p1 * plan.q1)
        fail(Err::PlanInvalid, "H1 must have order p1*q1 with H1/A1 of prime order");
    if (plan.a1_sub.contains(plan.b1)) fail(Err::PlanInvalid, "b1 lies in A1");
    if (!plan.h1.contains(plan.b1)) fail(Err::PlanInvalid, "b1 outside H1");
    if (plan.a2_sub.contains(plan.b2)) fail(Err::PlanInvalid, "b2 lies in A2");
    if (!plan.h2.contains(plan.b2)) fail(Err::PlanInvalid, "b2 outside H2");
    if (!is_prime(plan.m2)) fail(Err::PlanInvalid, "H2/A2 must have prime order");
    if (plan.h2.order() != plan.a2_sub.order() * plan.m2)
        fail(Err::PlanInvalid, "A2 has wrong index in H2");
    if (plan.h2.order() % 4 == 0) {
        if (plan.a2_sub.order() != 4) fail(Err::PlanInvalid, "A2 must have order 4 when 4 | |H2|");
    } else {
        if (!is_prime(plan.a2_sub.order()) || plan.a2_sub.order() % 2 == 0)
            fail(Err::PlanInvalid, "A2 must have odd prime order when 4 does not divide |H2|");
    }
    if (plan.branch == WitnessBranch::E4A2) {
        if (h.element_order(plan.a21) != 2 || h.element_order(plan.a22) != 2)
            fail(Err::PlanInvalid, "E4 branch needs two order-2 generators");
    } else if (plan.a2_sub.order() == 4 && h.element_order(plan.a2) != 4) {
        fail(Err::PlanInvalid, "cyclic branch needs a2 of order 4");
    }
    // Independence of the two sides.
    for (uint32_t e : plan.h1.elements)
        if (e != h.identity() && plan.h2.contains(e))
            fail(Err::PlanInvalid, "H1 and H2 intersect");
    uint64_t prod = static_cast<uint64_t>(plan.h1.order()) * plan.h2.order();
    if (prod != h.order()) fail(Err::PlanInvalid, "H is not H1 x H2");
}

std::vector<bool> membership(const Subgroup& s, uint32_t n) {
    std::vector<bool> m(n, false);
    for (uint32_t e : s.elements) m[e] = true;
    return m;
}

} // namespace

Prop31Build build_prop31_sring(const WitnessPlan& plan) {
    validate_plan(plan);
    const AbelianGroup& h = *plan.h;
    const uint32_t n = h.order();

    // sigma_1 is a genuine automorphism: inversion, with the two E4
    // generators swapped in the E4 branch. The remaining sigmas are the
    // coset-wise translations: multiply by the A-generator exactly on the
    // elements outside A1 x H2 (resp. H1 x A2), which are permutations of H
    // preserving the scheme but not group automorphisms.
    std::vector<Perm> sigmas;
    {
        Perm s1(n);
        if (plan.branch == WitnessBranch::CyclicA2) {
            for (uint32_t x = 0; x < n; ++x) s1[x] = h.inverse(x);
        } else {
            // locate the factor positions of a21/a22
            std::size_t f21 = 0, f22 = 0;
            for (std::size_t i = 0; i < h.factors().size(); ++i) {
                if (h.factor_generator(i) == plan.a21) f21 = i;
                if (h.factor_generator(i) == plan.a22) f22 = i;
            }
            for (uint32_t x = 0; x < n; ++x) {
                Residues r = h.residues_of(x);
                Residues s = r;
                for (std::size_t i = 0; i < r.size(); ++i)
                    s[i] = r[i] == 0 ? 0 : h.factors()[i] - r[i];
                s[f21] = r[f22];
                s[f22] = r[f21];
                s1[x] = h.index_of(s);
            }
        }
        sigmas.push_back(std::move(s1));
    }
    Subgroup u1 = subgroup_generated(plan.h, [&] {
        std::vector<uint32_t> g{plan.a1};
        for (uint32_t e : plan.h2.generators) g.push_back(e);
        return g;
    }());
    Subgroup u2 = subgroup_generated(plan.h, [&] {
        std::vector<uint32_t> g = plan.a2_sub.generators;
        for (uint32_t e : plan.h1.generators) g.push_back(e);
        return g;
    }());
    std::vector<bool> in_a1h2 = membership(u1, n);
    std::vector<bool> in_h1a2 = membership(u2, n);

    auto coset_translation = [&](uint32_t t, const std::vector<bool>& inside) {
        Perm p(n);
        for (uint32_t x = 0; x < n; ++x) p[x] = inside[x] ? x : h.compose(x, t);
        return p;
    };
    sigmas.push_back(coset_translation(plan.a1, in_a1h2));
    if (plan.branch == WitnessBranch::CyclicA2) {
        sigmas.push_back(coset_translation(plan.a2, in_h1a2));
    } else {
        sigmas.push_back(coset_translation(plan.a21, in_h1a2));
        sigmas.push_back(coset_translation(plan.a22, in_h1a2));
    }

    PermutationGroup k_w(n, sigmas);
    std::vector<Perm> full = right_regular(plan.h).generators();
    for (const Perm& s : sigmas) full.push_back(s);
    PermutationGroup k_full(n, full);

    Prop31Build out{transitivity_module(plan.h, k_full), AlgebraicIso{}, sigmas, k_w.order(), {},
                    false, false, false, false, false, false};
    const SRing& a = out.ring;

    // The closed-form basic-set families, deduplicated; indices with b^i
    // inside the lower subgroup are skipped.
    std::set<std::vector<uint32_t>> formula_sets;
    auto add_set = [&](std::vector<uint32_t> s) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        formula_sets.insert(std::move(s));
    };
    auto coset_pair = [&](uint32_t lead, const Subgroup& sub) {
        std::vector<uint32_t> s;
        for (uint32_t e : sub.elements) {
            s.push_back(h.compose(lead, e));
            s.push_back(h.compose(h.inverse(lead), e));
        }
        return s;
    };
    const uint32_t a2_size = plan.a2_sub.order();
    if (plan.branch == WitnessBranch::CyclicA2) {
        for (uint32_t i = 0; i < plan.p1; ++i)
            for (uint32_t j = 0; j < a2_size; ++j) {
                uint32_t x = h.compose(h.power(plan.a1, i), h.power(plan.a2, j));
                add_set({x, h.inverse(x)});
            }
        for (uint32_t i = 1; i < plan.q1; ++i)
            for (uint32_t j = 0; j < a2_size; ++j)
                add_set(coset_pair(h.compose(h.power(plan.b1, i), h.power(plan.a2, j)),
                                   plan.a1_sub));
        for (uint32_t i = 1; i < plan.m2; ++i)
            for (uint32_t j = 0; j < plan.p1; ++j)
                add_set(coset_pair(h.compose(h.power(plan.b2, i), h.power(plan.a1, j)),
                                   plan.a2_sub));
        for (uint32_t i = 1; i < plan.q1; ++i)
            for (uint32_t j = 1; j < plan.m2; ++j)
                add_set(coset_pair(h.compose(h.power(plan.b1, i), h.power(plan.b2, j)),
                                   plan.l_sub));
    } else {
        uint32_t a2prod = h.compose(plan.a21, plan.a22);
        for (uint32_t i = 0; i < plan.p1; ++i) {
            for (uint32_t j = 0; j < 2; ++j)
                add_set({h.compose(h.power(plan.a1, i), h.power(plan.a21, j)),
                         h.compose(h.power(plan.a1, plan.p1 - i), h.power(plan.a22, j))});
            add_set({h.compose(a2prod, h.power(plan.a1, i)),
                     h.compose(a2prod, h.power(plan.a1, plan.p1 - i))});
        }
        for (uint32_t i = 1; i < plan.q1; ++i) {
            for (uint32_t j = 0; j < 2; ++j) {
                std::vector<uint32_t> s;
                for (uint32_t e : plan.a1_sub.elements) {
                    s.push_back(h.compose(h.compose(h.power(plan.b1, i), h.power(plan.a21, j)), e));
                    s.push_back(h.compose(
                        h.compose(h.power(plan.b1, plan.q1 - i), h.power(plan.a22, j)), e));
                }
                add_set(std::move(s));
            }
            std::vector<uint32_t> s;
            for (uint32_t e : plan.a1_sub.elements) {
                s.push_back(h.compose(a2prod, h.compose(h.power(plan.b1, i), e)));
                s.push_back(h.compose(a2prod, h.compose(h.power(plan.b1, plan.q1 - i), e)));
            }
            add_set(std::move(s));
        }
        for (uint32_t i = 1; i < plan.m2; ++i)
            for (uint32_t j = 0; j < plan.p1; ++j)
                add_set(coset_pair(h.compose(h.power(plan.b2, i), h.power(plan.a1, j)),
                                   plan.a2_sub));
        for (uint32_t i = 1; i < plan.q1; ++i)
            for (uint32_t j = 1; j < plan.m2; ++j)
                add_set(coset_pair(h.compose(h.power(plan.b1, i), h.power(plan.b2, j)),
                                   plan.l_sub));
    }
    std::set<std::vector<uint32_t>> ring_sets(a.classes().begin(), a.classes().end());
    out.formulas_match = formula_sets == ring_sets;
    if (!out.formulas_match)
        fail(Err::FormulaMismatch, "orbit classes differ from the deduplicated basic-set formulas");

    // phi: X_ij -> X_{(p1-i) j} for i, j >= 1, identity elsewhere.
    std::vector<uint32_t> phi_map(a.rank());
    for (uint32_t i = 0; i < a.rank(); ++i) phi_map[i] = i;
    std::set<uint32_t> w_set;
    uint32_t j_hi = plan.branch == WitnessBranch::CyclicA2 ? a2_size : 2;
    uint32_t a2gen = plan.branch == WitnessBranch::CyclicA2 ? plan.a2 : plan.a21;
    for (uint32_t i = 1; i < plan.p1; ++i)
        for (uint32_t j = 1; j < j_hi; ++j) {
            uint32_t src = a.class_of(h.compose(h.power(plan.a1, i), h.power(a2gen, j)));
            uint32_t dst = a.class_of(h.compose(h.power(plan.a1, plan.p1 - i), h.power(a2gen, j)));
            if (phi_map[src] != src && phi_map[src] != dst)
                fail(Err::FormulaMismatch, "phi formula is inconsistent across index pairs");
            phi_map[src] = dst;
            w_set.insert(src);
        }
    out.w_classes.assign(w_set.begin(), w_set.end());
    out.phi = algebraic_iso_from_map(a, a, phi_map);

    out.all_symmetric = true;
    for (uint32_t c = 0; c < a.rank(); ++c) out.all_symmetric &= a.class_symmetric(c);
    out.w_sizes_two = true;
    for (uint32_t c : out.w_classes)
        out.w_sizes_two &= a.cls(c).size() == 2 && a.cls(phi_map[c]).size() == 2;

    // Product patterns over W: X^2 = 2e + T; XY = T1 + T2 for X != Y in the
    // cyclic branch, and coefficient-for-coefficient equality with the
    // phi-images in the E4 branch.
    out.product_patterns = true;
    if (plan.branch == WitnessBranch::CyclicA2) {
        for (uint32_t x : out.w_classes)
            for (uint32_t y : out.w_classes) {
                std::vector<std::pair<uint32_t, uint32_t>> support;
                for (uint32_t z = 0; z < a.rank(); ++z)
                    if (a.constant(x, y, z)) support.emplace_back(z, a.constant(x, y, z));
                if (x == y) {
                    bool ok = support.size() == 2 && support[0].first == 0 &&
                              support[0].second == 2 && support[1].second == 1;
                    out.product_patterns &= ok;
                } else {
                    bool ok = support.size() == 2 && support[0].second == 1 &&
                              support[1].second == 1 && support[0].first != 0;
                    out.product_patterns &= ok;
                }
            }
    } else {
        for (uint32_t x : out.w_classes)
            for (uint32_t y : out.w_classes)
                for (uint32_t z = 0; z < a.rank(); ++z)
                    out.product_patterns &=
                        a.constant(x, y, z) == a.constant(phi_map[x], phi_map[y], z);
    }

    Section s{u2, plan.a2_sub};
    SWreathStatus sw = is_s_wreath(a, s);
    out.s_wreath = sw.is_s_wreath;
    out.s_wreath_proper = sw.proper;
    return out;
}

LiftResult lift_by_wreath(const SRing& b, const AlgebraicIso& phi, GroupPtr g) {
    algebraic_iso_from_map(b, b, phi.class_map);
    WreathResult w = wreath_product(b, g);
    std::vector<uint32_t> psi(w.ring.rank());
    for (uint32_t i = 0; i < w.ring.rank(); ++i) psi[i] = i;
    for (uint32_t x = 0; x < b.rank(); ++x) psi[w.class_image[x]] = w.class_image[phi.class_map[x]];
    AlgebraicIso iso = algebraic_iso_from_map(w.ring, w.ring, psi);
    return LiftResult{std::move(w.ring), std::move(w.embed), std::move(psi), std::move(iso)};
}

bool WitnessCertificate::chain_holds() const {
    bool core = build.formulas_match && a_schurian && fusion_non_schurian;
    if (lifted) core &= lift_valid;
    return core;
}

WitnessCertificate build_witness(const GroupSpec& spec, SearchBudget& budget,
                                 bool run_direct_search) {
    Verdict v = classify(spec);
    if (v.status != VerdictStatus::NotWeaklySeparable || v.witness_route != WitnessRoute::Prop31)
        fail(Err::NotApplicable, "no Prop31 decomposition for " + spec.literal());
    auto d = prop31_decomposition(spec);
    if (!d) fail(Err::NotApplicable, "no Prop31 decomposition for " + spec.literal());

    WitnessCertificate cert;
    cert.spec = spec;
    cert.plan = make_witness_plan(spec, *d);
    cert.build = build_prop31_sring(cert.plan);
    const SRing& a = cert.build.ring;

    PermutationGroup stab = scheme_stabilizer_autos(a, budget);
    cert.aut_e_order = stab.order();
    {
        std::vector<std::vector<uint32_t>> orbs = orbits(stab);
        std::set<std::vector<uint32_t>> orb_set(orbs.begin(), orbs.end());
        std::set<std::vector<uint32_t>> cls_set(a.classes().begin(), a.classes().end());
        cert.a_schurian = orb_set == cls_set;
    }
    {
        std::vector<Perm> aut_gens = right_regular(cert.plan.h).generators();
        for (const Perm& p : stab.generators()) aut_gens.push_back(p);
        PermutationGroup aut(a.degree(), aut_gens);
        cert.aut_order_consistent =
            aut.order() == static_cast<BigCount>(a.degree()) * cert.aut_e_order;
    }

    SRing fused = fusion(a, {cert.build.phi});
    cert.fusion_rank = fused.rank();
    uint32_t moved = 0;
    for (uint32_t i = 0; i < a.rank(); ++i)
        if (cert.build.phi.class_map[i] != i) ++moved;
    cert.fusion_rank_expected = fused.rank() == a.rank() - moved / 2;
    cert.fusion_non_schurian = !is_schurian(fused, budget);

    if (run_direct_search) cert.direct_search = find_inducing_iso(a, cert.build.phi, budget);

    if (cert.plan.h->order() < cert.plan.g->order()) {
        cert.lifted = true;
        LiftResult lift = lift_by_wreath(a, cert.build.phi, cert.plan.g);
        uint32_t index = cert.plan.g->order() / cert.plan.h->order();
        bool rank_ok = lift.ring.rank() == a.rank() + index - 1;
        // psi restricted to the embedded classes is phi.
        bool restriction_ok = true;
        for (uint32_t x = 0; x < a.rank(); ++x) {
            uint32_t lifted_x = lift.ring.class_of(lift.embed[a.cls(x)[0]]);
            uint32_t lifted_phix = lift.ring.class_of(lift.embed[a.cls(cert.build.phi.class_map[x])[0]]);
            restriction_ok &= lift.psi[lifted_x] == lifted_phix;
        }
        cert.lift_valid = rank_ok && restriction_ok;
        cert.lifted_ring = std::move(lift.ring);
        cert.lift_embed = std::move(lift.embed);
        cert.psi = std::move(lift.psi);
    }

    if (cert.chain_holds())
        cert.conclusion = "group " + spec.literal() + " is not weakly separable";
    return cert;
}

namespace {

Json big_json(BigCount v) {
    if (v <= 9007199254740992ull) return static_cast<uint64_t>(v);
    return to_string(v);
}

} // namespace

std::string certificate_to_json(const WitnessCertificate& cert, int indent) {
    const AbelianGroup& h = *cert.plan.h;
    Json plan;
    plan["branch"] = branch_name(cert.plan.branch);
    plan["h2_shape"] = h2_shape_name(cert.plan.h2_shape);
    plan["h_factors"] = h.factors();
    plan["h1_order"] = cert.plan.h1.order();
    plan["h2_order"] = cert.plan.h2.order();
    plan["p1"] = cert.plan.p1;
    plan["q1"] = cert.plan.q1;
    plan["m2"] = cert.plan.m2;
    plan["a1"] = h.residues_of(cert.plan.a1);
    plan["b1"] = h.residues_of(cert.plan.b1);
    if (cert.plan.branch == WitnessBranch::CyclicA2) {
        plan["a2"] = h.residues_of(cert.plan.a2);
    } else {
        plan["a21"] = h.residues_of(cert.plan.a21);
        plan["a22"] = h.residues_of(cert.plan.a22);
    }
    plan["b2"] = h.residues_of(cert.plan.b2);
    plan["l_order"] = cert.plan.l_sub.order();

    Json j;
    j["schema"] = 1;
    j["group"] = cert.spec.literal();
    j["plan"] = std::move(plan);
    Json sig = Json::array();
    for (const Perm& s : cert.build.sigmas) sig.push_back(s);
    j["sigmas"] = std::move(sig);
    j["K_order"] = big_json(cert.build.k_order);
    j["sring"] = Json::parse(sring_to_json(cert.build.ring, indent));
    j["rank_A"] = cert.build.ring.rank();
    j["phi"] = cert.build.phi.class_map;
    j["w_classes"] = cert.build.w_classes;
    j["aut_e_order"] = big_json(cert.aut_e_order);
    j["fusion_rank"] = cert.fusion_rank;
    if (cert.direct_search) {
        Json ds;
        ds["phi"] = cert.build.phi.class_map;
        ds["status"] = iso_status_name(cert.direct_search->status);
        ds["e_fixed"] = true;
        if (cert.direct_search->witness) ds["witness"] = *cert.direct_search->witness;
        ds["nodes"] = cert.direct_search->nodes_explored;
        j["direct_search"] = std::move(ds);
    }
    if (cert.lifted) {
        Json lift;
        lift["group"] = cert.plan.g->literal();
        lift["rank"] = cert.lifted_ring->rank();
        lift["psi"] = cert.psi;
        lift["embed"] = cert.lift_embed;
        lift["sring"] = Json::parse(sring_to_json(*cert.lifted_ring, indent));
        j["lift"] = std::move(lift);
    }
    Json checks;
    checks["eq1"] = cert.build.ring.check_eq1();
    checks["all_classes_symmetric"] = cert.build.all_symmetric;
    checks["basic_sets_match_formulas"] = cert.build.formulas_match;
    checks["phi_is_alg_auto"] = true; // construction fails otherwise
    checks["phi_order_2"] = [&] {
        bool nontrivial = false, involution = true;
        const auto& m = cert.build.phi.class_map;
        for (uint32_t i = 0; i < m.size(); ++i) {
            if (m[i] != i) nontrivial = true;
            involution &= m[m[i]] == i;
        }
        return nontrivial && involution;
    }();
    checks["w_sizes_eq_2"] = cert.build.w_sizes_two;
    checks["product_patterns"] = cert.build.product_patterns;
    checks["A_is_s_wreath"] = cert.build.s_wreath;
    checks["s_wreath_proper"] = cert.build.s_wreath_proper;
    checks["A_schurian"] = cert.a_schurian;
    checks["aut_order_consistent"] = cert.aut_order_consistent;
    checks["fusion_rank"] = cert.fusion_rank_expected;
    checks["fusion_non_schurian"] = cert.fusion_non_schurian;
    if (cert.direct_search)
        checks["direct_search_not_found"] = cert.direct_search->status == IsoStatus::NotFound;
    if (cert.lifted) checks["lift_valid"] = cert.lift_valid;
    j["checks"] = std::move(checks);
    j["conclusion"] = cert.conclusion;
    return j.dump(indent) + "\n";
}

} // namespace schurkit
