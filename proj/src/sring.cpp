#include "schurkit/sring.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include <json.hpp>

#include "schurkit/morphisms.hpp"

namespace schurkit {

using Json = nlohmann::ordered_json;

SRing SRing::from_partition(GroupPtr g, std::vector<std::vector<uint32_t>> classes) {
    const uint32_t n = g->order();
    for (auto& c : classes) {
        if (c.empty()) fail(Err::InvalidPartition, "empty class");
        std::sort(c.begin(), c.end());
    }
    std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });

    SRing r;
    r.group_ = g;
    r.class_of_.assign(n, n);
    for (std::size_t i = 0; i < classes.size(); ++i) {
        for (uint32_t e : classes[i]) {
            if (e >= n) fail(Err::InvalidElement, "class element out of range");
            if (r.class_of_[e] != n) fail(Err::InvalidPartition, "classes are not disjoint");
            r.class_of_[e] = static_cast<uint32_t>(i);
        }
    }
    for (uint32_t e = 0; e < n; ++e)
        if (r.class_of_[e] == n) fail(Err::InvalidPartition, "classes do not cover the group");

    if (classes.empty() || classes[0] != std::vector<uint32_t>{g->identity()})
        fail(Err::MissingIdentityClass, "{e} is not a class");
    r.classes_ = std::move(classes);

    const uint32_t rank = r.rank();
    r.inv_class_.assign(rank, 0);
    for (uint32_t x = 0; x < rank; ++x) {
        uint32_t ix = r.class_of_[g->inverse(r.classes_[x][0])];
        for (uint32_t e : r.classes_[x])
            if (r.class_of_[g->inverse(e)] != ix)
                fail(Err::NotInverseClosed,
                     "inverse of class " + std::to_string(x) + " is not a class");
        if (r.classes_[x].size() != r.classes_[ix].size())
            fail(Err::NotInverseClosed, "inverse image of class " + std::to_string(x) +
                                            " has a different size");
        r.inv_class_[x] = ix;
    }

    // One pass over G x G binned by (class(x), class(y)); module closure is
    // the constancy of the per-element counts on every class.
    r.tensor_.assign(static_cast<std::size_t>(rank) * rank * rank, 0);
    std::vector<uint32_t> acc(n);
    for (uint32_t x = 0; x < rank; ++x) {
        for (uint32_t y = 0; y < rank; ++y) {
            std::fill(acc.begin(), acc.end(), 0);
            for (uint32_t ex : r.classes_[x])
                for (uint32_t ey : r.classes_[y]) ++acc[g->compose(ex, ey)];
            for (uint32_t z = 0; z < rank; ++z) {
                uint32_t c = acc[r.classes_[z][0]];
                for (uint32_t ez : r.classes_[z])
                    if (acc[ez] != c)
                        fail(Err::NotProductClosed,
                             "product of classes " + std::to_string(x) + " and " + std::to_string(y) +
                                 " gives coefficient " + std::to_string(acc[r.classes_[z][0]]) +
                                 " on element " + std::to_string(r.classes_[z][0]) + " but " +
                                 std::to_string(acc[ez]) + " on element " + std::to_string(ez));
                r.tensor_[(static_cast<std::size_t>(x) * rank + y) * rank + z] = c;
            }
        }
    }
    if (!r.check_eq1())
        fail(Err::NotProductClosed, "structure constants violate the rotation identity");
    return r;
}

bool SRing::check_eq1() const {
    const uint32_t r = rank();
    for (uint32_t x = 0; x < r; ++x)
        for (uint32_t y = 0; y < r; ++y)
            for (uint32_t z = 0; z < r; ++z) {
                uint64_t a = static_cast<uint64_t>(classes_[z].size()) * constant(x, y, inv_class_[z]);
                uint64_t b = static_cast<uint64_t>(classes_[x].size()) * constant(y, z, inv_class_[x]);
                uint64_t c = static_cast<uint64_t>(classes_[y].size()) * constant(z, x, inv_class_[y]);
                if (a != b || b != c) return false;
            }
    return true;
}

SRing sring_from_partition(GroupPtr g, std::vector<std::vector<uint32_t>> classes) {
    return SRing::from_partition(g, std::move(classes));
}

SRing cyclotomic(GroupPtr g, const std::vector<GroupAutomorphism>& autos) {
    std::vector<Perm> tables;
    for (const auto& a : autos) {
        if (!a.parent->same_structure(*g)) fail(Err::InvalidElement, "automorphism over wrong group");
        tables.push_back(a.image_table);
    }
    PermutationGroup k(g->order(), std::move(tables));
    return SRing::from_partition(g, orbits(k));
}

SRing transitivity_module(GroupPtr g, const PermutationGroup& k) {
    if (k.degree() != g->order()) fail(Err::InvalidElement, "degree mismatch");
    std::set<Perm> gens(k.generators().begin(), k.generators().end());
    for (std::size_t i = 0; i < g->factors().size(); ++i) {
        uint32_t t = g->factor_generator(i);
        Perm p(g->order());
        for (uint32_t x = 0; x < g->order(); ++x) p[x] = g->compose(x, t);
        if (!gens.count(p))
            fail(Err::NotContainingRegular,
                 "generator list does not contain the right-regular translations");
    }
    PermutationGroup stab = point_stabilizer(k, g->identity());
    return SRing::from_partition(g, orbits(stab));
}

bool is_a_set(const SRing& a, const std::vector<uint32_t>& x) {
    if (x.empty()) return false;
    std::vector<bool> in_x(a.degree(), false);
    for (uint32_t e : x) {
        if (e >= a.degree()) fail(Err::InvalidElement, "set element out of range");
        in_x[e] = true;
    }
    std::set<uint32_t> touched;
    for (uint32_t e : x) touched.insert(a.class_of(e));
    std::size_t total = 0;
    for (uint32_t c : touched) {
        for (uint32_t e : a.cls(c))
            if (!in_x[e]) return false;
        total += a.cls(c).size();
    }
    return total == x.size();
}

std::vector<Subgroup> a_subgroups(const SRing& a) {
    GroupPtr g = a.group();
    std::set<std::vector<uint32_t>> seen;
    std::vector<std::vector<uint32_t>> work;
    for (const auto& c : a.classes()) {
        Subgroup h = subgroup_generated(g, c);
        if (seen.insert(h.elements).second) work.push_back(h.elements);
    }
    // Join closure; in an abelian group the join of A-subgroups is their
    // product, again an A-subgroup.
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<uint32_t>> snapshot(seen.begin(), seen.end());
        for (std::size_t i = 0; i < snapshot.size(); ++i) {
            for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
                std::vector<uint32_t> gens = snapshot[i];
                gens.insert(gens.end(), snapshot[j].begin(), snapshot[j].end());
                Subgroup join = subgroup_generated(g, gens);
                if (seen.insert(join.elements).second) grew = true;
            }
        }
    }
    std::vector<Subgroup> out;
    for (const auto& elems : seen) {
        if (!is_a_set(a, elems)) continue;
        Subgroup h;
        h.parent = g;
        h.elements = elems;
        h.generators = elems;
        out.push_back(std::move(h));
    }
    std::sort(out.begin(), out.end(), [](const Subgroup& x, const Subgroup& y) {
        if (x.elements.size() != y.elements.size()) return x.elements.size() < y.elements.size();
        return x.elements < y.elements;
    });
    return out;
}

namespace {

void require_a_section(const SRing& a, const Section& s) {
    if (!s.u.parent->same_structure(*a.group()) || !s.l.parent->same_structure(*a.group()))
        fail(Err::NotASection, "section subgroups belong to a different group");
    if (!is_a_set(a, s.u.elements)) fail(Err::NotASection, "U is not an A-subgroup");
    if (!is_a_set(a, s.l.elements)) fail(Err::NotASection, "L is not an A-subgroup");
    for (uint32_t e : s.l.elements)
        if (!s.u.contains(e)) fail(Err::NotASection, "L is not contained in U");
}

// Composition table of U/L on canonical (minimal) coset representatives.
struct CosetGroup {
    std::vector<uint32_t> reps;           // sorted minimal representatives
    std::vector<uint32_t> coset_of_elem;  // U-element index -> coset id (dense over G, only U valid)
    GroupPtr g;

    uint32_t compose(uint32_t a, uint32_t b) const { return coset_of_elem[g->compose(reps[a], reps[b])]; }
    uint32_t identity_coset() const { return coset_of_elem[g->identity()]; }
    uint32_t order(uint32_t c) const {
        uint32_t k = 1, x = c;
        uint32_t e = identity_coset();
        while (x != e) {
            x = compose(x, c);
            ++k;
        }
        return k;
    }
    std::size_t size() const { return reps.size(); }
};

CosetGroup coset_group(GroupPtr g, const Subgroup& u, const Subgroup& l) {
    CosetGroup q;
    q.g = g;
    q.coset_of_elem.assign(g->order(), UINT32_MAX);
    std::vector<uint32_t> rep_of_elem(g->order(), UINT32_MAX);
    for (uint32_t e : u.elements) {
        uint32_t rep = UINT32_MAX;
        for (uint32_t x : l.elements) rep = std::min(rep, g->compose(e, x));
        rep_of_elem[e] = rep;
    }
    std::set<uint32_t> reps_set;
    for (uint32_t e : u.elements) reps_set.insert(rep_of_elem[e]);
    q.reps.assign(reps_set.begin(), reps_set.end());
    std::map<uint32_t, uint32_t> id_of;
    for (std::size_t i = 0; i < q.reps.size(); ++i) id_of[q.reps[i]] = static_cast<uint32_t>(i);
    for (uint32_t e : u.elements) q.coset_of_elem[e] = id_of[rep_of_elem[e]];
    return q;
}

// Basis of a finite abelian group given by a composition table, one prime at
// a time: repeatedly split off an element whose order equals the order of its
// coset modulo the span so far.
std::vector<uint32_t> abelian_basis(const CosetGroup& q) {
    std::vector<uint32_t> basis; // coset ids
    std::size_t m = q.size();
    if (m == 1) return basis;

    std::vector<uint32_t> ord(m);
    for (uint32_t c = 0; c < m; ++c) ord[c] = q.order(c);

    std::set<uint32_t> primes;
    for (uint32_t c = 0; c < m; ++c)
        for (uint32_t p = 2; p <= ord[c]; ++p)
            if (is_prime(p) && ord[c] % p == 0) primes.insert(p);

    for (uint32_t p : primes) {
        std::vector<uint32_t> part; // the Sylow p-part
        for (uint32_t c = 0; c < m; ++c) {
            uint32_t o = ord[c];
            while (o % p == 0) o /= p;
            if (o == 1) part.push_back(c);
        }
        std::vector<bool> span(m, false);
        span[q.identity_coset()] = true;
        std::size_t span_size = 1;
        std::vector<uint32_t> p_basis;
        while (span_size < part.size()) {
            // Order of c modulo the span: least p-power k with c^k in span.
            auto coset_order = [&](uint32_t c) {
                uint32_t k = 1, x = c;
                while (!span[x]) {
                    x = q.compose(x, c);
                    ++k;
                }
                // k is the least with c^k in span; round up to the p-power order.
                uint32_t pk = 1;
                while (pk < k) pk *= p;
                return pk;
            };
            uint32_t best = UINT32_MAX, best_ord = 0;
            for (uint32_t c : part) {
                if (span[c]) continue;
                uint32_t co = coset_order(c);
                if (co > best_ord || (co == best_ord && c < best)) {
                    best_ord = co;
                    best = c;
                }
            }
            // A representative of full order exists in best * span.
            uint32_t inv_best = q.identity_coset();
            for (uint32_t i = 0; i + 1 < ord[best]; ++i) inv_best = q.compose(inv_best, best);
            uint32_t chosen = UINT32_MAX;
            for (uint32_t c : part) {
                if (span[c]) continue;
                if (ord[c] != best_ord || coset_order(c) != best_ord) continue;
                if (span[q.compose(c, inv_best)] && (chosen == UINT32_MAX || c < chosen)) chosen = c;
            }
            if (chosen == UINT32_MAX)
                fail(Err::InvalidPartition, "internal: abelian basis extraction failed");
            p_basis.push_back(chosen);
            // Regrow the span.
            std::fill(span.begin(), span.end(), false);
            span[q.identity_coset()] = true;
            std::vector<uint32_t> frontier{q.identity_coset()};
            std::vector<uint32_t> all_basis = p_basis;
            while (!frontier.empty()) {
                std::vector<uint32_t> next;
                for (uint32_t x : frontier)
                    for (uint32_t b : all_basis) {
                        uint32_t y = q.compose(x, b);
                        if (!span[y]) {
                            span[y] = true;
                            next.push_back(y);
                        }
                    }
                frontier = std::move(next);
            }
            span_size = static_cast<std::size_t>(std::count(span.begin(), span.end(), true));
        }
        basis.insert(basis.end(), p_basis.begin(), p_basis.end());
    }
    return basis;
}

} // namespace

SRing quotient(const SRing& a, const Section& s) {
    require_a_section(a, s);
    GroupPtr g = a.group();
    CosetGroup cg = coset_group(g, s.u, s.l);

    std::vector<uint32_t> basis = abelian_basis(cg);
    std::vector<uint32_t> factor_orders;
    for (uint32_t b : basis) factor_orders.push_back(cg.order(b));

    std::vector<std::size_t> canon_pos;
    GroupPtr q = factor_orders.empty() ? make_group({}) : make_group_tracked(factor_orders, canon_pos);

    // Enumerate residue tuples to map cosets onto the canonical group.
    std::vector<uint32_t> coset_to_q(cg.size(), UINT32_MAX);
    {
        std::vector<uint32_t> tuple(basis.size(), 0);
        while (true) {
            uint32_t coset = cg.identity_coset();
            Residues res(q->factors().size(), 0);
            for (std::size_t i = 0; i < basis.size(); ++i) {
                uint32_t x = cg.identity_coset();
                for (uint32_t k = 0; k < tuple[i]; ++k) x = cg.compose(x, basis[i]);
                coset = cg.compose(coset, x);
                res[canon_pos[i]] = tuple[i];
            }
            if (coset_to_q[coset] != UINT32_MAX)
                fail(Err::InvalidPartition, "internal: basis does not span the quotient");
            coset_to_q[coset] = q->index_of(res);
            std::size_t i = 0;
            for (; i < basis.size(); ++i) {
                if (++tuple[i] < cg.order(basis[i])) break;
                tuple[i] = 0;
            }
            if (i == basis.size()) break;
            if (basis.empty()) break;
        }
    }
    for (uint32_t c = 0; c < cg.size(); ++c)
        if (coset_to_q[c] == UINT32_MAX)
            fail(Err::InvalidPartition, "internal: quotient coset not reached");

    std::set<std::vector<uint32_t>> images;
    std::vector<bool> in_u(g->order(), false);
    for (uint32_t e : s.u.elements) in_u[e] = true;
    for (const auto& c : a.classes()) {
        if (!in_u[c[0]]) continue;
        std::set<uint32_t> img;
        for (uint32_t e : c) img.insert(coset_to_q[cg.coset_of_elem[e]]);
        images.insert(std::vector<uint32_t>(img.begin(), img.end()));
    }
    return SRing::from_partition(q, std::vector<std::vector<uint32_t>>(images.begin(), images.end()));
}

namespace {

// Greedy matching of H's prime-power factors into distinct factors of G,
// largest exponent first, smallest adequate target.
std::vector<uint32_t> embed_monomorphism(const AbelianGroup& h, const AbelianGroup& g) {
    std::vector<std::size_t> h_order(h.factors().size());
    for (std::size_t i = 0; i < h_order.size(); ++i) h_order[i] = i;
    std::sort(h_order.begin(), h_order.end(), [&](std::size_t x, std::size_t y) {
        return h.factors()[x] > h.factors()[y];
    });
    std::vector<bool> used(g.factors().size(), false);
    std::vector<std::size_t> target(h.factors().size());
    for (std::size_t hi : h_order) {
        uint32_t p = h.factor_primes()[hi];
        uint32_t f = h.factors()[hi];
        std::size_t pick = SIZE_MAX;
        for (std::size_t gi = 0; gi < g.factors().size(); ++gi) {
            if (used[gi] || g.factor_primes()[gi] != p || g.factors()[gi] % f != 0) continue;
            if (pick == SIZE_MAX || g.factors()[gi] < g.factors()[pick]) pick = gi;
        }
        if (pick == SIZE_MAX)
            fail(Err::HNotSubgroup, "no embedding of " + h.literal() + " into " + g.literal());
        used[pick] = true;
        target[hi] = pick;
    }
    std::vector<uint32_t> embed(h.order());
    for (uint32_t x = 0; x < h.order(); ++x) {
        Residues rh = h.residues_of(x);
        Residues rg(g.factors().size(), 0);
        for (std::size_t i = 0; i < rh.size(); ++i)
            rg[target[i]] = rh[i] * (g.factors()[target[i]] / h.factors()[i]);
        embed[x] = g.index_of(rg);
    }
    return embed;
}

} // namespace

WreathResult wreath_product(const SRing& b, GroupPtr g) {
    const AbelianGroup& h = *b.group();
    std::vector<uint32_t> embed = embed_monomorphism(h, *g);

    std::vector<std::vector<uint32_t>> classes;
    for (const auto& c : b.classes()) {
        std::vector<uint32_t> img;
        for (uint32_t e : c) img.push_back(embed[e]);
        std::sort(img.begin(), img.end());
        classes.push_back(std::move(img));
    }
    // Each nontrivial coset of the embedded subgroup is one class.
    std::vector<bool> in_h(g->order(), false);
    for (uint32_t x = 0; x < h.order(); ++x) in_h[embed[x]] = true;
    std::vector<bool> covered(g->order(), false);
    for (uint32_t e = 0; e < g->order(); ++e) covered[e] = in_h[e];
    for (uint32_t e = 0; e < g->order(); ++e) {
        if (covered[e]) continue;
        std::vector<uint32_t> coset;
        for (uint32_t x = 0; x < h.order(); ++x) {
            uint32_t y = g->compose(e, embed[x]);
            coset.push_back(y);
            covered[y] = true;
        }
        std::sort(coset.begin(), coset.end());
        classes.push_back(std::move(coset));
    }

    WreathResult out{SRing::from_partition(g, classes), std::move(embed), {}};
    out.class_image.resize(b.rank());
    for (uint32_t x = 0; x < b.rank(); ++x)
        out.class_image[x] = out.ring.class_of(out.embed[b.cls(x)[0]]);
    return out;
}

SWreathStatus is_s_wreath(const SRing& a, const Section& s) {
    require_a_section(a, s);
    std::vector<bool> in_u(a.degree(), false);
    for (uint32_t e : s.u.elements) in_u[e] = true;
    std::vector<bool> in_l(a.degree(), false);
    for (uint32_t e : s.l.elements) in_l[e] = true;

    bool holds = true;
    for (const auto& c : a.classes()) {
        if (in_u[c[0]]) continue;
        // L <= rad(X): every translate of X by L stays X.
        std::vector<bool> in_c(a.degree(), false);
        for (uint32_t e : c) in_c[e] = true;
        for (uint32_t t : s.l.elements) {
            for (uint32_t e : c)
                if (!in_c[a.group()->compose(e, t)]) {
                    holds = false;
                    break;
                }
            if (!holds) break;
        }
        if (!holds) break;
    }
    bool proper = s.l.order() > 1 && s.u.order() < a.degree();
    return SWreathStatus{holds, proper};
}

SRing fusion(const SRing& a, const std::vector<AlgebraicIso>& phis) {
    const uint32_t rank = a.rank();
    std::set<std::vector<uint32_t>> closure;
    std::vector<uint32_t> ident(rank);
    for (uint32_t i = 0; i < rank; ++i) ident[i] = i;
    closure.insert(ident);
    std::vector<std::vector<uint32_t>> frontier{ident};
    std::vector<std::vector<uint32_t>> maps;
    for (const auto& p : phis) {
        algebraic_iso_from_map(a, a, p.class_map); // re-verify, InvalidAlgebraicIso on failure
        maps.push_back(p.class_map);
        if (closure.insert(p.class_map).second) frontier.push_back(p.class_map);
    }
    std::size_t bound = 1;
    for (uint32_t i = 2; i <= rank && bound < (1u << 24); ++i) bound *= i;
    while (!frontier.empty()) {
        std::vector<std::vector<uint32_t>> next;
        for (const auto& f : frontier) {
            for (const auto& m : maps) {
                std::vector<uint32_t> comp(rank);
                for (uint32_t i = 0; i < rank; ++i) comp[i] = m[f[i]];
                if (closure.insert(comp).second) next.push_back(std::move(comp));
            }
        }
        if (closure.size() > bound) fail(Err::NotClosed, "fusion closure exceeds the rank! bound");
        frontier = std::move(next);
    }

    // Union the orbits of the closure on class indices.
    std::vector<uint32_t> root(rank);
    for (uint32_t i = 0; i < rank; ++i) root[i] = i;
    std::function<uint32_t(uint32_t)> find = [&](uint32_t x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    for (const auto& m : closure)
        for (uint32_t i = 0; i < rank; ++i) {
            uint32_t ra = find(i), rb = find(m[i]);
            if (ra != rb) root[std::max(ra, rb)] = std::min(ra, rb);
        }
    std::map<uint32_t, std::vector<uint32_t>> merged;
    for (uint32_t i = 0; i < rank; ++i) {
        auto& cl = merged[find(i)];
        cl.insert(cl.end(), a.cls(i).begin(), a.cls(i).end());
    }
    std::vector<std::vector<uint32_t>> classes;
    for (auto& [k, v] : merged) classes.push_back(std::move(v));
    return SRing::from_partition(a.group(), std::move(classes));
}

std::string sring_to_json(const SRing& a, int indent) {
    Json j;
    j["group"] = a.group()->factors();
    Json classes = Json::array();
    for (const auto& c : a.classes()) {
        Json cls = Json::array();
        for (uint32_t e : c) cls.push_back(a.group()->residues_of(e));
        classes.push_back(std::move(cls));
    }
    j["classes"] = std::move(classes);
    return j.dump(indent) + "\n";
}

SRing sring_from_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        fail(Err::ParseError, std::string("bad S-ring JSON: ") + e.what());
    }
    if (!j.contains("group") || !j.contains("classes"))
        fail(Err::ParseError, "S-ring JSON needs 'group' and 'classes'");
    std::vector<uint32_t> factors;
    for (const auto& f : j["group"]) factors.push_back(f.get<uint32_t>());
    GroupPtr g = factors.empty() ? make_group({}) : make_group(factors);
    if (g->factors() != factors)
        fail(Err::ParseError, "S-ring group factors are not in canonical form");
    std::vector<std::vector<uint32_t>> classes;
    for (const auto& jc : j["classes"]) {
        std::vector<uint32_t> c;
        for (const auto& je : jc) {
            Residues r;
            for (const auto& v : je) r.push_back(v.get<uint32_t>());
            c.push_back(checked_index(*g, r));
        }
        classes.push_back(std::move(c));
    }
    return SRing::from_partition(g, std::move(classes));
}

} // namespace schurkit
