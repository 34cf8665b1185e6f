#include "schurkit/permgrp.hpp"

#include <algorithm>
#include <set>

namespace schurkit {

Perm perm_identity(uint32_t degree) {
    Perm p(degree);
    for (uint32_t i = 0; i < degree; ++i) p[i] = i;
    return p;
}

bool perm_is_identity(const Perm& p) {
    for (uint32_t i = 0; i < p.size(); ++i)
        if (p[i] != i) return false;
    return true;
}

Perm perm_compose(const Perm& p, const Perm& q) {
    Perm r(p.size());
    for (uint32_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
    return r;
}

Perm perm_inverse(const Perm& p) {
    Perm r(p.size());
    for (uint32_t i = 0; i < p.size(); ++i) r[p[i]] = i;
    return r;
}

PermutationGroup::PermutationGroup(uint32_t degree, std::vector<Perm> generators)
    : degree_(degree), gens_(std::move(generators)) {
    for (const Perm& g : gens_) {
        if (g.size() != degree_) fail(Err::InvalidElement, "generator degree mismatch");
        std::vector<bool> hit(degree_, false);
        for (uint32_t v : g) {
            if (v >= degree_ || hit[v]) fail(Err::NotBijective, "generator is not a permutation");
            hit[v] = true;
        }
    }
}

namespace {

std::vector<Perm> dedup_nonidentity(const std::vector<Perm>& gens) {
    std::set<Perm> seen;
    std::vector<Perm> out;
    for (const Perm& g : gens) {
        if (perm_is_identity(g)) continue;
        if (seen.insert(g).second) out.push_back(g);
    }
    return out;
}

// Orbit of pt with a transversal: reps[x] maps pt to x for x in the orbit.
void orbit_transversal(const std::vector<Perm>& gens, uint32_t degree, uint32_t pt,
                       std::vector<uint32_t>& orbit, std::vector<Perm>& reps) {
    std::vector<int32_t> rep_of(degree, -1);
    orbit.clear();
    reps.assign(degree, {});
    orbit.push_back(pt);
    reps[pt] = perm_identity(degree);
    rep_of[pt] = 1;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
        uint32_t x = orbit[head];
        for (const Perm& g : gens) {
            uint32_t y = g[x];
            if (rep_of[y] < 0) {
                rep_of[y] = 1;
                reps[y] = perm_compose(g, reps[x]);
                orbit.push_back(y);
            }
        }
    }
}

BigCount chain_order(std::vector<Perm> gens, uint32_t degree) {
    gens = dedup_nonidentity(gens);
    if (gens.empty()) return 1;
    // Base = natural point order: stabilize the smallest moved point.
    uint32_t beta = degree;
    for (uint32_t i = 0; i < degree && beta == degree; ++i)
        for (const Perm& g : gens)
            if (g[i] != i) {
                beta = i;
                break;
            }
    if (beta == degree) return 1;

    std::vector<uint32_t> orbit;
    std::vector<Perm> reps;
    orbit_transversal(gens, degree, beta, orbit, reps);

    std::set<Perm> schreier;
    for (uint32_t x : orbit) {
        for (const Perm& g : gens) {
            Perm s = perm_compose(perm_inverse(reps[g[x]]), perm_compose(g, reps[x]));
            if (!perm_is_identity(s)) schreier.insert(std::move(s));
        }
    }
    std::vector<Perm> next(schreier.begin(), schreier.end());
    BigCount rest = chain_order(std::move(next), degree);
    BigCount limit = ~static_cast<BigCount>(0);
    if (rest > limit / orbit.size())
        fail(Err::Overflow, "group order exceeds the supported 128-bit range");
    return static_cast<BigCount>(orbit.size()) * rest;
}

} // namespace

BigCount PermutationGroup::order() const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (!cache_->value) cache_->value = chain_order(gens_, degree_);
    return *cache_->value;
}

PermutationGroup right_regular(GroupPtr g) {
    std::vector<Perm> gens;
    for (std::size_t i = 0; i < g->factors().size(); ++i) {
        uint32_t t = g->factor_generator(i);
        Perm p(g->order());
        for (uint32_t x = 0; x < g->order(); ++x) p[x] = g->compose(x, t);
        gens.push_back(std::move(p));
    }
    return PermutationGroup(g->order(), std::move(gens));
}

std::vector<std::vector<uint32_t>> orbits(const PermutationGroup& k) {
    uint32_t n = k.degree();
    std::vector<int32_t> orbit_of(n, -1);
    std::vector<std::vector<uint32_t>> out;
    for (uint32_t start = 0; start < n; ++start) {
        if (orbit_of[start] >= 0) continue;
        std::vector<uint32_t> orb{start};
        orbit_of[start] = static_cast<int32_t>(out.size());
        for (std::size_t head = 0; head < orb.size(); ++head) {
            for (const Perm& g : k.generators()) {
                uint32_t y = g[orb[head]];
                if (orbit_of[y] < 0) {
                    orbit_of[y] = static_cast<int32_t>(out.size());
                    orb.push_back(y);
                }
            }
        }
        std::sort(orb.begin(), orb.end());
        out.push_back(std::move(orb));
    }
    return out;
}

PermutationGroup point_stabilizer(const PermutationGroup& k, uint32_t pt) {
    if (pt >= k.degree()) fail(Err::InvalidElement, "stabilized point out of range");
    std::vector<Perm> gens = dedup_nonidentity(k.generators());
    std::vector<uint32_t> orbit;
    std::vector<Perm> reps;
    orbit_transversal(gens, k.degree(), pt, orbit, reps);

    std::set<Perm> schreier;
    for (uint32_t x : orbit) {
        for (const Perm& g : gens) {
            Perm s = perm_compose(perm_inverse(reps[g[x]]), perm_compose(g, reps[x]));
            if (!perm_is_identity(s)) schreier.insert(std::move(s));
        }
    }
    return PermutationGroup(k.degree(), std::vector<Perm>(schreier.begin(), schreier.end()));
}

BigCount group_order(const PermutationGroup& k) { return k.order(); }

} // namespace schurkit
