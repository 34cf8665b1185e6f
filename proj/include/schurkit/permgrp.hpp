#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "schurkit/bigcount.hpp"
#include "schurkit/groups.hpp"

namespace schurkit {

// A permutation on points 0..n-1 as an image table.
using Perm = std::vector<uint32_t>;

Perm perm_identity(uint32_t degree);
bool perm_is_identity(const Perm& p);
// (p * q)(x) = p(q(x)), i.e. apply q first.
Perm perm_compose(const Perm& p, const Perm& q);
Perm perm_inverse(const Perm& p);

// Generator-based permutation group. Queries answer about the full group
// generated; the order is computed once through a stabilizer chain with the
// natural base order 0,1,2,... and cached.
class PermutationGroup {
public:
    PermutationGroup() = default;
    PermutationGroup(uint32_t degree, std::vector<Perm> generators);

    uint32_t degree() const { return degree_; }
    const std::vector<Perm>& generators() const { return gens_; }

    BigCount order() const;

private:
    struct OrderCache {
        std::mutex mu;
        std::optional<BigCount> value;
    };

    uint32_t degree_ = 0;
    std::vector<Perm> gens_;
    std::shared_ptr<OrderCache> cache_ = std::make_shared<OrderCache>();
};

// The regular representation by right translations, generated by the
// translations of the primary-factor generators.
PermutationGroup right_regular(GroupPtr g);

// Orbit partition of 0..degree-1 under the group, classes sorted by minimum.
std::vector<std::vector<uint32_t>> orbits(const PermutationGroup& k);

// Stabilizer of a point via Schreier generators from its orbit. Generators
// are returned unreduced apart from deduplication of identical tables.
PermutationGroup point_stabilizer(const PermutationGroup& k, uint32_t pt);

BigCount group_order(const PermutationGroup& k);

} // namespace schurkit
