#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "schurkit/error.hpp"

namespace schurkit {

// Residue vector of an element, one entry per primary factor.
using Residues = std::vector<uint32_t>;

// Finite abelian group in primary decomposition. Factors are prime powers,
// canonically sorted ascending by numeric value; elements are residue vectors
// and carry a dense index equal to their lexicographic rank, so the identity
// is always index 0.
class AbelianGroup {
public:
    static std::shared_ptr<const AbelianGroup> make(const std::vector<uint32_t>& factor_orders);

    const std::vector<uint32_t>& factors() const { return factors_; }
    const std::vector<uint32_t>& factor_primes() const { return primes_; }
    uint32_t order() const { return order_; }
    uint32_t identity() const { return 0; }

    uint32_t index_of(const Residues& r) const;
    Residues residues_of(uint32_t index) const;

    uint32_t compose(uint32_t a, uint32_t b) const;
    uint32_t inverse(uint32_t a) const;
    uint32_t power(uint32_t a, int64_t k) const;
    uint32_t element_order(uint32_t a) const;

    // Index of the canonical generator of factor i (residue vector e_i).
    uint32_t factor_generator(std::size_t i) const;

    // "15x8"-style literal of the canonical factor list.
    std::string literal() const;

    bool same_structure(const AbelianGroup& o) const { return factors_ == o.factors_; }

private:
    AbelianGroup() = default;

    friend std::shared_ptr<const AbelianGroup> make_group_tracked(
        const std::vector<uint32_t>&, std::vector<std::size_t>&);

    std::vector<uint32_t> factors_;
    std::vector<uint32_t> primes_;
    std::vector<uint32_t> strides_; // strides_[i] = product of factors_[i+1..]
    uint32_t order_ = 1;
};

using GroupPtr = std::shared_ptr<const AbelianGroup>;

struct Subgroup {
    GroupPtr parent;
    std::vector<uint32_t> elements;   // sorted indices
    std::vector<uint32_t> generators; // indices

    uint32_t order() const { return static_cast<uint32_t>(elements.size()); }
    bool contains(uint32_t g) const;
};

struct GroupAutomorphism {
    GroupPtr parent;
    std::vector<uint32_t> image_table; // image_table[g] = image of g

    uint32_t apply(uint32_t g) const { return image_table[g]; }
};

// Canonicalizes arbitrary cyclic factor lists into the primary decomposition.
GroupPtr make_group(const std::vector<uint32_t>& factor_orders);

// Same, but also reports where each prime-power part of the input ended up:
// canonical_position[k] is the index in factors() of the k-th prime-power part
// (parts enumerated in input order, each input split into ascending primes).
GroupPtr make_group_tracked(const std::vector<uint32_t>& factor_orders,
                            std::vector<std::size_t>& canonical_position);

// Residue-vector arithmetic with range validation.
Residues compose_res(const AbelianGroup& g, const Residues& a, const Residues& b);
Residues inverse_res(const AbelianGroup& g, const Residues& a);
uint32_t element_order_res(const AbelianGroup& g, const Residues& a);

uint32_t checked_index(const AbelianGroup& g, const Residues& r);

Subgroup subgroup_generated(GroupPtr g, const std::vector<uint32_t>& gens);
Subgroup sylow_subgroup(GroupPtr g, uint32_t p);

// The unique homomorphic extension of generator images, validated to be a
// well-defined bijection. generator_images[i] is the image of factor_generator(i).
GroupAutomorphism make_automorphism(GroupPtr g, const std::vector<uint32_t>& generator_images);

// rad(X) = { g : g + X = X }, always a subgroup.
Subgroup radical(GroupPtr g, const std::vector<uint32_t>& x);

// Group literal parsing ("15x8" -> make_group({15,8})).
GroupPtr parse_group_literal(const std::string& s);
std::string format_residues(const Residues& r);
Residues parse_residues(const std::string& s, std::size_t expected_len);

bool is_prime(uint32_t n);

} // namespace schurkit
