#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "schurkit/groups.hpp"
#include "schurkit/permgrp.hpp"

namespace schurkit {

struct AlgebraicIso; // morphisms.hpp

// A validated partition of a group together with its structure-constant
// tensor. Classes are kept in canonical order: sorted by (size, smallest
// element), which puts the identity class first.
class SRing {
public:
    // Empty placeholder; every meaningful instance comes from from_partition.
    SRing() = default;

    // Validates all axioms: identity class, inverse closure, module closure
    // (checked on every element, not one representative) and the integer
    // identity relating c^Z_{X,Y} across cyclic rotations of X,Y,Z.
    static SRing from_partition(GroupPtr g, std::vector<std::vector<uint32_t>> classes);

    const GroupPtr& group() const { return group_; }
    uint32_t degree() const { return group_->order(); }
    uint32_t rank() const { return static_cast<uint32_t>(classes_.size()); }
    const std::vector<std::vector<uint32_t>>& classes() const { return classes_; }
    const std::vector<uint32_t>& cls(uint32_t i) const { return classes_[i]; }
    uint32_t class_of(uint32_t g) const { return class_of_[g]; }
    uint32_t inverse_class(uint32_t x) const { return inv_class_[x]; }
    bool class_symmetric(uint32_t x) const { return inv_class_[x] == x; }

    // c^Z_{X,Y}: factorizations of a fixed z in Z as xy with x in X, y in Y.
    uint32_t constant(uint32_t x, uint32_t y, uint32_t z) const {
        return tensor_[(static_cast<std::size_t>(x) * rank() + y) * rank() + z];
    }
    const std::vector<uint32_t>& tensor() const { return tensor_; }

    // Color of the Cayley-scheme arc (g, h), i.e. the class of h g^{-1}.
    uint32_t arc_color(uint32_t g, uint32_t h) const {
        return class_of_[group_->compose(h, group_->inverse(g))];
    }

    bool check_eq1() const;

    bool operator==(const SRing& o) const {
        return group_->same_structure(*o.group_) && classes_ == o.classes_;
    }

private:
    GroupPtr group_;
    std::vector<std::vector<uint32_t>> classes_;
    std::vector<uint32_t> class_of_;
    std::vector<uint32_t> inv_class_;
    std::vector<uint32_t> tensor_;
};

struct Section {
    Subgroup u;
    Subgroup l;
};

SRing sring_from_partition(GroupPtr g, std::vector<std::vector<uint32_t>> classes);

// Basic sets = orbits of the group generated by the automorphisms.
SRing cyclotomic(GroupPtr g, const std::vector<GroupAutomorphism>& autos);

// Basic sets = orbits of the point stabilizer of the identity. The generator
// list of k must contain the right-regular translations of g's primary
// generators (the cheap sufficient containment check).
SRing transitivity_module(GroupPtr g, const PermutationGroup& k);

bool is_a_set(const SRing& a, const std::vector<uint32_t>& x);

// Every subgroup that is a union of basic sets, via join closure of the
// groups generated by single classes.
std::vector<Subgroup> a_subgroups(const SRing& a);

// The S-ring induced on U/L by the canonical epimorphism.
SRing quotient(const SRing& a, const Section& s);

struct WreathResult {
    SRing ring;
    std::vector<uint32_t> embed;       // H-index -> G-index monomorphism
    std::vector<uint32_t> class_image; // B-class index -> lifted class index
};

// B wreath Z(G/H): classes of B inside the canonically embedded copy of
// B's group, plus each nontrivial coset of it as one class.
WreathResult wreath_product(const SRing& b, GroupPtr g);

struct SWreathStatus {
    bool is_s_wreath;
    bool proper;
};

SWreathStatus is_s_wreath(const SRing& a, const Section& s);

// Algebraic fusion: classes are unions of orbits of the closure of phis on
// class indices. Each map is re-verified as an algebraic automorphism.
SRing fusion(const SRing& a, const std::vector<AlgebraicIso>& phis);

// Interchange format: {"group": [factors], "classes": [[residue vectors]]}.
std::string sring_to_json(const SRing& a, int indent = 2);
SRing sring_from_json(const std::string& text);

} // namespace schurkit
