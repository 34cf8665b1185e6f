#include <doctest.h>

#include <functional>
#include <set>

#include "schurkit/groups.hpp"

using namespace schurkit;

namespace {

bool fails_with(Err code, const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

} // namespace

TEST_CASE("make_group canonicalizes factor lists") {
    CHECK(make_group({4})->factors() == std::vector<uint32_t>{4});
    CHECK(make_group({2, 2})->factors() == std::vector<uint32_t>{2, 2});

    GroupPtr g = make_group({15, 8});
    CHECK(g->factors() == std::vector<uint32_t>{3, 5, 8});
    CHECK(g->order() == 120);
    CHECK(g->literal() == "3x5x8");

    CHECK(make_group({9, 2, 2})->literal() == "2x2x9");
    CHECK(fails_with(Err::InvalidFactor, [] { make_group({4, 1}); }));
}

TEST_CASE("element arithmetic in C4") {
    GroupPtr g = make_group({4});
    CHECK(compose_res(*g, {1}, {3}) == Residues{0});
    CHECK(inverse_res(*g, {1}) == Residues{3});
    CHECK(element_order_res(*g, {2}) == 2);
    CHECK(fails_with(Err::InvalidElement, [&] { compose_res(*g, {4}, {0}); }));
}

TEST_CASE("compose/inverse/order laws hold exhaustively") {
    for (auto factors : {std::vector<uint32_t>{4}, {2, 2}, {15, 8}, {2, 2, 9}}) {
        GroupPtr g = make_group(factors);
        for (uint32_t x = 0; x < g->order(); ++x) {
            CHECK(g->compose(x, g->inverse(x)) == g->identity());
            CHECK(g->order() % g->element_order(x) == 0);
        }
    }
}

TEST_CASE("subgroup_generated in C15 x C8") {
    GroupPtr g = make_group({15, 8});
    auto idx = [&](Residues r) { return checked_index(*g, r); };
    CHECK(subgroup_generated(g, {idx({1, 0, 0})}).order() == 3);
    CHECK(subgroup_generated(g, {idx({0, 0, 2})}).order() == 4);
    CHECK(subgroup_generated(g, {idx({1, 0, 0}), idx({0, 1, 0})}).order() == 15);

    // Idempotence: generating from a subgroup's elements returns the same set.
    Subgroup h = subgroup_generated(g, {idx({0, 0, 2}), idx({1, 0, 0})});
    CHECK(subgroup_generated(g, h.elements).elements == h.elements);
}

TEST_CASE("sylow subgroups") {
    GroupPtr g = make_group({15, 8});
    CHECK(sylow_subgroup(g, 2).order() == 8);
    CHECK(sylow_subgroup(g, 5).order() == 5);
    CHECK(sylow_subgroup(g, 7).order() == 1);
    CHECK(sylow_subgroup(make_group({2, 2, 9}), 3).order() == 9);
    CHECK(fails_with(Err::InvalidPrime, [&] { sylow_subgroup(g, 4); }));

    // Orders multiply to |G| and the Sylow subgroups together generate G.
    std::vector<uint32_t> gens;
    uint64_t prod = 1;
    for (uint32_t p : {2u, 3u, 5u}) {
        Subgroup s = sylow_subgroup(g, p);
        prod *= s.order();
        gens.insert(gens.end(), s.elements.begin(), s.elements.end());
    }
    CHECK(prod == g->order());
    CHECK(subgroup_generated(g, gens).order() == g->order());
}

TEST_CASE("make_automorphism validates the homomorphic extension") {
    GroupPtr g = make_group({15, 8});
    auto idx = [&](Residues r) { return checked_index(*g, r); };

    // Inversion is an automorphism of any abelian group.
    GroupAutomorphism inv = make_automorphism(g, {idx({2, 0, 0}), idx({0, 4, 0}), idx({0, 0, 7})});
    for (uint32_t x = 0; x < g->order(); ++x) CHECK(inv.image_table[x] == g->inverse(x));

    // b1 -> b1*a1 maps the order-5 generator to an order-15 element: the
    // extension is not well-defined, so this is rejected.
    CHECK(fails_with(Err::NotAHomomorphism, [&] {
        make_automorphism(g, {idx({1, 0, 0}), idx({1, 1, 0}), idx({0, 0, 1})});
    }));

    // A generator of C4 mapped to an order-2 element kills injectivity.
    CHECK(fails_with(Err::NotBijective, [&] { make_automorphism(make_group({4}), {2}); }));

    // x -> 3x on the C8 part has order 2.
    GroupAutomorphism m3 = make_automorphism(g, {idx({1, 0, 0}), idx({0, 1, 0}), idx({0, 0, 3})});
    for (uint32_t x = 0; x < g->order(); ++x)
        CHECK(m3.image_table[m3.image_table[x]] == x);
}

TEST_CASE("radical of a coset is the subgroup") {
    GroupPtr g = make_group({12});
    Subgroup h = subgroup_generated(g, {checked_index(*g, {1, 2})});
    std::vector<uint32_t> coset;
    uint32_t t = checked_index(*g, {0, 1});
    for (uint32_t e : h.elements) coset.push_back(g->compose(e, t));
    std::sort(coset.begin(), coset.end());
    CHECK(radical(g, coset).elements == h.elements);

    CHECK(radical(g, {g->identity()}).order() == 1);
    CHECK(fails_with(Err::EmptySet, [&] { radical(g, {}); }));
}

TEST_CASE("radical fixes the set and nothing else does") {
    GroupPtr g = make_group({2, 2, 3});
    std::vector<uint32_t> x{0, 1, 5, 7};
    Subgroup r = radical(g, x);
    std::set<uint32_t> in_x(x.begin(), x.end());
    for (uint32_t c = 0; c < g->order(); ++c) {
        bool fixes = true;
        for (uint32_t e : x) fixes &= in_x.count(g->compose(e, c)) > 0;
        CHECK(fixes == r.contains(c));
    }
}

TEST_CASE("group literals and element literals") {
    CHECK(parse_group_literal("15x8")->literal() == "3x5x8");
    CHECK(parse_group_literal("2x2x9")->order() == 36);
    CHECK(fails_with(Err::ParseError, [] { parse_group_literal("15x"); }));
    CHECK(fails_with(Err::ParseError, [] { parse_group_literal("ab"); }));
    CHECK(fails_with(Err::InvalidFactor, [] { parse_group_literal("1x4"); }));

    Residues r{2, 4, 7};
    CHECK(parse_residues(format_residues(r), 3) == r);
    CHECK(fails_with(Err::ParseError, [] { parse_residues("[1,2", 2); }));
}
