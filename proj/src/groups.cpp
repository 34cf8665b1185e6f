#include "schurkit/groups.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace schurkit {

const char* err_name(Err e) {
    switch (e) {
        case Err::InvalidFactor: return "InvalidFactor";
        case Err::InvalidElement: return "InvalidElement";
        case Err::InvalidPrime: return "InvalidPrime";
        case Err::EmptySet: return "EmptySet";
        case Err::NotAHomomorphism: return "NotAHomomorphism";
        case Err::NotBijective: return "NotBijective";
        case Err::InvalidPartition: return "InvalidPartition";
        case Err::MissingIdentityClass: return "MissingIdentityClass";
        case Err::NotInverseClosed: return "NotInverseClosed";
        case Err::NotProductClosed: return "NotProductClosed";
        case Err::NotContainingRegular: return "NotContainingRegular";
        case Err::NotASection: return "NotASection";
        case Err::HNotSubgroup: return "HNotSubgroup";
        case Err::NotClosed: return "NotClosed";
        case Err::InvalidAlgebraicIso: return "InvalidAlgebraicIso";
        case Err::SizeMismatch: return "SizeMismatch";
        case Err::ConstantMismatch: return "ConstantMismatch";
        case Err::NotASchemeIsomorphism: return "NotASchemeIsomorphism";
        case Err::BudgetExceeded: return "BudgetExceeded";
        case Err::PlanInvalid: return "PlanInvalid";
        case Err::FormulaMismatch: return "FormulaMismatch";
        case Err::NotApplicable: return "NotApplicable";
        case Err::ParseError: return "ParseError";
        case Err::Overflow: return "Overflow";
    }
    return "UnknownError";
}

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

// Splits n >= 2 into prime-power parts, ascending by prime.
std::vector<uint32_t> prime_power_parts(uint32_t n) {
    std::vector<uint32_t> parts;
    for (uint32_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            uint32_t q = 1;
            while (n % p == 0) {
                q *= p;
                n /= p;
            }
            parts.push_back(q);
        }
    }
    if (n > 1) parts.push_back(n);
    return parts;
}

uint32_t prime_of(uint32_t prime_power) {
    for (uint32_t p = 2; p * p <= prime_power; ++p)
        if (prime_power % p == 0) return p;
    return prime_power;
}

} // namespace

std::shared_ptr<const AbelianGroup> AbelianGroup::make(const std::vector<uint32_t>& factor_orders) {
    std::vector<std::size_t> ignored;
    return make_group_tracked(factor_orders, ignored);
}

GroupPtr make_group(const std::vector<uint32_t>& factor_orders) {
    std::vector<std::size_t> ignored;
    return make_group_tracked(factor_orders, ignored);
}

GroupPtr make_group_tracked(const std::vector<uint32_t>& factor_orders,
                            std::vector<std::size_t>& canonical_position) {
    std::vector<uint32_t> parts;
    for (uint32_t f : factor_orders) {
        if (f < 2) fail(Err::InvalidFactor, "cyclic factor must be >= 2, got " + std::to_string(f));
        for (uint32_t q : prime_power_parts(f)) parts.push_back(q);
    }
    // Stable sort by numeric value keeps equal prime powers in input order.
    std::vector<std::size_t> perm(parts.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t a, std::size_t b) { return parts[a] < parts[b]; });

    auto g = std::shared_ptr<AbelianGroup>(new AbelianGroup());
    g->factors_.resize(parts.size());
    canonical_position.assign(parts.size(), 0);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        g->factors_[i] = parts[perm[i]];
        canonical_position[perm[i]] = i;
    }
    uint64_t order = 1;
    for (uint32_t f : g->factors_) {
        g->primes_.push_back(prime_of(f));
        order *= f;
        if (order > (1u << 30))
            fail(Err::InvalidFactor, "group order exceeds supported desk scale");
    }
    g->order_ = static_cast<uint32_t>(order);
    g->strides_.assign(g->factors_.size(), 1);
    for (std::size_t i = g->factors_.size(); i-- > 1;)
        g->strides_[i - 1] = g->strides_[i] * g->factors_[i];
    return g;
}

uint32_t AbelianGroup::index_of(const Residues& r) const {
    uint32_t idx = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) idx += r[i] * strides_[i];
    return idx;
}

Residues AbelianGroup::residues_of(uint32_t index) const {
    Residues r(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        r[i] = index / strides_[i];
        index %= strides_[i];
    }
    return r;
}

uint32_t AbelianGroup::compose(uint32_t a, uint32_t b) const {
    uint32_t idx = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        uint32_t ra = a / strides_[i] % factors_[i];
        uint32_t rb = b / strides_[i] % factors_[i];
        uint32_t rc = ra + rb;
        if (rc >= factors_[i]) rc -= factors_[i];
        idx += rc * strides_[i];
    }
    return idx;
}

uint32_t AbelianGroup::inverse(uint32_t a) const {
    uint32_t idx = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        uint32_t ra = a / strides_[i] % factors_[i];
        uint32_t rc = ra == 0 ? 0 : factors_[i] - ra;
        idx += rc * strides_[i];
    }
    return idx;
}

uint32_t AbelianGroup::power(uint32_t a, int64_t k) const {
    uint32_t idx = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        int64_t ra = a / strides_[i] % factors_[i];
        int64_t rc = (ra * k) % factors_[i];
        if (rc < 0) rc += factors_[i];
        idx += static_cast<uint32_t>(rc) * strides_[i];
    }
    return idx;
}

uint32_t AbelianGroup::element_order(uint32_t a) const {
    uint32_t ord = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        uint32_t ra = a / strides_[i] % factors_[i];
        uint32_t o = factors_[i] / std::gcd(factors_[i], ra == 0 ? factors_[i] : ra);
        ord = std::lcm(ord, o);
    }
    return ord;
}

uint32_t AbelianGroup::factor_generator(std::size_t i) const { return strides_[i]; }

std::string AbelianGroup::literal() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += 'x';
        s += std::to_string(factors_[i]);
    }
    return s;
}

namespace {

void check_residues(const AbelianGroup& g, const Residues& r) {
    if (r.size() != g.factors().size())
        fail(Err::InvalidElement, "residue vector has wrong length");
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] >= g.factors()[i])
            fail(Err::InvalidElement, "residue " + std::to_string(r[i]) + " out of range for factor " +
                                          std::to_string(g.factors()[i]));
}

} // namespace

uint32_t checked_index(const AbelianGroup& g, const Residues& r) {
    check_residues(g, r);
    return g.index_of(r);
}

Residues compose_res(const AbelianGroup& g, const Residues& a, const Residues& b) {
    return g.residues_of(g.compose(checked_index(g, a), checked_index(g, b)));
}

Residues inverse_res(const AbelianGroup& g, const Residues& a) {
    return g.residues_of(g.inverse(checked_index(g, a)));
}

uint32_t element_order_res(const AbelianGroup& g, const Residues& a) {
    return g.element_order(checked_index(g, a));
}

bool Subgroup::contains(uint32_t g) const {
    return std::binary_search(elements.begin(), elements.end(), g);
}

Subgroup subgroup_generated(GroupPtr g, const std::vector<uint32_t>& gens) {
    for (uint32_t x : gens)
        if (x >= g->order()) fail(Err::InvalidElement, "generator index out of range");
    std::vector<bool> seen(g->order(), false);
    std::vector<uint32_t> frontier{g->identity()};
    seen[g->identity()] = true;
    while (!frontier.empty()) {
        std::vector<uint32_t> next;
        for (uint32_t x : frontier) {
            for (uint32_t s : gens) {
                uint32_t y = g->compose(x, s);
                if (!seen[y]) {
                    seen[y] = true;
                    next.push_back(y);
                }
            }
        }
        frontier = std::move(next);
    }
    Subgroup h;
    h.parent = g;
    h.generators = gens;
    for (uint32_t i = 0; i < g->order(); ++i)
        if (seen[i]) h.elements.push_back(i);
    return h;
}

Subgroup sylow_subgroup(GroupPtr g, uint32_t p) {
    if (!is_prime(p)) fail(Err::InvalidPrime, std::to_string(p) + " is not prime");
    std::vector<uint32_t> gens;
    for (std::size_t i = 0; i < g->factors().size(); ++i)
        if (g->factor_primes()[i] == p) gens.push_back(g->factor_generator(i));
    return subgroup_generated(g, gens);
}

GroupAutomorphism make_automorphism(GroupPtr g, const std::vector<uint32_t>& generator_images) {
    if (generator_images.size() != g->factors().size())
        fail(Err::InvalidElement, "need one image per primary-factor generator");
    for (std::size_t i = 0; i < generator_images.size(); ++i) {
        uint32_t img = generator_images[i];
        if (img >= g->order()) fail(Err::InvalidElement, "generator image out of range");
        // The extension is a well-defined homomorphism iff each image order
        // divides its generator's order.
        if (g->factors()[i] % g->element_order(img) != 0)
            fail(Err::NotAHomomorphism,
                 "image of factor-" + std::to_string(g->factors()[i]) + " generator has order " +
                     std::to_string(g->element_order(img)));
    }
    GroupAutomorphism a;
    a.parent = g;
    a.image_table.resize(g->order());
    for (uint32_t x = 0; x < g->order(); ++x) {
        Residues r = g->residues_of(x);
        uint32_t y = g->identity();
        for (std::size_t i = 0; i < r.size(); ++i)
            y = g->compose(y, g->power(generator_images[i], r[i]));
        a.image_table[x] = y;
    }
    std::vector<bool> hit(g->order(), false);
    for (uint32_t y : a.image_table) {
        if (hit[y]) fail(Err::NotBijective, "homomorphic extension is not injective");
        hit[y] = true;
    }
    return a;
}

Subgroup radical(GroupPtr g, const std::vector<uint32_t>& x) {
    if (x.empty()) fail(Err::EmptySet, "radical of the empty set");
    std::vector<bool> in_x(g->order(), false);
    for (uint32_t e : x) {
        if (e >= g->order()) fail(Err::InvalidElement, "set element out of range");
        in_x[e] = true;
    }
    std::vector<uint32_t> stab;
    for (uint32_t c = 0; c < g->order(); ++c) {
        bool ok = true;
        for (uint32_t e : x)
            if (!in_x[g->compose(e, c)]) {
                ok = false;
                break;
            }
        if (ok) stab.push_back(c);
    }
    Subgroup h;
    h.parent = g;
    h.elements = stab;
    h.generators = stab; // the full set generates itself
    return h;
}

GroupPtr parse_group_literal(const std::string& s) {
    std::vector<uint32_t> orders;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find('x', pos);
        std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (tok.empty()) fail(Err::ParseError, "empty factor in group literal '" + s + "'");
        for (char c : tok)
            if (c < '0' || c > '9') fail(Err::ParseError, "bad character in group literal '" + s + "'");
        unsigned long v = std::stoul(tok);
        if (v < 2 || v > (1u << 30)) fail(Err::InvalidFactor, "factor out of range in '" + s + "'");
        orders.push_back(static_cast<uint32_t>(v));
        if (next == std::string::npos) break;
        pos = next + 1;
        if (pos == s.size()) fail(Err::ParseError, "trailing separator in group literal '" + s + "'");
    }
    if (orders.empty()) fail(Err::ParseError, "empty group literal");
    return make_group(orders);
}

std::string format_residues(const Residues& r) {
    std::string s = "[";
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(r[i]);
    }
    return s + "]";
}

Residues parse_residues(const std::string& s, std::size_t expected_len) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        fail(Err::ParseError, "element literal must be bracketed: " + s);
    Residues r;
    std::stringstream in(s.substr(1, s.size() - 2));
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) fail(Err::ParseError, "empty residue in " + s);
        r.push_back(static_cast<uint32_t>(std::stoul(tok)));
    }
    if (r.size() != expected_len)
        fail(Err::ParseError, "element literal has wrong arity: " + s);
    return r;
}

} // namespace schurkit
