#pragma once

#include <cstdint>
#include <vector>

namespace schurkit {

// Fixed-size bitset with a runtime size. The search kernels keep one per point,
// so the operations that matter are and_with, count and iteration.
class DynBitset {
public:
    DynBitset() = default;
    explicit DynBitset(std::size_t n, bool value = false)
        : n_(n), w_((n + 63) / 64, value ? ~0ull : 0ull) {
        trim();
    }

    std::size_t size() const { return n_; }

    void set(std::size_t i) { w_[i >> 6] |= 1ull << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(1ull << (i & 63)); }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    void clear() { std::fill(w_.begin(), w_.end(), 0ull); }

    void and_with(const DynBitset& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    }
    void or_with(const DynBitset& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (uint64_t w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    bool any() const {
        for (uint64_t w : w_)
            if (w) return true;
        return false;
    }

    // First set bit at position >= from, or size() if none.
    std::size_t next(std::size_t from) const {
        if (from >= n_) return n_;
        std::size_t k = from >> 6;
        uint64_t w = w_[k] & (~0ull << (from & 63));
        while (true) {
            if (w) return (k << 6) + static_cast<std::size_t>(__builtin_ctzll(w));
            if (++k == w_.size()) return n_;
            w = w_[k];
        }
    }

    bool operator==(const DynBitset& o) const { return n_ == o.n_ && w_ == o.w_; }

private:
    void trim() {
        if (n_ & 63) w_.back() &= (1ull << (n_ & 63)) - 1;
    }

    std::size_t n_ = 0;
    std::vector<uint64_t> w_;
};

} // namespace schurkit
