#pragma once

#include <cstdint>
#include <string>

namespace schurkit {

// Permutation-group orders overflow 64 bits already for symmetric groups on
// two dozen points, so counting is done in 128 bits.
using BigCount = unsigned __int128;

inline std::string to_string(BigCount v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return std::string(s.rbegin(), s.rend());
}

} // namespace schurkit
