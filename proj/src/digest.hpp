#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <string>
#include <type_traits>

namespace netevo::detail {

// 64-bit FNV-1a over the little-endian bytes of each value.
class Fnv1a {
public:
    template <class T>
        requires std::is_arithmetic_v<T>
    void add(T value) {
        std::uint64_t bits = 0;
        if constexpr (std::is_floating_point_v<T>) {
            bits = std::bit_cast<std::uint64_t>(static_cast<double>(value));
        } else {
            bits = static_cast<std::uint64_t>(value);
        }
        for (int i = 0; i < 8; ++i) {
            state_ ^= (bits >> (8 * i)) & 0xFFu;
            state_ *= 0x100000001B3ull;
        }
    }

    std::string hex() const {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
        return buf;
    }

private:
    std::uint64_t state_ = 0xCBF29CE484222325ull;
};

}  // namespace netevo::detail
