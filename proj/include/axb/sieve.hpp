#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "axb/modular.hpp"

namespace axb {

// Primality flags for [0, n]. Plain Eratosthenes.
inline std::vector<char> sieve_flags(u64 n) {
    std::vector<char> is_p(n + 1, 1);
    if (n >= 0) is_p[0] = 0;
    if (n >= 1) is_p[1] = 0;
    for (u64 i = 2; i * i <= n; ++i)
        if (is_p[i])
            for (u64 j = i * i; j <= n; j += i) is_p[j] = 0;
    return is_p;
}

// Primes in [lo, hi], ascending, by a segmented sieve. The window
// itself must fit in memory; base primes go up to sqrt(hi).
inline std::vector<u64> primes_in_window(u64 lo, u64 hi, u64 max_window = u64(1) << 32) {
    if (lo < 2) lo = 2;
    if (hi < lo) return {};
    if (hi - lo >= max_window) throw std::length_error("primes_in_window: window too large");

    u64 root = static_cast<u64>(std::sqrt(static_cast<double>(hi))) + 1;
    auto small = sieve_flags(root);
    std::vector<u64> base;
    for (u64 i = 2; i <= root; ++i)
        if (small[i]) base.push_back(i);

    std::vector<u64> out;
    const u64 seg = 1 << 18;
    std::vector<char> mark;
    for (u64 low = lo; low <= hi; low += seg) {
        u64 high = std::min(low + seg - 1, hi);
        mark.assign(high - low + 1, 1);
        for (u64 q : base) {
            if (q * q > high) break;
            u64 start = std::max(q * q, (low + q - 1) / q * q);
            for (u64 j = start; j <= high; j += q) mark[j - low] = 0;
        }
        for (u64 v = low; v <= high; ++v)
            if (mark[v - low]) out.push_back(v);
        if (high == hi) break;
    }
    return out;
}

}  // namespace axb
