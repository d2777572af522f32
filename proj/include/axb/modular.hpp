#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace axb {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mul_mod(u64 x, u64 y, u64 m) {
    return static_cast<u64>(static_cast<u128>(x) * y % m);
}

inline u64 add_mod(u64 x, u64 y, u64 m) {
    u64 s = x + y;
    if (s >= m || s < x) s -= m;
    return s;
}

inline u64 pow_mod(u64 x, u64 e, u64 m) {
    u64 r = 1 % m;
    x %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, x, m);
        x = mul_mod(x, x, m);
        e >>= 1;
    }
    return r;
}

inline u64 inv_mod(u64 x, u64 m) {
    if (x % m == 0) throw std::domain_error("inv_mod: zero has no inverse");
    // extended Euclid on (x, m), m prime
    std::int64_t t = 0, newt = 1;
    u64 r = m, newr = x % m;
    while (newr != 0) {
        u64 q = r / newr;
        std::int64_t tmpt = t - static_cast<std::int64_t>(q) * newt;
        t = newt; newt = tmpt;
        u64 tmpr = r - q * newr;
        r = newr; newr = tmpr;
    }
    if (r != 1) throw std::domain_error("inv_mod: not invertible");
    return t < 0 ? static_cast<u64>(t + static_cast<std::int64_t>(m)) : static_cast<u64>(t);
}

// Deterministic Miller-Rabin, valid for the full 64-bit range.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 w : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = pow_mod(w, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

inline u64 pollard_rho(u64 n) {
    if ((n & 1) == 0) return 2;
    for (u64 c = 1;; ++c) {
        auto f = [n, c](u64 x) { return add_mod(mul_mod(x, x, n), c, n); };
        u64 x = 2, y = 2, d = 1;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            u64 diff = x > y ? x - y : y - x;
            d = std::gcd(diff, n);
        }
        if (d != n) return d;
    }
}

inline void factor_rec(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) { out.push_back(n); return; }
    u64 d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace detail

// Distinct prime factors of n, ascending. Trial division for small
// factors, Pollard rho for the rest; fine for word-sized n.
inline std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 q = 2; q * q <= n && q < 1000000; q += (q == 2 ? 1 : 2)) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) detail::factor_rec(n, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Smallest k >= 1 with a^k = 1 mod p. Starts from p-1 and strips
// prime factors while the power stays 1.
inline u64 mult_order(u64 a, u64 p) {
    a %= p;
    if (a == 0) throw std::domain_error("mult_order: a must be non-zero");
    u64 order = p - 1;
    for (u64 q : prime_factors(p - 1)) {
        while (order % q == 0 && pow_mod(a, order / q, p) == 1) order /= q;
    }
    return order;
}

inline u64 euler_phi(u64 n) {
    u64 r = n;
    for (u64 q : prime_factors(n)) r -= r / q;
    return r;
}

// Signed fractional representative [x/p] in (-1/2, 1/2].
inline double frac_rep(u64 x, u64 p) {
    x %= p;
    double f = static_cast<double>(x) / static_cast<double>(p);
    return f <= 0.5 ? f : f - 1.0;
}

// Word-sized prime modulus, validated on construction.
struct PrimeModulus {
    u64 p;
    explicit PrimeModulus(u64 n) : p(n) {
        if (!is_prime(n)) throw std::domain_error("PrimeModulus: not prime");
    }
};

}  // namespace axb
