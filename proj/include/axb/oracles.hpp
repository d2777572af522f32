#pragma once

// Brute-force reference implementations. These deliberately share no code
// with the main computation paths: the chain law is rebuilt by enumerating
// every coefficient tuple and the transform is a naive DFT. They back the
// verify suite and the test oracles, nothing else should call them.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "axb/distribution.hpp"
#include "axb/modular.hpp"
#include "axb/step_law.hpp"

namespace axb::oracle {

// Law of x_n = b_0 a^{n-1} + ... + b_{n-1} + a^n x0 by full enumeration of
// the |Supp mu|^n coefficient tuples.
inline std::vector<double> enumerate_chain_law(const StepLaw& mu, u64 p, u64 a, u64 n, u64 x0 = 0) {
    double tuples = std::pow(static_cast<double>(mu.support_size()), static_cast<double>(n));
    if (tuples > 2e7) throw std::length_error("enumerate_chain_law: too many tuples");
    std::vector<double> probs(p, 0.0);
    std::vector<std::size_t> idx(n, 0);
    const auto& atoms = mu.atoms();
    while (true) {
        u64 x = x0 % p;
        double w = 1.0;
        for (u64 i = 0; i < n; ++i) {
            std::int64_t v = atoms[idx[i]].value % static_cast<std::int64_t>(p);
            if (v < 0) v += static_cast<std::int64_t>(p);
            x = add_mod(mul_mod(a % p, x, p), static_cast<u64>(v), p);
            w *= atoms[idx[i]].weight;
        }
        probs[x] += w;
        u64 k = 0;
        while (k < n && ++idx[k] == atoms.size()) idx[k++] = 0;
        if (k == n) break;
    }
    return probs;
}

// Naive DFT: mu-hat(xi) = sum_x probs[x] e(xi x / p).
inline std::vector<std::complex<double>> dft(const std::vector<double>& probs) {
    const u64 p = probs.size();
    const double twopi = 2.0 * std::numbers::pi;
    // one period of twiddles, indexed by (xi * x) mod p
    std::vector<std::complex<double>> tw(p);
    for (u64 k = 0; k < p; ++k) {
        double ang = twopi * static_cast<double>(k) / static_cast<double>(p);
        tw[k] = {std::cos(ang), std::sin(ang)};
    }
    std::vector<std::complex<double>> out(p);
    for (u64 xi = 0; xi < p; ++xi) {
        std::complex<double> s = 0;
        u64 k = 0;
        for (u64 x = 0; x < p; ++x) {
            s += probs[x] * tw[k];
            k += xi;
            if (k >= p) k -= p;
        }
        out[xi] = s;
    }
    return out;
}

}  // namespace axb::oracle
