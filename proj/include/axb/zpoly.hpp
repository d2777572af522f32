#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "axb/modular.hpp"
#include "axb/rng.hpp"
#include "axb/step_law.hpp"

namespace axb {

using bigint = boost::multiprecision::cpp_int;

// Integer polynomial, coefficients low degree first. Cyclotomic products
// overflow 64 bits quickly, so coefficients are arbitrary precision.
class ZPoly {
public:
    ZPoly() = default;
    explicit ZPoly(std::vector<bigint> coeffs) : c_(std::move(coeffs)) { trim(); }

    static ZPoly zero() { return ZPoly(); }
    static ZPoly one() { return ZPoly({bigint(1)}); }
    static ZPoly monomial(std::size_t deg, bigint lead = 1) {
        std::vector<bigint> c(deg + 1, 0);
        c[deg] = std::move(lead);
        return ZPoly(std::move(c));
    }

    // Comma-separated integers, low degree first: "-2,0,0,1" is x^3 - 2.
    static ZPoly parse(const std::string& s) {
        std::vector<bigint> c;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                c.emplace_back(tok);
            } catch (const std::exception&) {
                throw std::invalid_argument("cannot parse polynomial coefficient '" + tok + "'");
            }
        }
        return ZPoly(std::move(c));
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) out += ',';
            out += c_[i].str();
        }
        return out;
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<bigint>& coeffs() const { return c_; }
    const bigint& operator[](std::size_t i) const { return c_[i]; }
    const bigint& leading() const { return c_.back(); }

    friend bool operator==(const ZPoly& x, const ZPoly& y) { return x.c_ == y.c_; }

    friend ZPoly operator+(const ZPoly& x, const ZPoly& y) {
        std::vector<bigint> c(std::max(x.c_.size(), y.c_.size()), 0);
        for (std::size_t i = 0; i < x.c_.size(); ++i) c[i] += x.c_[i];
        for (std::size_t i = 0; i < y.c_.size(); ++i) c[i] += y.c_[i];
        return ZPoly(std::move(c));
    }

    friend ZPoly operator-(const ZPoly& x, const ZPoly& y) {
        std::vector<bigint> c(std::max(x.c_.size(), y.c_.size()), 0);
        for (std::size_t i = 0; i < x.c_.size(); ++i) c[i] += x.c_[i];
        for (std::size_t i = 0; i < y.c_.size(); ++i) c[i] -= y.c_[i];
        return ZPoly(std::move(c));
    }

    friend ZPoly operator*(const ZPoly& x, const ZPoly& y) {
        if (x.is_zero() || y.is_zero()) return zero();
        std::vector<bigint> c(x.c_.size() + y.c_.size() - 1, 0);
        for (std::size_t i = 0; i < x.c_.size(); ++i)
            for (std::size_t j = 0; j < y.c_.size(); ++j) c[i + j] += x.c_[i] * y.c_[j];
        return ZPoly(std::move(c));
    }

    // Exact quotient, or nullopt if the division leaves a remainder or is
    // not exact over Z.
    std::optional<ZPoly> divide_exact(const ZPoly& d) const {
        if (d.is_zero()) throw std::domain_error("ZPoly: division by zero");
        if (is_zero()) return zero();
        if (degree() < d.degree()) return std::nullopt;
        std::vector<bigint> rem = c_;
        std::vector<bigint> quot(c_.size() - d.c_.size() + 1, 0);
        for (int i = static_cast<int>(quot.size()) - 1; i >= 0; --i) {
            bigint& top = rem[i + d.degree()];
            if (top == 0) continue;
            if (top % d.leading() != 0) return std::nullopt;
            bigint q = top / d.leading();
            quot[i] = q;
            for (std::size_t j = 0; j < d.c_.size(); ++j) rem[i + j] -= q * d.c_[j];
        }
        for (const bigint& r : rem)
            if (r != 0) return std::nullopt;
        return ZPoly(std::move(quot));
    }

    // Height: max |coefficient|.
    bigint height() const {
        bigint h = 0;
        for (const bigint& v : c_)
            if (abs(v) > h) h = abs(v);
        return h;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<bigint> c_;
};

// Phi_k by iterated exact division of x^k - 1 by Phi_d over proper divisors.
inline const ZPoly& cyclotomic_poly(u64 k) {
    static std::map<u64, ZPoly> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    if (k == 0) throw std::domain_error("cyclotomic_poly: k must be positive");

    std::function<const ZPoly&(u64)> get = [&](u64 kk) -> const ZPoly& {
        auto found = cache.find(kk);
        if (found != cache.end()) return found->second;
        ZPoly num = ZPoly::monomial(kk) - ZPoly::one();
        for (u64 d = 1; d < kk; ++d) {
            if (kk % d != 0) continue;
            auto q = num.divide_exact(get(d));
            if (!q) throw std::logic_error("cyclotomic_poly: inexact division");
            num = *q;
        }
        return cache.emplace(kk, std::move(num)).first->second;
    };
    return get(k);
}

struct StrippedForm {
    ZPoly phi;       // product of cyclotomics and the monomial factor
    ZPoly reduced;   // P-tilde, free of monomial and cyclotomic divisors
    std::vector<std::pair<u64, u64>> cyclotomic_indices;  // (k, multiplicity)
    u64 monomial_power = 0;
};

// P = Phi * P-tilde: removes the maximal power of x, then trial-divides by
// Phi_k for every k with phi(k) <= deg P. Since phi(k) >= sqrt(k/2), it is
// enough to enumerate k <= 2 deg^2 + 2.
inline StrippedForm strip_cyclotomic(const ZPoly& poly) {
    if (poly.is_zero()) throw std::domain_error("strip_cyclotomic: zero polynomial");
    StrippedForm out;
    out.phi = ZPoly::one();
    out.reduced = poly;

    while (!out.reduced.is_zero() && out.reduced[0] == 0) {
        auto q = out.reduced.divide_exact(ZPoly::monomial(1));
        out.reduced = *q;
        ++out.monomial_power;
    }
    if (out.monomial_power > 0) out.phi = ZPoly::monomial(out.monomial_power);

    u64 dmax = static_cast<u64>(out.reduced.degree());
    for (u64 k = 1; k <= 2 * dmax * dmax + 2; ++k) {
        if (euler_phi(k) > dmax) continue;
        u64 mult = 0;
        while (true) {
            auto q = out.reduced.divide_exact(cyclotomic_poly(k));
            if (!q) break;
            out.reduced = *q;
            ++mult;
        }
        if (mult > 0) {
            out.cyclotomic_indices.push_back({k, mult});
            for (u64 i = 0; i < mult; ++i) out.phi = out.phi * cyclotomic_poly(k);
        }
    }
    return out;
}

// Random walk polynomial: n coefficients drawn i.i.d. from mu, so the
// evaluation law at a equals mu_a^(n).
inline ZPoly random_walk_poly(const StepLaw& mu, u64 n, SplitRng& rng) {
    std::vector<bigint> c(n);
    for (u64 i = 0; i < n; ++i) {
        double r = rng.next_double();
        double acc = 0;
        std::int64_t v = mu.atoms().back().value;
        for (const auto& atom : mu.atoms()) {
            acc += atom.weight;
            if (r < acc) { v = atom.value; break; }
        }
        c[i] = v;
    }
    return ZPoly(std::move(c));
}

}  // namespace axb
