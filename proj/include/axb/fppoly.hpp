#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "axb/modular.hpp"
#include "axb/zpoly.hpp"

namespace axb {

// Polynomial over F_p, coefficients low degree first, schoolbook
// arithmetic; degrees at desk scale stay small.
class FpPoly {
public:
    FpPoly() = default;
    FpPoly(std::vector<u64> coeffs, u64 p) : c_(std::move(coeffs)), p_(p) {
        for (u64& v : c_) v %= p_;
        trim();
    }

    static FpPoly zero(u64 p) { return FpPoly({}, p); }
    static FpPoly one(u64 p) { return FpPoly({1}, p); }
    static FpPoly x(u64 p) { return FpPoly({0, 1}, p); }

    static FpPoly reduce(const ZPoly& z, u64 p) {
        std::vector<u64> c(z.coeffs().size());
        for (std::size_t i = 0; i < c.size(); ++i) {
            bigint r = z[i] % p;
            if (r < 0) r += p;
            c[i] = static_cast<u64>(r);
        }
        return FpPoly(std::move(c), p);
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    u64 modulus() const { return p_; }
    const std::vector<u64>& coeffs() const { return c_; }

    friend bool operator==(const FpPoly& a, const FpPoly& b) {
        return a.p_ == b.p_ && a.c_ == b.c_;
    }

    friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
        a.check(b);
        if (a.is_zero() || b.is_zero()) return zero(a.p_);
        std::vector<u64> c(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] = add_mod(c[i + j], mul_mod(a.c_[i], b.c_[j], a.p_), a.p_);
        return FpPoly(std::move(c), a.p_);
    }

    friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
        a.check(b);
        std::vector<u64> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i)
            c[i] = add_mod(c[i], a.p_ - b.c_[i] % a.p_, a.p_);
        return FpPoly(std::move(c), a.p_);
    }

    // Remainder of this by d.
    FpPoly rem(const FpPoly& d) const {
        check(d);
        if (d.is_zero()) throw std::domain_error("FpPoly: division by zero");
        std::vector<u64> r = c_;
        u64 lead_inv = inv_mod(d.c_.back(), p_);
        for (int i = static_cast<int>(r.size()) - 1; i >= d.degree(); --i) {
            if (r[i] == 0) continue;
            u64 q = mul_mod(r[i], lead_inv, p_);
            for (std::size_t j = 0; j < d.c_.size(); ++j) {
                std::size_t k = i - d.degree() + j;
                r[k] = add_mod(r[k], p_ - mul_mod(q, d.c_[j], p_), p_);
            }
        }
        r.resize(std::min<std::size_t>(r.size(), d.degree()));
        return FpPoly(std::move(r), p_);
    }

    FpPoly monic() const {
        if (is_zero()) return *this;
        u64 inv = inv_mod(c_.back(), p_);
        std::vector<u64> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] = mul_mod(c_[i], inv, p_);
        return FpPoly(std::move(c), p_);
    }

    u64 eval(u64 x) const {
        u64 v = 0;
        for (std::size_t i = c_.size(); i-- > 0;) v = add_mod(mul_mod(v, x, p_), c_[i], p_);
        return v;
    }

private:
    void check(const FpPoly& o) const {
        if (p_ != o.p_) throw std::invalid_argument("FpPoly: modulus mismatch");
    }
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<u64> c_;
    u64 p_ = 2;
};

inline FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& q) {
    return (a * b).rem(q);
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("fp_gcd: both inputs zero");
    while (!b.is_zero()) {
        FpPoly r = a.rem(b);
        a = b;
        b = r;
    }
    return a.monic();
}

// x^e mod q by square-and-multiply on polynomials.
inline FpPoly fp_powmod_x(u64 e, const FpPoly& q) {
    u64 p = q.modulus();
    if (q.degree() <= 0) return FpPoly::zero(p);
    FpPoly result = FpPoly::one(p);
    FpPoly base = FpPoly::x(p).rem(q);
    while (e) {
        if (e & 1) result = fp_mulmod(result, base, q);
        base = fp_mulmod(base, base, q);
        e >>= 1;
    }
    return result;
}

struct RootCount {
    u64 count = 0;
    bool vanishing_reduction = false;  // q reduced to 0 mod p; count is p by convention
};

// N_p(q) = deg gcd(x^p - x, q mod p): the number of distinct roots in F_p.
inline RootCount count_roots_Np(const ZPoly& q, u64 p) {
    FpPoly qp = FpPoly::reduce(q, p);
    if (qp.is_zero()) return {p, true};
    if (qp.degree() == 0) return {0, false};
    FpPoly xp = fp_powmod_x(p, qp);
    FpPoly diff = xp - FpPoly::x(p).rem(qp);
    if (diff.is_zero()) return {static_cast<u64>(qp.degree()), false};
    return {static_cast<u64>(fp_gcd(diff, qp).degree()), false};
}

// Explicit roots of q in F_p by exhaustive evaluation; intended for the
// desk-scale windows (p <= ~10^6) the admissibility filter runs at.
inline std::vector<u64> fp_roots_scan(const ZPoly& q, u64 p, u64 scan_limit = 2000000) {
    if (p > scan_limit) throw std::length_error("fp_roots_scan: p beyond scan limit");
    FpPoly qp = FpPoly::reduce(q, p);
    if (qp.is_zero()) throw std::domain_error("fp_roots_scan: vanishing reduction");
    std::vector<u64> roots;
    for (u64 x = 0; x < p; ++x)
        if (qp.eval(x) == 0) roots.push_back(x);
    return roots;
}

// Roots a != 0 with phi(mult_order(a)) > 3n, i.e. not killed by a
// cyclotomic polynomial of degree at most 3n.
inline RootCount count_admissible_roots(const ZPoly& q, u64 p, u64 n) {
    FpPoly qp = FpPoly::reduce(q, p);
    if (qp.is_zero()) return {p, true};
    u64 count = 0;
    for (u64 a : fp_roots_scan(q, p)) {
        if (a == 0) continue;
        if (euler_phi(mult_order(a, p)) > 3 * n) ++count;
    }
    return {count, false};
}

}  // namespace axb
