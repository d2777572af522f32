#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "axb/distribution.hpp"
#include "axb/modular.hpp"
#include "axb/step_law.hpp"

namespace axb {

// phi(t) = sum_x mu(x) e(tx/p), the characteristic function of the step law.
inline std::vector<std::complex<double>> char_fn(const StepLaw& mu, u64 p) {
    std::vector<std::complex<double>> phi(p);
    const double twopi = 2.0 * std::numbers::pi;
    for (u64 t = 0; t < p; ++t) {
        std::complex<double> s = 0;
        for (const auto& atom : mu.atoms()) {
            std::int64_t v = atom.value % static_cast<std::int64_t>(p);
            if (v < 0) v += static_cast<std::int64_t>(p);
            double ang = twopi * static_cast<double>(t) * static_cast<double>(v) / static_cast<double>(p);
            s += atom.weight * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        phi[t] = s;
    }
    return phi;
}

// Per-frequency values of mu_a^(n)-hat, kept as log-magnitude plus phase so
// that products of many factors neither underflow nor lose the angle.
struct FourierProfile {
    u64 p = 0, a = 0, n = 0;
    std::vector<double> log_mag;  // -inf marks an exact zero
    std::vector<double> phase;

    std::complex<double> value(u64 xi) const {
        if (std::isinf(log_mag[xi])) return 0;
        double m = std::exp(log_mag[xi]);
        return {m * std::cos(phase[xi]), m * std::sin(phase[xi])};
    }

    double abs_value(u64 xi) const {
        return std::isinf(log_mag[xi]) ? 0.0 : std::exp(log_mag[xi]);
    }

    double sup_abs_nonzero() const {
        double mx = 0;
        for (u64 xi = 1; xi < p; ++xi) mx = std::max(mx, abs_value(xi));
        return mx;
    }
};

// Characteristic function in log-magnitude / phase form, shareable across
// every multiplier a at the same (mu, p).
struct PhiTable {
    u64 p = 0;
    std::vector<double> lm, ph;
    std::vector<char> zero;
};

inline PhiTable build_phi_table(const StepLaw& mu, u64 p) {
    PhiTable tab;
    tab.p = p;
    tab.lm.resize(p);
    tab.ph.resize(p);
    tab.zero.assign(p, 0);
    auto phi = char_fn(mu, p);
    for (u64 t = 0; t < p; ++t) {
        double m = std::abs(phi[t]);
        if (m == 0.0) {
            tab.zero[t] = 1;
            tab.lm[t] = -std::numeric_limits<double>::infinity();
            tab.ph[t] = 0;
        } else {
            tab.lm[t] = std::log(m);
            tab.ph[t] = std::arg(phi[t]);
        }
    }
    return tab;
}

// mu_a^(n)-hat(xi) = prod_{i<n} phi(xi a^i). The nonzero frequencies are
// partitioned into orbits of multiplication by a (each of length
// d = mult_order(a)); on an orbit the n-fold products are length-n sliding
// windows of a period-d sequence, so prefix sums over one doubled period
// give every frequency in O(d + n mod d) work.
inline FourierProfile fourier_profile(const PhiTable& tab, u64 a, u64 n) {
    const u64 p = tab.p;
    a %= p;
    if (a == 0) throw std::domain_error("fourier_profile: a must be non-zero");
    FourierProfile out;
    out.p = p;
    out.a = a;
    out.n = n;
    out.log_mag.assign(p, 0.0);
    out.phase.assign(p, 0.0);
    if (n == 0 || p == 1) return out;

    const std::vector<double>& lm = tab.lm;
    const std::vector<double>& ph = tab.ph;
    const std::vector<char>& zero = tab.zero;

    const u64 d = mult_order(a, p);
    const u64 q = n / d, r = n % d;
    const double twopi = 2.0 * std::numbers::pi;

    std::vector<u64> orbit(d);
    std::vector<double> plm(2 * d + 1), pph(2 * d + 1);
    std::vector<u64> pz(2 * d + 1);
    std::vector<char> visited(p, 0);
    visited[0] = 1;

    for (u64 xi0 = 1; xi0 < p; ++xi0) {
        if (visited[xi0]) continue;
        u64 x = xi0;
        for (u64 j = 0; j < d; ++j) {
            orbit[j] = x;
            visited[x] = 1;
            x = mul_mod(x, a, p);
        }
        plm[0] = pph[0] = 0;
        pz[0] = 0;
        for (u64 j = 0; j < 2 * d; ++j) {
            u64 t = orbit[j % d];
            plm[j + 1] = plm[j] + (zero[t] ? 0.0 : lm[t]);
            pph[j + 1] = pph[j] + ph[t];
            pz[j + 1] = pz[j] + zero[t];
        }
        const bool period_zero = pz[d] > 0;
        const double period_lm = plm[d];
        const double period_ph = std::remainder(pph[d], twopi);

        for (u64 j = 0; j < d; ++j) {
            u64 xi = orbit[j];
            if ((q > 0 && period_zero) || pz[j + r] > pz[j]) {
                out.log_mag[xi] = -std::numeric_limits<double>::infinity();
                out.phase[xi] = 0;
                continue;
            }
            out.log_mag[xi] = static_cast<double>(q) * period_lm + (plm[j + r] - plm[j]);
            out.phase[xi] =
                std::remainder(static_cast<double>(q) * period_ph + (pph[j + r] - pph[j]), twopi);
        }
    }
    return out;
}

inline FourierProfile fourier_profile(const StepLaw& mu, u64 p, u64 a, u64 n) {
    return fourier_profile(build_phi_table(mu, p), a, n);
}

// Parseval: p * ||mu_a^(n) - u||_2^2 = sum_{xi != 0} |mu-hat(xi)|^2.
inline double l2_dist_from_fourier(const FourierProfile& profile) {
    double s = 0;
    for (u64 xi = 1; xi < profile.p; ++xi) {
        double v = profile.abs_value(xi);
        s += v * v;
    }
    return s;
}

struct PhiBoundReport {
    bool ok = true;
    double min_slack = std::numeric_limits<double>::infinity();
    u64 worst_t = 0;
};

// |phi(t)| <= exp(-4 sum_{x != 0} nu(x) [tx/p]^2), nu the law of b_0 - b_1.
inline PhiBoundReport phi_bound_check(const StepLaw& mu, u64 p, double tol = 1e-12) {
    auto phi = char_fn(mu, p);
    DifferenceLaw nu(mu);
    PhiBoundReport rep;
    for (u64 t = 0; t < p; ++t) {
        double energy = 0;
        for (const auto& atom : nu.atoms()) {
            if (atom.value == 0) continue;
            std::int64_t v = atom.value % static_cast<std::int64_t>(p);
            if (v < 0) v += static_cast<std::int64_t>(p);
            u64 tx = mul_mod(t, static_cast<u64>(v), p);
            double f = frac_rep(tx, p);
            energy += atom.weight * f * f;
        }
        double slack = std::exp(-4.0 * energy) - std::abs(phi[t]);
        if (slack < rep.min_slack) {
            rep.min_slack = slack;
            rep.worst_t = t;
        }
    }
    rep.ok = rep.min_slack >= -tol;
    return rep;
}

// sum_{i=0}^{m} [x0 a^i / p]^2.
inline double konyagin_energy(u64 x0, u64 a, u64 p, u64 m) {
    x0 %= p;
    a %= p;
    if (x0 == 0 || a == 0) throw std::domain_error("konyagin_energy: x0 and a must be non-zero");
    double s = 0;
    u64 x = x0;
    for (u64 i = 0; i <= m; ++i) {
        double f = frac_rep(x, p);
        s += f * f;
        x = mul_mod(x, a, p);
    }
    return s;
}

struct SelfSimilarityReport {
    bool ok = true;
    std::vector<std::string> failures;
    double worst_slack = std::numeric_limits<double>::infinity();

    void record(const std::string& what, double slack, double tol) {
        worst_slack = std::min(worst_slack, slack);
        if (slack < -tol) {
            ok = false;
            failures.push_back(what);
        }
    }
};

// Checks the convolution identity mu_a^(n+m) = mu_a^(n) * a^n.mu_a^(m) and
// the Fourier inequalities it implies. The convolution check is O(p^2) and
// can be skipped for large p via check_convolution.
inline SelfSimilarityReport self_similarity_suite(const StepLaw& mu, u64 p, u64 a, u64 n, u64 m,
                                                  u64 k, double tol = 1e-8,
                                                  bool check_convolution = true) {
    SelfSimilarityReport rep;
    a %= p;

    if (check_convolution) {
        auto dn = evolve_direct(mu, p, a, n);
        auto dm = evolve_direct(mu, p, a, m);
        auto dnm = evolve_direct(mu, p, a, n + m);
        u64 an = pow_mod(a, n, p);
        std::vector<double> scaled(p, 0.0);
        for (u64 x = 0; x < p; ++x) scaled[mul_mod(an, x, p)] += dm.probs[x];
        double worst = 0;
        for (u64 z = 0; z < p; ++z) {
            double conv = 0;
            for (u64 y = 0; y < p; ++y) {
                u64 rest = z >= y ? z - y : z + p - y;
                conv += dn.probs[y] * scaled[rest];
            }
            worst = std::max(worst, std::abs(conv - dnm.probs[z]));
        }
        if (worst > tol) {
            rep.ok = false;
            rep.failures.push_back("convolution identity, max entry error " + std::to_string(worst));
        }
        rep.worst_slack = std::min(rep.worst_slack, tol - worst);
    }

    auto fn = fourier_profile(mu, p, a, n);
    auto fm = fourier_profile(mu, p, a, m);
    auto fnm = fourier_profile(mu, p, a, n + m);
    const double sup_m = fm.sup_abs_nonzero();
    const u64 order = mult_order(a == 0 ? 1 : a, p);

    for (u64 xi = 1; xi < p; ++xi) {
        double lhs = fnm.abs_value(xi);
        rep.record("(firstline) at xi=" + std::to_string(xi),
                   fn.abs_value(xi) * sup_m - lhs, tol);
        // (secline): |mu-hat^(n+m)(xi)| <= min_i |mu-hat^(n)(a^i xi)|
        u64 x = xi;
        double mn = std::numeric_limits<double>::infinity();
        for (u64 i = 0; i <= m; ++i) {
            mn = std::min(mn, fn.abs_value(x));
            x = mul_mod(x, a, p);
        }
        rep.record("(secline) at xi=" + std::to_string(xi), mn - lhs, tol);
    }

    if (k >= 1 && m >= 1) {
        auto fkm = fourier_profile(mu, p, a, k * m);
        double bound = std::pow(sup_m, static_cast<double>(k));
        for (u64 xi = 1; xi < p; ++xi)
            rep.record("(powers) at xi=" + std::to_string(xi), bound - fkm.abs_value(xi), tol);
    }

    if (order > m) {
        double sup_nm = fnm.sup_abs_nonzero();
        double sum_n = l2_dist_from_fourier(fn);
        rep.record("(self-improve)", sum_n - static_cast<double>(m + 1) * sup_nm * sup_nm, tol);
    }

    if (order >= m + 1) {
        auto flong = fourier_profile(mu, p, a, n + k * (m + n));
        double lhs = l2_dist_from_fourier(flong);
        double pl2n = 1.0 + l2_dist_from_fourier(fn);  // p * ||mu_a^(n)||_2^2
        double rhs = std::pow(pl2n, static_cast<double>(k + 1)) /
                     std::pow(static_cast<double>(m + 1), static_cast<double>(k));
        rep.record("(goodbound)", rhs - lhs, tol);
    }

    return rep;
}

}  // namespace axb
