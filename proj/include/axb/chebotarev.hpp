#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "axb/distribution.hpp"
#include "axb/fourier.hpp"
#include "axb/fppoly.hpp"
#include "axb/modular.hpp"
#include "axb/rng.hpp"
#include "axb/sieve.hpp"
#include "axb/step_law.hpp"
#include "axb/zpoly.hpp"

namespace axb {

namespace detail {

template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(workers, count); ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace detail

struct PrimeWindowAverage {
    u64 lo = 0, hi = 0;
    double weighted_mean = 0;   // sum N_p log p / sum log p
    u64 prime_count = 0;        // primes actually averaged (excluded ones removed)
    std::map<u64, u64> histogram;  // N_p value -> number of primes
    std::vector<u64> excluded;  // primes where the reduction of Q vanishes
    std::vector<u64> np_values; // aligned with the sieved prime list minus excluded
    std::vector<u64> primes;
};

// Log-weighted mean of N_p(Q) over the primes of [lo, hi]. The normalized
// form of the Chebotarev prime-window sum: for irreducible Q it
// concentrates near 1, and near the number of irreducible factors in
// general.
inline PrimeWindowAverage weighted_prime_average(const ZPoly& q, u64 lo, u64 hi,
                                                 unsigned workers = 0) {
    if (q.is_zero()) throw std::domain_error("weighted_prime_average: zero polynomial");
    if (lo < 2 || hi < lo) throw std::invalid_argument("weighted_prime_average: bad window");
    auto primes = primes_in_window(lo, hi);

    std::vector<u64> np(primes.size());
    std::vector<char> vanishing(primes.size(), 0);
    detail::parallel_for(primes.size(), workers, [&](std::size_t i) {
        RootCount rc = count_roots_Np(q, primes[i]);
        np[i] = rc.count;
        vanishing[i] = rc.vanishing_reduction;
    });

    PrimeWindowAverage out;
    out.lo = lo;
    out.hi = hi;
    double num = 0, den = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (vanishing[i]) {
            out.excluded.push_back(primes[i]);
            continue;
        }
        double w = std::log(static_cast<double>(primes[i]));
        num += static_cast<double>(np[i]) * w;
        den += w;
        out.histogram[np[i]] += 1;
        out.primes.push_back(primes[i]);
        out.np_values.push_back(np[i]);
        ++out.prime_count;
    }
    out.weighted_mean = den > 0 ? num / den : 0.0;
    return out;
}

struct IdentityReport {
    u64 p = 0, n = 0;
    double lhs = 0;  // sum_a ||mu_a^(n)||_2^2
    double rhs = 0;  // E(N_p(P)), P = P1 - P2
    double discrepancy = 0;
    double std_error = 0;  // Monte Carlo only
    u64 samples = 0;
    bool within_tolerance = true;
};

namespace detail {

// sum over a in F_p of ||mu_a^(n)||_2^2, the a = 0 term included.
inline double l2_sum_over_a(const StepLaw& mu, u64 p, u64 n, const WorkBudget& budget = {}) {
    double lhs = 0;
    for (u64 a = 0; a < p; ++a) lhs += evolve_direct(mu, p, a, n, 0, budget).l2_mass();
    return lhs;
}

}  // namespace detail

// Exact check of sum_a ||mu_a^(n)||_2^2 = E(N_p(P)): the left side from
// chain evolution over every a, the right side by enumerating every
// difference-law coefficient tuple and counting roots directly.
inline IdentityReport identity_check_exact(const StepLaw& mu, u64 p, u64 n, double tol = 1e-10,
                                           const WorkBudget& budget = {}) {
    DifferenceLaw nu(mu);
    double tuples = std::pow(static_cast<double>(nu.atoms().size()), static_cast<double>(n));
    if (tuples * static_cast<double>(p) > 2e8)
        throw BudgetError("identity_check_exact: enumeration budget exceeded");

    IdentityReport rep;
    rep.p = p;
    rep.n = n;
    rep.lhs = detail::l2_sum_over_a(mu, p, n, budget);

    // rhs: walk all coefficient tuples of nu^n, count roots of
    // P(x) = c_0 + c_1 x + ... over F_p by direct evaluation.
    std::vector<u64> coeff(n, 0);
    std::vector<double> weight_stack(n + 1);
    weight_stack[0] = 1.0;
    std::vector<std::size_t> idx(n, 0);
    const auto& atoms = nu.atoms();
    double rhs = 0;

    std::function<void(u64)> rec = [&](u64 depth) {
        if (depth == n) {
            bool all_zero = true;
            for (u64 c : coeff)
                if (c != 0) { all_zero = false; break; }
            double w = weight_stack[n];
            if (all_zero && n > 0) {
                // includes genuinely-zero P and vanishing reductions alike:
                // either way P(a) = 0 for every a
                rhs += w * static_cast<double>(p);
                return;
            }
            u64 roots = 0;
            for (u64 a = 0; a < p; ++a) {
                u64 v = 0;
                for (std::size_t i = n; i-- > 0;) v = add_mod(mul_mod(v, a, p), coeff[i], p);
                if (v == 0) ++roots;
            }
            rhs += w * static_cast<double>(roots);
            return;
        }
        for (const auto& atom : atoms) {
            std::int64_t v = atom.value % static_cast<std::int64_t>(p);
            if (v < 0) v += static_cast<std::int64_t>(p);
            coeff[depth] = static_cast<u64>(v);
            weight_stack[depth + 1] = weight_stack[depth] * atom.weight;
            rec(depth + 1);
        }
    };
    if (n == 0)
        rhs = static_cast<double>(p);  // empty product: P = 0
    else
        rec(0);

    rep.rhs = rhs;
    rep.discrepancy = std::abs(rep.lhs - rep.rhs);
    rep.within_tolerance = rep.discrepancy <= tol * std::max(1.0, std::abs(rep.lhs));
    return rep;
}

// Monte Carlo form: E(N_p(P)) estimated from sampled difference
// polynomials, compared to the exact Fourier-side sum at 4 standard errors.
inline IdentityReport identity_check_mc(const StepLaw& mu, u64 p, u64 n, u64 samples, u64 seed) {
    if (samples == 0) throw std::invalid_argument("identity_check_mc: empty sample");
    IdentityReport rep;
    rep.p = p;
    rep.n = n;
    rep.samples = samples;

    // lhs via Parseval per multiplier: ||mu_a^(n)||_2^2 = (1/p)(1 + sum_{xi!=0}|mu-hat|^2)
    PhiTable tab = build_phi_table(mu, p);
    double lhs = 0;
    for (u64 a = 1; a < p; ++a)
        lhs += (1.0 + l2_dist_from_fourier(fourier_profile(tab, a, n))) / static_cast<double>(p);
    {
        // a = 0: the law of the last increment reduced mod p
        std::vector<double> probs(p, 0.0);
        for (const auto& atom : mu.atoms()) {
            std::int64_t v = atom.value % static_cast<std::int64_t>(p);
            if (v < 0) v += static_cast<std::int64_t>(p);
            probs[static_cast<u64>(v)] += atom.weight;
        }
        double m = 0;
        for (double w : probs) m += w * w;
        lhs += n == 0 ? 1.0 : m;
    }
    rep.lhs = lhs;

    SplitRng rng = SplitRng(seed).split(p, n);
    double sum = 0, sumsq = 0;
    for (u64 s = 0; s < samples; ++s) {
        ZPoly p1 = random_walk_poly(mu, n, rng);
        ZPoly p2 = random_walk_poly(mu, n, rng);
        ZPoly diff = p1 - p2;
        double npv = diff.is_zero() ? static_cast<double>(p)
                                    : static_cast<double>(count_roots_Np(diff, p).count);
        sum += npv;
        sumsq += npv * npv;
    }
    rep.rhs = sum / static_cast<double>(samples);
    double var = std::max(0.0, sumsq / static_cast<double>(samples) - rep.rhs * rep.rhs);
    rep.std_error = std::sqrt(var / static_cast<double>(samples));
    rep.discrepancy = std::abs(rep.lhs - rep.rhs);
    rep.within_tolerance = rep.discrepancy <= 4.0 * std::max(rep.std_error, 1e-12);
    return rep;
}

struct IrreducibilityProxySummary {
    std::vector<double> means;     // weighted prime mean per sampled P-tilde
    u64 degenerate = 0;            // trials where P-tilde had degree <= 0
    u64 trials = 0;
};

// Samples difference-walk polynomials, strips monomial and cyclotomic
// parts, and reports the window mean of N_p for each stripped polynomial.
// Concentration of the means near 1 is the empirical signature of
// irreducibility; no certification is attempted.
inline IrreducibilityProxySummary random_poly_irreducibility_proxy(const StepLaw& mu, u64 n, u64 lo,
                                                                   u64 hi, u64 trials, u64 seed,
                                                                   unsigned workers = 0) {
    IrreducibilityProxySummary out;
    out.trials = trials;
    SplitRng rng = SplitRng(seed).split(n, 0x70);
    for (u64 t = 0; t < trials; ++t) {
        ZPoly p1 = random_walk_poly(mu, n, rng);
        ZPoly p2 = random_walk_poly(mu, n, rng);
        ZPoly diff = p1 - p2;
        if (diff.is_zero()) {
            ++out.degenerate;
            continue;
        }
        ZPoly reduced = strip_cyclotomic(diff).reduced;
        if (reduced.degree() <= 0) {
            ++out.degenerate;
            continue;
        }
        out.means.push_back(weighted_prime_average(reduced, lo, hi, workers).weighted_mean);
    }
    return out;
}

struct ExceptionalPrimeRow {
    u64 p = 0;
    u64 n = 0;
    double mean_p_l2 = 0;  // sampled-a mean of p ||mu_a^(n)||_2^2
    double threshold = 0;
    bool flagged = false;
};

struct ExceptionalPrimeScan {
    std::vector<ExceptionalPrimeRow> rows;
    double flagged_weighted_fraction = 0;  // log p weighting
};

// Per-prime sampled-a means of p ||mu_a^(n)||_2^2 at n = floor(2 log p / H_2),
// flagged against threshold_coef * sqrt(log p) / log log p. The theoretical
// exceptional-set constant is existential, so the coefficient is a knob.
inline ExceptionalPrimeScan exceptional_prime_scan(const StepLaw& mu, u64 lo, u64 hi, u64 a_sample,
                                                   double threshold_coef, u64 seed,
                                                   unsigned workers = 0) {
    auto primes = primes_in_window(lo, hi);
    ExceptionalPrimeScan out;
    out.rows.resize(primes.size());
    double h2 = mu.renyi2_entropy();

    detail::parallel_for(primes.size(), workers, [&](std::size_t i) {
        u64 p = primes[i];
        double logp = std::log(static_cast<double>(p));
        u64 n = static_cast<u64>(std::floor(2.0 * logp / h2));
        PhiTable tab = build_phi_table(mu, p);
        SplitRng rng = SplitRng(seed).split(p, 0xE5);
        u64 samples = std::min<u64>(a_sample, p - 1);
        double acc = 0;
        for (u64 s = 0; s < samples; ++s) {
            u64 a = 1 + rng.below(p - 1);
            acc += 1.0 + l2_dist_from_fourier(fourier_profile(tab, a, n));
        }
        ExceptionalPrimeRow& row = out.rows[i];
        row.p = p;
        row.n = n;
        row.mean_p_l2 = acc / static_cast<double>(samples);
        row.threshold = threshold_coef * std::sqrt(logp) / std::log(logp);
        row.flagged = row.mean_p_l2 > row.threshold;
    });

    double num = 0, den = 0;
    for (const auto& row : out.rows) {
        double w = std::log(static_cast<double>(row.p));
        den += w;
        if (row.flagged) num += w;
    }
    out.flagged_weighted_fraction = den > 0 ? num / den : 0.0;
    return out;
}

}  // namespace axb
