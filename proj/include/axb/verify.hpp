#pragma once

// Bundled invariant suite behind the `verify` CLI subcommand. Each check
// returns pass/fail plus a short diagnostic; the quick level trims instance
// counts and window sizes, the full level runs everything at full scale.

#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "axb/chebotarev.hpp"
#include "axb/csv.hpp"
#include "axb/distribution.hpp"
#include "axb/fourier.hpp"
#include "axb/fppoly.hpp"
#include "axb/mahler.hpp"
#include "axb/mixing.hpp"
#include "axb/modular.hpp"
#include "axb/oracles.hpp"
#include "axb/rng.hpp"
#include "axb/sieve.hpp"
#include "axb/step_law.hpp"
#include "axb/zpoly.hpp"

namespace axb {

struct CheckResult {
    std::string name;
    bool ok = true;
    std::string detail;
};

enum class VerifyLevel { quick, full };

namespace detail {

class Verifier {
public:
    Verifier(VerifyLevel level, u64 seed, unsigned workers)
        : level_(level), rng_(seed), workers_(workers) {}

    std::vector<CheckResult> run() {
        modfield_checks();
        chain_checks();
        inequality_checks();
        poly_checks();
        chebotarev_checks();
        determinism_check();
        return results_;
    }

private:
    bool full() const { return level_ == VerifyLevel::full; }

    void add(const std::string& name, bool ok, const std::string& detail = "") {
        results_.push_back({name, ok, detail});
    }

    void check_true(const std::string& name, bool cond, const std::string& detail = "") {
        add(name, cond, cond ? "" : detail);
    }

    std::vector<StepLaw> sample_laws() const {
        return {StepLaw::uniform({0, 1}), StepLaw::uniform({-1, 0, 1}),
                StepLaw({{0, 0.25}, {1, 0.75}})};
    }

    u64 random_prime(u64 lo, u64 hi) {
        for (;;) {
            u64 c = lo + rng_.below(hi - lo);
            while (c <= hi && !is_prime(c)) ++c;
            if (c <= hi) return c;
        }
    }

    void modfield_checks() {
        // frac_rep range and antisymmetry
        bool ok = true;
        std::string why;
        for (u64 p : {7ULL, 101ULL, 10007ULL}) {
            for (u64 x = 0; x < p; ++x) {
                double f = frac_rep(x, p);
                if (!(f > -0.5 && f <= 0.5)) { ok = false; why = "range at x=" + std::to_string(x); }
                if (x != 0) {
                    double g = frac_rep(p - x, p);
                    if (std::abs(f + g) > 1e-15 && !(f == 0.5 && g == 0.5)) {
                        ok = false;
                        why = "antisymmetry at x=" + std::to_string(x);
                    }
                }
            }
        }
        add("modfield: frac_rep range and antisymmetry", ok, why);

        // order divides p-1; minimality against proper divisors
        ok = true;
        for (u64 p : {101ULL, 8191ULL}) {
            for (int t = 0; t < 50; ++t) {
                u64 a = 1 + rng_.below(p - 1);
                u64 ord = mult_order(a, p);
                if ((p - 1) % ord != 0 || pow_mod(a, ord, p) != 1) { ok = false; break; }
                for (u64 q : prime_factors(ord))
                    if (pow_mod(a, ord / q, p) == 1) { ok = false; break; }
            }
        }
        add("modfield: mult_order divides p-1 and is minimal", ok);

        // window sieve against the plain sieve
        u64 lim = full() ? 1000000 : 100000;
        auto flags = sieve_flags(lim);
        auto window = primes_in_window(2, lim);
        std::size_t count = 0;
        for (u64 i = 2; i <= lim; ++i) count += flags[i];
        ok = window.size() == count;
        for (u64 q : window)
            if (!flags[q]) ok = false;
        add("modfield: primes_in_window matches Eratosthenes up to " + std::to_string(lim), ok);

        ok = true;
        for (u64 v = 0; v <= std::min<u64>(lim, 100000); ++v)
            if (is_prime(v) != static_cast<bool>(v <= lim && flags[v])) { ok = false; break; }
        add("modfield: is_prime agrees with sieve", ok);
    }

    void chain_checks() {
        // enumeration oracle and conservation
        bool ok = true;
        double worst = 0;
        for (const auto& mu : sample_laws()) {
            for (u64 p : {5ULL, 7ULL, 31ULL}) {
                for (u64 n : {0ULL, 1ULL, 3ULL, 6ULL}) {
                    for (int t = 0; t < 3; ++t) {
                        u64 a = 1 + rng_.below(p - 1);
                        auto d = evolve_direct(mu, p, a, n);
                        auto ref = oracle::enumerate_chain_law(mu, p, a, n);
                        double sum = 0;
                        for (u64 x = 0; x < p; ++x) {
                            worst = std::max(worst, std::abs(d.probs[x] - ref[x]));
                            sum += d.probs[x];
                        }
                        if (std::abs(sum - 1.0) > 1e-9) ok = false;
                    }
                }
            }
        }
        if (worst > 1e-12) ok = false;
        add("chain: evolve_direct matches tuple enumeration (worst " + fmt12(worst) + ")", ok);

        // transform consistency
        worst = 0;
        auto laws = sample_laws();
        for (int t = 0; t < (full() ? 8 : 4); ++t) {
            u64 p = random_prime(50, full() ? 10000 : 2000);
            u64 a = 1 + rng_.below(p - 1);
            u64 n = 1 + rng_.below(full() ? 200 : 50);
            const StepLaw& mu = laws[t % 3];
            auto d = evolve_direct(mu, p, a, n);
            auto ref = oracle::dft(d.probs);
            auto prof = fourier_profile(mu, p, a, n);
            for (u64 xi = 0; xi < p; ++xi)
                worst = std::max(worst, std::abs(ref[xi] - prof.value(xi)));
        }
        add("chain: fourier_profile matches DFT of evolve_direct (worst " + fmt12(worst) + ")",
            worst <= 1e-8);
    }

    void inequality_checks() {
        int instances = full() ? 60 : 15;
        bool mono_ok = true, cs_ok = true, tq_ok = true, entb_ok = true, l2lb_ok = true,
             order_ok = true, phib_ok = true, ss_ok = true, kon_ok = true;
        std::string ss_why;
        auto laws = sample_laws();
        for (int t = 0; t < instances; ++t) {
            const StepLaw& mu = laws[t % 3];
            u64 p = random_prime(31, full() ? 5000 : 700);
            u64 a = 1 + rng_.below(p - 1);

            // monotonicity + Cauchy-Schwarz + norm ordering along one evolution
            ChainStepper st(mu, p, a);
            double ptv = 2, pl2 = 1e300;
            for (u64 n = 0; n <= 12; ++n) {
                if (n) st.step();
                const Distribution& d = st.dist();
                double tv = d.tv(), l2 = d.p_l2sq();
                if (tv > ptv + 1e-12 || l2 > pl2 + 1e-12) mono_ok = false;
                ptv = tv;
                pl2 = l2;
                if (4 * tv * tv > l2 + 1e-9) cs_ok = false;
                double d1 = 2 * tv, d2 = distance(d, 2), d4 = distance(d, 4),
                       dinf = distance(d, std::numeric_limits<double>::infinity());
                if (d1 > d2 + 1e-9 || d2 > d4 + 1e-9 || d4 > dinf + 1e-9) order_ok = false;
            }

            // T_q(delta) <= 2 T_2(delta^2) and T(delta) <= T_2(delta)
            double delta = 0.2 + 0.3 * rng_.next_double();
            auto t2sq = mixing_time(mu, p, a, 2, delta * delta, 4000);
            auto t2 = mixing_time(mu, p, a, 2, delta, 4000);
            auto t1 = mixing_time(mu, p, a, 1, delta, 4000);
            if (t1.converged && t2.converged && t1.t_mix > t2.t_mix) tq_ok = false;
            for (double q : {1.0, 2.0, 4.0, std::numeric_limits<double>::infinity()}) {
                auto tq = mixing_time(mu, p, a, q, delta, 4000);
                if (tq.converged && t2sq.converged && tq.t_mix > 2 * t2sq.t_mix) tq_ok = false;
            }

            // ent-b domination by the exact TV
            double theta_cap = 0.95 * std::sqrt(std::log(static_cast<double>(p))) / 2;
            double theta = 0.2 + rng_.next_double() * (theta_cap - 0.2);
            if (theta > 0.2 && theta < theta_cap + 0.2) {
                auto eb = ent_lower_bound(mu, p, theta);
                auto d = evolve_direct(mu, p, a, eb.n);
                if (d.tv() + 1e-9 < eb.bound) entb_ok = false;
            }

            // l2 lower bound against the exact quantity
            for (u64 n : {0ULL, 2ULL, 5ULL, 9ULL}) {
                auto d = evolve_direct(mu, p, a, n);
                if (l2_lower_bound(mu, p, n) > d.p_l2sq() + 1e-9) l2lb_ok = false;
            }

            // phi bound
            if (!phi_bound_check(mu, p).ok) phib_ok = false;

            // self-similarity inequality family, convolution included at small p
            u64 n = 1 + rng_.below(5), m = 1 + rng_.below(4), k = 1 + rng_.below(3);
            auto rep = self_similarity_suite(mu, p, a, n, m, k, 1e-8, p <= 512);
            if (!rep.ok) {
                ss_ok = false;
                if (!rep.failures.empty()) ss_why = rep.failures.front();
            }

            // Konyagin energy is nonnegative and grows along orbits
            u64 x0 = 1 + rng_.below(p - 1);
            if (konyagin_energy(x0, a, p, 50) < 0) kon_ok = false;
        }
        add("dist-engine: TV and l2 monotone in n", mono_ok);
        add("dist-engine: Cauchy-Schwarz ||.||_1^2 <= p ||.||_2^2", cs_ok);
        add("dist-engine: normalized q-distance non-decreasing in q", order_ok);
        add("dist-engine: T <= T_2 and T_q <= 2 T_2(delta^2)", tq_ok);
        add("dist-engine: exact TV dominates the entropy lower bound", entb_ok);
        add("dist-engine: l2 lower bound never exceeds exact p||.-u||_2^2", l2lb_ok);
        add("dist-engine: |phi(t)| bound from the difference law", phib_ok);
        add("dist-engine: self-similarity identities and bounds", ss_ok, ss_why);
        add("dist-engine: Konyagin energy nonnegative", kon_ok);
    }

    void poly_checks() {
        // N_p against exhaustive evaluation
        bool ok = true;
        for (int t = 0; t < (full() ? 40 : 12); ++t) {
            u64 p = random_prime(5, 1000);
            u64 deg = 1 + rng_.below(30);
            std::vector<bigint> c(deg + 1);
            for (auto& v : c) v = static_cast<std::int64_t>(rng_.below(21)) - 10;
            if (c.back() == 0) c.back() = 1;
            ZPoly q(std::move(c));
            auto rc = count_roots_Np(q, p);
            u64 brute = 0;
            FpPoly qp = FpPoly::reduce(q, p);
            if (qp.is_zero()) {
                if (!rc.vanishing_reduction || rc.count != p) ok = false;
                continue;
            }
            for (u64 x = 0; x < p; ++x)
                if (qp.eval(x) == 0) ++brute;
            if (rc.count != brute) ok = false;
        }
        add("polyarith: N_p matches exhaustive evaluation", ok);

        // subadditivity / coprime additivity
        ok = true;
        for (int t = 0; t < 20; ++t) {
            u64 p = random_prime(11, 500);
            auto rand_poly = [&](u64 deg) {
                std::vector<bigint> c(deg + 1);
                for (auto& v : c) v = static_cast<std::int64_t>(rng_.below(11)) - 5;
                if (c.back() == 0) c.back() = 1;
                return ZPoly(std::move(c));
            };
            ZPoly q1 = rand_poly(1 + rng_.below(6)), q2 = rand_poly(1 + rng_.below(6));
            auto n1 = count_roots_Np(q1, p), n2 = count_roots_Np(q2, p),
                 n12 = count_roots_Np(q1 * q2, p);
            if (n1.vanishing_reduction || n2.vanishing_reduction) continue;
            if (n12.count > n1.count + n2.count) ok = false;
            FpPoly r1 = FpPoly::reduce(q1, p), r2 = FpPoly::reduce(q2, p);
            if (fp_gcd(r1, r2).degree() == 0 && n12.count != n1.count + n2.count) ok = false;
        }
        add("polyarith: N_p subadditive, additive for coprime reductions", ok);

        // cyclotomic structure
        ok = true;
        for (u64 k = 1; k <= 40; ++k) {
            ZPoly xk1 = ZPoly::monomial(k) - ZPoly::one();
            if (!xk1.divide_exact(cyclotomic_poly(k))) ok = false;
            u64 degsum = 0;
            for (u64 d = 1; d <= k; ++d)
                if (k % d == 0) degsum += cyclotomic_poly(d).degree();
            if (degsum != k) ok = false;
        }
        add("polyarith: Phi_k divides x^k - 1 and degrees sum to k", ok);

        // strip reconstruction and idempotence
        ok = true;
        for (int t = 0; t < 15; ++t) {
            std::vector<bigint> c(3 + rng_.below(8));
            for (auto& v : c) v = static_cast<std::int64_t>(rng_.below(9)) - 4;
            if (c.back() == 0) c.back() = 2;
            ZPoly base(std::move(c));
            if (base.is_zero()) continue;
            ZPoly poly = base * cyclotomic_poly(1 + rng_.below(12)) * ZPoly::monomial(rng_.below(3));
            auto sf = strip_cyclotomic(poly);
            if (!(sf.phi * sf.reduced == poly)) ok = false;
            auto again = strip_cyclotomic(sf.reduced);
            if (!(again.phi == ZPoly::one())) ok = false;
        }
        add("polyarith: strip_cyclotomic reconstructs exactly and is idempotent", ok);

        // Mahler invariants
        ok = true;
        double worst = 0;
        for (u64 k = 1; k <= 30; ++k)
            worst = std::max(worst, std::abs(mahler_measure(cyclotomic_poly(k)) - 1.0));
        if (worst > 1e-8) ok = false;
        for (int t = 0; t < 15; ++t) {
            std::vector<bigint> c1(2 + rng_.below(6)), c2(2 + rng_.below(6));
            for (auto& v : c1) v = static_cast<std::int64_t>(rng_.below(9)) - 4;
            for (auto& v : c2) v = static_cast<std::int64_t>(rng_.below(9)) - 4;
            if (c1.back() == 0) c1.back() = 1;
            if (c2.back() == 0) c2.back() = 1;
            ZPoly q1(std::move(c1)), q2(std::move(c2));
            double m1 = mahler_measure(q1), m2 = mahler_measure(q2), m12 = mahler_measure(q1 * q2);
            if (std::abs(m12 - m1 * m2) > 1e-6 * std::max(1.0, m1 * m2)) ok = false;
        }
        add("polyarith: M(Phi_k) = 1 and M is multiplicative", ok);

        // admissible count sandwich
        ok = true;
        for (int t = 0; t < 10; ++t) {
            u64 p = random_prime(11, 400);
            std::vector<bigint> c(2 + rng_.below(6));
            for (auto& v : c) v = static_cast<std::int64_t>(rng_.below(9)) - 4;
            if (c.back() == 0) c.back() = 1;
            ZPoly q(std::move(c));
            if (FpPoly::reduce(q, p).is_zero()) continue;
            u64 n = 1 + rng_.below(4);
            auto ad = count_admissible_roots(q, p, n);
            auto np = count_roots_Np(q, p);
            if (!(ad.count <= np.count && np.count <= static_cast<u64>(q.degree()))) ok = false;
        }
        add("polyarith: 0 <= admissible roots <= N_p <= deg", ok);
    }

    void chebotarev_checks() {
        bool ok = true;
        double worst = 0;
        for (const auto& mu : sample_laws())
            for (u64 p : {5ULL, 7ULL, 11ULL})
                for (u64 n : {1ULL, 2ULL, 3ULL}) {
                    auto rep = identity_check_exact(mu, p, n);
                    worst = std::max(worst, rep.discrepancy);
                    if (!rep.within_tolerance) ok = false;
                }
        add("chebotarev: exact root-counting identity (worst " + fmt12(worst) + ")", ok);

        // excluded primes are exactly the common divisors of the coefficients
        ZPoly q = ZPoly::parse("6,12,18");  // content 6
        auto avg = weighted_prime_average(q, 2, 100, workers_);
        ok = avg.excluded == std::vector<u64>{2, 3};
        add("chebotarev: excluded primes divide every coefficient", ok);

        if (full()) {
            auto a1 = weighted_prime_average(ZPoly::parse("1,0,1"), 10000, 1000000, workers_);
            auto a2 = weighted_prime_average(ZPoly::parse("-2,0,0,1"), 10000, 1000000, workers_);
            add("chebotarev: irreducible window means near 1",
                std::abs(a1.weighted_mean - 1.0) <= 0.05 && std::abs(a2.weighted_mean - 1.0) <= 0.05,
                "x^2+1 -> " + fmt12(a1.weighted_mean) + ", x^3-2 -> " + fmt12(a2.weighted_mean));
            ZPoly prod = cyclotomic_poly(3) * cyclotomic_poly(4);
            auto a3 = weighted_prime_average(prod, 10000, 1000000, workers_);
            add("chebotarev: cyclotomic product mean near factor count",
                std::abs(a3.weighted_mean - 2.0) <= 0.2, fmt12(a3.weighted_mean));
        }
    }

    void determinism_check() {
        SweepConfig cfg;
        cfg.mu = StepLaw::uniform({0, 1});
        cfg.primes = {101, 211};
        cfg.a_sample = 3;
        cfg.c_grid = {0.5, 1.0, 2.0};
        cfg.seed = 42;
        cfg.workers = workers_;
        std::string first = sweep_csv(cutoff_sweep(cfg));
        std::string second = sweep_csv(cutoff_sweep(cfg));
        add("harness: identical seed yields byte-identical sweep CSV", first == second);
    }

    VerifyLevel level_;
    SplitRng rng_;
    unsigned workers_;
    std::vector<CheckResult> results_;
};

}  // namespace detail

inline std::vector<CheckResult> run_verify(VerifyLevel level, u64 seed = 12345,
                                           unsigned workers = 0) {
    return detail::Verifier(level, seed, workers).run();
}

}  // namespace axb
