#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "axb/modular.hpp"
#include "axb/step_law.hpp"

namespace axb {

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WorkBudget {
    u64 max_p = 2000000;   // distribution vector length
    u64 max_n = 1000000;   // chain steps
};

// Exact law of x_n on F_p, carried as a length-p probability vector.
struct Distribution {
    std::vector<double> probs;
    u64 p = 0;
    u64 a = 0;
    u64 step_count = 0;

    double l2_mass() const {
        double s = 0;
        for (double q : probs) s += q * q;
        return s;
    }

    // p * ||mu_a^(n) - u||_2^2 = p * ||mu_a^(n)||_2^2 - 1.
    double p_l2sq() const { return static_cast<double>(p) * l2_mass() - 1.0; }

    double tv() const {
        double inv = 1.0 / static_cast<double>(p);
        double s = 0;
        for (double q : probs) s += std::abs(q - inv);
        return 0.5 * s;
    }

    std::size_t support_size() const {
        std::size_t c = 0;
        for (double q : probs)
            if (q > 0) ++c;
        return c;
    }
};

// One exact chain step: rho'(a*y + b) += mu(b) * rho(y).
// Step values are reduced mod p once, up front, by the caller.
class ChainStepper {
public:
    ChainStepper(const StepLaw& mu, u64 p, u64 a, u64 x0 = 0) : p_(p), a_(a % p) {
        for (const auto& atom : mu.atoms()) {
            std::int64_t v = atom.value % static_cast<std::int64_t>(p);
            if (v < 0) v += static_cast<std::int64_t>(p);
            steps_.push_back({static_cast<u64>(v), atom.weight});
        }
        dist_.probs.assign(p, 0.0);
        dist_.probs[x0 % p] = 1.0;
        dist_.p = p;
        dist_.a = a;
        scratch_.assign(p, 0.0);
    }

    void step() {
        std::fill(scratch_.begin(), scratch_.end(), 0.0);
        for (const auto& [b, w] : steps_) {
            u64 target = b;  // a*0 + b
            for (u64 y = 0; y < p_; ++y) {
                double q = dist_.probs[y];
                if (q != 0.0) scratch_[target] += w * q;
                target += a_;
                if (target >= p_) target -= p_;
            }
        }
        dist_.probs.swap(scratch_);
        ++dist_.step_count;
    }

    void advance_to(u64 n) {
        while (dist_.step_count < n) step();
    }

    const Distribution& dist() const { return dist_; }

private:
    u64 p_, a_;
    std::vector<std::pair<u64, double>> steps_;
    Distribution dist_;
    std::vector<double> scratch_;
};

// Exact law of x_n started at x0, by n sparse update passes.
inline Distribution evolve_direct(const StepLaw& mu, u64 p, u64 a, u64 n, u64 x0 = 0,
                                  const WorkBudget& budget = {}) {
    if (p > budget.max_p) throw BudgetError("evolve_direct: p exceeds work budget");
    if (n > budget.max_n) throw BudgetError("evolve_direct: n exceeds work budget");
    ChainStepper stepper(mu, p, a, x0);
    stepper.advance_to(n);
    return stepper.dist();
}

// For q = 1: TV distance in [0, 1]. For q > 1: the normalized distance
// ||mu_a^(n) - u||_q / ||u||_q used by the T_q mixing times.
inline double distance(const Distribution& dist, double q) {
    double p = static_cast<double>(dist.p);
    double inv = 1.0 / p;
    if (q == 1.0) return dist.tv();
    if (std::isinf(q)) {
        double mx = 0;
        for (double v : dist.probs) mx = std::max(mx, std::abs(v - inv));
        return mx * p;
    }
    if (q < 1.0) throw std::domain_error("distance: q must be >= 1");
    if (q == 2.0) return std::sqrt(std::max(0.0, dist.p_l2sq()));
    double s = 0;
    for (double v : dist.probs) s += std::pow(std::abs(v - inv), q);
    // ||u||_q = p^{(1-q)/q}
    return std::pow(s, 1.0 / q) * std::pow(p, (q - 1.0) / q);
}

struct SupportEvolution {
    std::vector<std::size_t> sizes;  // |Supp(mu_a^(k))| for k = 0..n_max
    bool reached_full = false;
    u64 diameter = 0;  // first k with full support, when reached
};

// Iterates S_{k+1} = a*S_k + Supp(mu) as bit sets.
inline SupportEvolution support_evolution(const StepLaw& mu, u64 p, u64 a, u64 n_max) {
    std::vector<char> cur(p, 0), next(p, 0);
    cur[0] = 1;
    std::vector<u64> steps;
    for (const auto& atom : mu.atoms()) {
        std::int64_t v = atom.value % static_cast<std::int64_t>(p);
        if (v < 0) v += static_cast<std::int64_t>(p);
        steps.push_back(static_cast<u64>(v));
    }
    SupportEvolution out;
    out.sizes.push_back(1);
    const u64 am = a % p;
    for (u64 k = 1; k <= n_max; ++k) {
        std::fill(next.begin(), next.end(), 0);
        for (u64 b : steps) {
            u64 target = b;
            for (u64 y = 0; y < p; ++y) {
                if (cur[y]) next[target] = 1;
                target += am;
                if (target >= p) target -= p;
            }
        }
        cur.swap(next);
        std::size_t sz = 0;
        for (char c : cur) sz += c;
        out.sizes.push_back(sz);
        if (sz == p) {
            out.reached_full = true;
            out.diameter = k;
            break;
        }
    }
    return out;
}

}  // namespace axb
