#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "axb/distribution.hpp"
#include "axb/modular.hpp"
#include "axb/rng.hpp"
#include "axb/step_law.hpp"

namespace axb {

struct MixingReport {
    u64 p = 0, a = 0;
    double q = 1;
    double delta = 0;
    u64 t_mix = 0;
    double distance_at_t = 0;
    double distance_at_t_minus_1 = 0;
    bool converged = false;
};

// First n with distance(mu_a^(n), q) <= delta. The chain is stepped
// sequentially from n = 0, which both finds the first crossing and lets us
// assert the TV / l2 monotonicity invariant at every step; a probe-based
// doubling search would only sample it.
inline MixingReport mixing_time(const StepLaw& mu, u64 p, u64 a, double q, double delta,
                                u64 n_ceiling = 1000000, const WorkBudget& budget = {}) {
    if (a % p == 0) throw std::domain_error("mixing_time: a must be non-zero");
    if (delta <= 0 || delta >= 1) throw std::domain_error("mixing_time: delta must be in (0,1)");
    if (p > budget.max_p) throw BudgetError("mixing_time: p exceeds work budget");
    n_ceiling = std::min(n_ceiling, budget.max_n);

    MixingReport rep;
    rep.p = p;
    rep.a = a;
    rep.q = q;
    rep.delta = delta;

    ChainStepper stepper(mu, p, a);
    double prev_tv = stepper.dist().tv();
    double prev_l2 = stepper.dist().p_l2sq();
    double prev_d = distance(stepper.dist(), q);
    if (prev_d <= delta) {
        rep.t_mix = 0;
        rep.distance_at_t = prev_d;
        rep.distance_at_t_minus_1 = prev_d;
        rep.converged = true;
        return rep;
    }
    for (u64 n = 1; n <= n_ceiling; ++n) {
        stepper.step();
        double tv = stepper.dist().tv();
        double l2 = stepper.dist().p_l2sq();
        if (tv > prev_tv + 1e-12 || l2 > prev_l2 + 1e-12)
            throw std::logic_error("mixing_time: distance monotonicity violated at n=" +
                                   std::to_string(n));
        double d = distance(stepper.dist(), q);
        if (d <= delta) {
            rep.t_mix = n;
            rep.distance_at_t = d;
            rep.distance_at_t_minus_1 = prev_d;
            rep.converged = true;
            return rep;
        }
        prev_tv = tv;
        prev_l2 = l2;
        prev_d = d;
    }
    rep.converged = false;
    rep.t_mix = n_ceiling;
    rep.distance_at_t = prev_d;
    return rep;
}

struct EntropyLowerBound {
    u64 n = 0;
    double bound = 0;
};

// n = floor((log p - theta sqrt(log p)) / H(mu)) and the matching TV lower
// bound 1 - e^{-theta^2} - 2 e^{-(H/C^2) theta^2}. A uniform step law has
// C_mu = 0 and the Chernoff term degenerates to 0.
inline EntropyLowerBound ent_lower_bound(const StepLaw& mu, u64 p, double theta) {
    double logp = std::log(static_cast<double>(p));
    if (theta <= 0 || theta >= std::sqrt(logp) / 2)
        throw std::domain_error("ent_lower_bound: theta out of range (0, sqrt(log p)/2)");
    double h = mu.shannon_entropy();
    double c = mu.log_spread();
    EntropyLowerBound out;
    out.n = static_cast<u64>(std::floor((logp - theta * std::sqrt(logp)) / h));
    double chernoff = c == 0 ? 0.0 : 2.0 * std::exp(-(h / (c * c)) * theta * theta);
    out.bound = 1.0 - std::exp(-theta * theta) - chernoff;
    return out;
}

// max(0, p e^{-n H_2(mu)} - 1) <= p ||mu_a^(n) - u||_2^2.
inline double l2_lower_bound(const StepLaw& mu, u64 p, u64 n) {
    double v = static_cast<double>(p) * std::exp(-static_cast<double>(n) * mu.renyi2_entropy()) - 1.0;
    return std::max(0.0, v);
}

struct SweepRecord {
    u64 p = 0, a = 0, n = 0;
    u64 order_a = 0;
    bool admissible = false;
    double tv = 0;
    double p_l2sq = 0;
    u64 entb_n = 0;
    double entb_bound = 0;
    double l2_lb = 0;
    bool failed = false;
    std::string error;
};

struct SweepConfig {
    StepLaw mu = StepLaw::uniform({-1, 0, 1});
    std::vector<u64> primes;          // explicit prime list (already sampled/sieved)
    u64 a_sample = 0;                 // 0 means: use explicit_a
    std::vector<u64> explicit_a;
    // n per (p): either multiples of log p / H(mu) or explicit values
    std::vector<double> c_grid;
    std::vector<u64> explicit_n;
    double theta = 2.0;
    u64 seed = 0;
    unsigned workers = 0;             // 0 = hardware concurrency
    WorkBudget budget;
};

inline std::vector<u64> sweep_n_grid(const SweepConfig& cfg, u64 p) {
    std::vector<u64> ns = cfg.explicit_n;
    double h = cfg.mu.shannon_entropy();
    for (double c : cfg.c_grid)
        ns.push_back(static_cast<u64>(std::llround(c * std::log(static_cast<double>(p)) / h)));
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    return ns;
}

inline std::vector<u64> sweep_a_values(const SweepConfig& cfg, u64 p) {
    if (cfg.a_sample == 0) return cfg.explicit_a;
    SplitRng rng = SplitRng(cfg.seed).split(p, 0x61);
    std::set<u64> as;
    u64 want = std::min<u64>(cfg.a_sample, p - 1);
    while (as.size() < want) as.insert(1 + rng.below(p - 1));
    return {as.begin(), as.end()};
}

// Evolves each (p, a) cell once up to the largest n in its grid, recording a
// row per grid point. Cells are independent; rows come back sorted by
// (p, a, n) regardless of worker completion order.
inline std::vector<SweepRecord> cutoff_sweep(const SweepConfig& cfg) {
    struct Cell {
        u64 p, a;
        std::vector<u64> ns;
    };
    std::vector<Cell> cells;
    for (u64 p : cfg.primes) {
        auto ns = sweep_n_grid(cfg, p);
        for (u64 a : sweep_a_values(cfg, p)) cells.push_back({p, a % p, ns});
    }

    std::vector<std::vector<SweepRecord>> rows(cells.size());
    auto run_cell = [&](std::size_t idx) {
        const Cell& cell = cells[idx];
        std::vector<SweepRecord>& out = rows[idx];
        EntropyLowerBound entb{0, 0.0};
        bool have_entb = false;
        try {
            double logp = std::log(static_cast<double>(cell.p));
            double theta = std::min(cfg.theta, std::sqrt(logp) / 2 * 0.999);
            entb = ent_lower_bound(cfg.mu, cell.p, theta);
            have_entb = true;
        } catch (const std::exception&) {
        }
        u64 order = cell.a == 0 ? 0 : mult_order(cell.a, cell.p);
        try {
            if (cell.p > cfg.budget.max_p) throw BudgetError("sweep cell: p exceeds work budget");
            ChainStepper stepper(cfg.mu, cell.p, cell.a);
            for (u64 n : cell.ns) {
                if (n > cfg.budget.max_n) throw BudgetError("sweep cell: n exceeds work budget");
                stepper.advance_to(n);
                SweepRecord rec;
                rec.p = cell.p;
                rec.a = cell.a;
                rec.n = n;
                rec.order_a = order;
                rec.admissible = cell.a != 0 && euler_phi(order) > 3 * n;
                rec.tv = stepper.dist().tv();
                rec.p_l2sq = stepper.dist().p_l2sq();
                rec.entb_n = have_entb ? entb.n : 0;
                rec.entb_bound = have_entb ? entb.bound : 0;
                rec.l2_lb = l2_lower_bound(cfg.mu, cell.p, n);
                out.push_back(rec);
            }
        } catch (const std::exception& e) {
            for (u64 n : cell.ns) {
                SweepRecord rec;
                rec.p = cell.p;
                rec.a = cell.a;
                rec.n = n;
                rec.order_a = order;
                rec.failed = true;
                rec.error = e.what();
                out.push_back(rec);
            }
        }
    };

    unsigned workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
    if (workers <= 1 || cells.size() <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1))
                    run_cell(i);
            });
        for (auto& t : pool) t.join();
    }

    std::vector<SweepRecord> flat;
    for (auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    std::sort(flat.begin(), flat.end(), [](const SweepRecord& x, const SweepRecord& y) {
        return std::tie(x.p, x.a, x.n) < std::tie(y.p, y.a, y.n);
    });
    return flat;
}

}  // namespace axb
