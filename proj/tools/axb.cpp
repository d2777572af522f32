// Command-line entry point for the ax+b chain laboratory.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>

#include "axb/chebotarev.hpp"
#include "axb/csv.hpp"
#include "axb/distribution.hpp"
#include "axb/fourier.hpp"
#include "axb/fppoly.hpp"
#include "axb/mahler.hpp"
#include "axb/mixing.hpp"
#include "axb/modular.hpp"
#include "axb/sieve.hpp"
#include "axb/step_law.hpp"
#include "axb/verify.hpp"
#include "axb/zpoly.hpp"

using json = nlohmann::json;
using namespace axb;

namespace {

struct CommonOpts {
    std::string mu = "-1:1/3,0:1/3,1:1/3";  // uniform three-point default
    std::string out;
    u64 seed = 0;
    unsigned workers = 0;
    u64 budget_p = 2000000;
    u64 budget_n = 1000000;
};

WorkBudget budget_of(const CommonOpts& c) { return {c.budget_p, c.budget_n}; }

void write_artifact(const std::string& out_path, const std::string& data, const json& summary) {
    if (out_path.empty()) {
        std::cout << data;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file " + out_path);
        f << data;
        std::cout << summary.dump(2) << "\n";
    }
}

json mu_json(const StepLaw& mu) {
    json a = json::array();
    for (const auto& atom : mu.atoms()) a.push_back({{"value", atom.value}, {"weight", atom.weight}});
    return a;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact laboratory for the ax+b Markov chain over F_p"};
    app.require_subcommand(1);

    CommonOpts common;
    u64 p = 0, a = 0, n = 0, x0 = 0, a_sample = 0, prime_lo = 0, prime_hi = 0, samples = 0;
    double q = 1.0, delta = 0.25, theta = 2.0;
    std::string poly_str, n_grid_str, level = "quick";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--mu", common.mu, "step law, value:weight pairs (rationals allowed)");
        sub->add_option("--out", common.out, "output file for the data artifact");
        sub->add_option("--seed", common.seed, "RNG seed");
        sub->add_option("--workers", common.workers, "worker pool size (0 = hardware)");
        sub->add_option("--budget-p", common.budget_p, "max distribution length");
        sub->add_option("--budget-n", common.budget_n, "max chain steps");
    };

    auto* evolve = app.add_subcommand("evolve", "exact law of x_n");
    add_common(evolve);
    evolve->add_option("--p", p)->required();
    evolve->add_option("--a", a)->required();
    evolve->add_option("--n", n)->required();
    evolve->add_option("--x0", x0);

    auto* mixing = app.add_subcommand("mixing-time", "first crossing of the delta threshold");
    add_common(mixing);
    mixing->add_option("--p", p)->required();
    mixing->add_option("--a", a)->required();
    mixing->add_option("--q", q);
    mixing->add_option("--delta", delta);

    auto* sweep = app.add_subcommand("cutoff-sweep", "TV / l2 sweep over primes and multipliers");
    add_common(sweep);
    sweep->add_option("--p", p, "explicit prime (alternative to a window)");
    sweep->add_option("--prime-lo", prime_lo);
    sweep->add_option("--prime-hi", prime_hi);
    sweep->add_option("--a", a, "explicit multiplier");
    sweep->add_option("--a-sample", a_sample, "random multipliers per prime");
    sweep->add_option("--n-grid", n_grid_str, "comma list of c; n = round(c log p / H(mu))");
    sweep->add_option("--theta", theta);

    auto* support = app.add_subcommand("support", "support growth and diameter");
    add_common(support);
    support->add_option("--p", p)->required();
    support->add_option("--a", a)->required();
    support->add_option("--n", n, "step ceiling")->required();

    auto* konyagin = app.add_subcommand("konyagin", "orbit energy sum");
    add_common(konyagin);
    konyagin->add_option("--p", p)->required();
    konyagin->add_option("--a", a)->required();
    konyagin->add_option("--n", n, "number of terms m")->required();
    konyagin->add_option("--x0", x0, "orbit start (default 1)");

    auto* rootcount = app.add_subcommand("root-count", "N_p and admissible root count");
    add_common(rootcount);
    rootcount->add_option("--poly", poly_str, "coefficients, low degree first")->required();
    rootcount->add_option("--p", p)->required();
    rootcount->add_option("--n", n, "admissibility parameter (0 = skip admissible count)");

    auto* primeavg = app.add_subcommand("prime-average", "log-weighted window mean of N_p");
    add_common(primeavg);
    primeavg->add_option("--poly", poly_str)->required();
    primeavg->add_option("--prime-lo", prime_lo)->required();
    primeavg->add_option("--prime-hi", prime_hi)->required();

    auto* identity = app.add_subcommand("identity-check", "sum_a ||mu_a^(n)||_2^2 = E(N_p(P))");
    add_common(identity);
    identity->add_option("--p", p)->required();
    identity->add_option("--n", n)->required();
    identity->add_option("--samples", samples, "0 = exact enumeration, else Monte Carlo");

    auto* mahler = app.add_subcommand("mahler", "Mahler measure of an integer polynomial");
    add_common(mahler);
    mahler->add_option("--poly", poly_str)->required();

    auto* strip = app.add_subcommand("strip", "cyclotomic and monomial stripping");
    add_common(strip);
    strip->add_option("--poly", poly_str)->required();

    auto* verify = app.add_subcommand("verify", "run the bundled invariant suite");
    add_common(verify);
    verify->add_option("--level", level, "quick | full");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        json summary;
        summary["failures"] = json::array();

        if (*evolve) {
            StepLaw mu = StepLaw::parse(common.mu);
            PrimeModulus pm(p);
            if (a % pm.p == 0) throw std::domain_error("evolve: a must be non-zero mod p");
            auto d = evolve_direct(mu, pm.p, a, n, x0, budget_of(common));
            summary["config"] = {{"cmd", "evolve"}, {"mu", mu_json(mu)}, {"p", p}, {"a", a},
                                 {"n", n},          {"x0", x0}};
            summary["results"] = {{"probs", d.probs}, {"tv", d.tv()}, {"p_l2sq", d.p_l2sq()}};
            std::cout << summary.dump(2) << "\n";
        } else if (*mixing) {
            StepLaw mu = StepLaw::parse(common.mu);
            PrimeModulus pm(p);
            auto rep = mixing_time(mu, pm.p, a, q, delta, common.budget_n, budget_of(common));
            summary["config"] = {{"cmd", "mixing-time"}, {"mu", mu_json(mu)}, {"p", p}, {"a", a},
                                 {"q", q},               {"delta", delta}};
            summary["results"] = {{"t_mix", rep.t_mix},
                                  {"converged", rep.converged},
                                  {"distance_at_t", rep.distance_at_t},
                                  {"distance_at_t_minus_1", rep.distance_at_t_minus_1}};
            if (!rep.converged) summary["failures"].push_back("no mixing within budget");
            std::cout << summary.dump(2) << "\n";
        } else if (*sweep) {
            SweepConfig cfg;
            cfg.mu = StepLaw::parse(common.mu);
            if (p != 0) {
                PrimeModulus pm(p);
                cfg.primes = {pm.p};
            } else {
                if (prime_lo < 2 || prime_hi < prime_lo)
                    throw CLI::ValidationError("cutoff-sweep", "need --p or a valid prime window");
                cfg.primes = primes_in_window(prime_lo, prime_hi);
            }
            if (a_sample > 0)
                cfg.a_sample = a_sample;
            else if (a != 0)
                cfg.explicit_a = {a};
            else
                throw CLI::ValidationError("cutoff-sweep", "need --a or --a-sample");
            if (n_grid_str.empty()) {
                cfg.c_grid = {0.5, 1.0, 1.5, 2.0, 3.0, 5.0};
            } else {
                std::stringstream ss(n_grid_str);
                std::string tok;
                while (std::getline(ss, tok, ',')) cfg.c_grid.push_back(std::stod(tok));
            }
            cfg.theta = theta;
            cfg.seed = common.seed;
            cfg.workers = common.workers;
            cfg.budget = budget_of(common);
            auto records = cutoff_sweep(cfg);
            std::string csv = sweep_csv(records);
            summary["config"] = {{"cmd", "cutoff-sweep"},
                                 {"mu", mu_json(cfg.mu)},
                                 {"primes", cfg.primes.size()},
                                 {"a_sample", cfg.a_sample},
                                 {"c_grid", cfg.c_grid},
                                 {"theta", cfg.theta},
                                 {"seed", cfg.seed}};
            std::size_t failed = 0;
            for (const auto& r : records)
                if (r.failed) {
                    ++failed;
                    summary["failures"].push_back("cell p=" + std::to_string(r.p) +
                                                  " a=" + std::to_string(r.a) + ": " + r.error);
                }
            summary["results"] = {{"rows", records.size()}, {"failed_cells", failed}};
            write_artifact(common.out, csv, summary);
        } else if (*support) {
            StepLaw mu = StepLaw::parse(common.mu);
            PrimeModulus pm(p);
            if (a % pm.p == 0) throw std::domain_error("support: a must be non-zero mod p");
            auto ev = support_evolution(mu, pm.p, a, n);
            summary["config"] = {{"cmd", "support"}, {"mu", mu_json(mu)}, {"p", p}, {"a", a}, {"n", n}};
            summary["results"] = {{"sizes", ev.sizes}, {"reached_full", ev.reached_full}};
            if (ev.reached_full) summary["results"]["diameter"] = ev.diameter;
            std::cout << summary.dump(2) << "\n";
        } else if (*konyagin) {
            PrimeModulus pm(p);
            if (x0 == 0) x0 = 1;
            double e = konyagin_energy(x0, a, pm.p, n);
            summary["config"] = {{"cmd", "konyagin"}, {"p", p}, {"a", a}, {"x0", x0}, {"m", n}};
            summary["results"] = {{"energy", e}, {"order_a", mult_order(a, pm.p)}};
            std::cout << summary.dump(2) << "\n";
        } else if (*rootcount) {
            PrimeModulus pm(p);
            ZPoly poly = ZPoly::parse(poly_str);
            auto rc = count_roots_Np(poly, pm.p);
            summary["config"] = {{"cmd", "root-count"}, {"poly", poly.str()}, {"p", p}, {"n", n}};
            summary["results"] = {{"Np", rc.count}, {"vanishing_reduction", rc.vanishing_reduction}};
            if (n > 0 && !rc.vanishing_reduction)
                summary["results"]["admissible"] = count_admissible_roots(poly, pm.p, n).count;
            std::cout << summary.dump(2) << "\n";
        } else if (*primeavg) {
            ZPoly poly = ZPoly::parse(poly_str);
            auto avg = weighted_prime_average(poly, prime_lo, prime_hi, common.workers);
            std::string csv = prime_average_csv(avg);
            summary["config"] = {{"cmd", "prime-average"},
                                 {"poly", poly.str()},
                                 {"prime-lo", prime_lo},
                                 {"prime-hi", prime_hi}};
            json hist = json::object();
            for (const auto& [np, cnt] : avg.histogram) hist[std::to_string(np)] = cnt;
            summary["results"] = {{"weighted_mean", avg.weighted_mean},
                                  {"prime_count", avg.prime_count},
                                  {"histogram", hist},
                                  {"excluded", avg.excluded}};
            write_artifact(common.out, csv, summary);
        } else if (*identity) {
            StepLaw mu = StepLaw::parse(common.mu);
            PrimeModulus pm(p);
            IdentityReport rep = samples == 0
                                     ? identity_check_exact(mu, pm.p, n, 1e-10, budget_of(common))
                                     : identity_check_mc(mu, pm.p, n, samples, common.seed);
            summary["config"] = {{"cmd", "identity-check"}, {"mu", mu_json(mu)}, {"p", p},
                                 {"n", n},                  {"samples", samples}};
            summary["results"] = {{"lhs", rep.lhs},
                                  {"rhs", rep.rhs},
                                  {"discrepancy", rep.discrepancy},
                                  {"method", samples == 0 ? "exact-enumeration" : "monte-carlo"},
                                  {"within_tolerance", rep.within_tolerance}};
            if (samples > 0) summary["results"]["std_error"] = rep.std_error;
            if (!rep.within_tolerance) summary["failures"].push_back("identity discrepancy too large");
            std::cout << summary.dump(2) << "\n";
            if (!rep.within_tolerance) return 1;
        } else if (*mahler) {
            ZPoly poly = ZPoly::parse(poly_str);
            summary["config"] = {{"cmd", "mahler"}, {"poly", poly.str()}};
            summary["results"] = {{"measure", mahler_measure(poly)}};
            std::cout << summary.dump(2) << "\n";
        } else if (*strip) {
            ZPoly poly = ZPoly::parse(poly_str);
            auto sf = strip_cyclotomic(poly);
            json idx = json::array();
            for (auto [k, mult] : sf.cyclotomic_indices)
                idx.push_back({{"k", k}, {"multiplicity", mult}});
            summary["config"] = {{"cmd", "strip"}, {"poly", poly.str()}};
            summary["results"] = {{"phi", sf.phi.str()},
                                  {"reduced", sf.reduced.str()},
                                  {"cyclotomic_indices", idx},
                                  {"monomial_power", sf.monomial_power}};
            std::cout << summary.dump(2) << "\n";
        } else if (*verify) {
            VerifyLevel lvl;
            if (level == "quick")
                lvl = VerifyLevel::quick;
            else if (level == "full")
                lvl = VerifyLevel::full;
            else
                throw CLI::ValidationError("verify", "--level must be quick or full");
            auto results = run_verify(lvl, common.seed == 0 ? 12345 : common.seed, common.workers);
            bool all_ok = true;
            for (const auto& r : results) {
                std::cout << (r.ok ? "PASS " : "FAIL ") << r.name;
                if (!r.ok && !r.detail.empty()) std::cout << " (" << r.detail << ")";
                std::cout << "\n";
                if (!r.ok) all_ok = false;
            }
            std::cout << (all_ok ? "verify: all checks passed\n" : "verify: FAILURES present\n");
            return all_ok ? 0 : 1;
        }
        return 0;
    } catch (const MuParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
