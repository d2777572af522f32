#include <doctest.h>

#include <cmath>
#include <complex>

#include "axb/fourier.hpp"
#include "axb/oracles.hpp"
#include "axb/rng.hpp"

using namespace axb;

TEST_CASE("char_fn basics") {
    StepLaw mu = StepLaw::uniform({0, 1});
    auto phi = char_fn(mu, 7);
    CHECK(std::abs(phi[0] - std::complex<double>(1, 0)) <= 1e-14);
    for (u64 t = 1; t < 7; ++t) CHECK(std::abs(phi[t]) < 1.0);
    // |phi(t)| = |cos(pi t / p)| for the two-point uniform law
    for (u64 t = 0; t < 7; ++t)
        CHECK(std::abs(phi[t]) ==
              doctest::Approx(std::abs(std::cos(std::numbers::pi * static_cast<double>(t) / 7.0))));
}

TEST_CASE("fourier_profile matches the naive DFT of the evolved law") {
    SplitRng rng(3);
    std::vector<StepLaw> laws = {StepLaw::uniform({0, 1}), StepLaw::uniform({-1, 0, 1}),
                                 StepLaw({{0, 0.25}, {1, 0.75}})};
    for (int t = 0; t < 10; ++t) {
        u64 p = 0;
        while (!is_prime(p)) p = 50 + rng.below(900);
        u64 a = 1 + rng.below(p - 1);
        u64 n = 1 + rng.below(60);
        const StepLaw& mu = laws[t % laws.size()];
        auto d = evolve_direct(mu, p, a, n);
        auto ref = oracle::dft(d.probs);
        auto prof = fourier_profile(mu, p, a, n);
        double worst = 0;
        for (u64 xi = 0; xi < p; ++xi)
            worst = std::max(worst, std::abs(ref[xi] - prof.value(xi)));
        CHECK(worst <= 1e-8);
        // Parseval
        CHECK(l2_dist_from_fourier(prof) == doctest::Approx(d.p_l2sq()).epsilon(1e-8));
    }
}

TEST_CASE("fourier_profile handles exact zeros of phi") {
    // uniform on {0,1} at p = 2 has phi(1) = 0; use p odd but a law whose
    // characteristic function vanishes: uniform on {0, 1, 2, 3} mod 4 ideas
    // don't apply at prime p, so check the n = 0 profile and zero-free paths.
    StepLaw mu = StepLaw::uniform({0, 1});
    auto prof0 = fourier_profile(mu, 11, 2, 0);
    for (u64 xi = 0; xi < 11; ++xi)
        CHECK(std::abs(prof0.value(xi) - std::complex<double>(1, 0)) <= 1e-14);
}

TEST_CASE("profile at n=1 equals phi(xi a^0)") {
    StepLaw mu = StepLaw::uniform({-1, 0, 1});
    u64 p = 101, a = 5;
    auto phi = char_fn(mu, p);
    auto prof = fourier_profile(mu, p, a, 1);
    for (u64 xi = 0; xi < p; ++xi) CHECK(std::abs(prof.value(xi) - phi[xi]) <= 1e-12);
}

TEST_CASE("multiplicative orbit recursion: hat(n+1) = hat(n) * phi(a^n xi)") {
    StepLaw mu = StepLaw({{0, 0.25}, {1, 0.75}});
    u64 p = 211, a = 3, n = 17;
    auto phi = char_fn(mu, p);
    auto pn = fourier_profile(mu, p, a, n);
    auto pn1 = fourier_profile(mu, p, a, n + 1);
    u64 an = pow_mod(a, n, p);
    for (u64 xi = 1; xi < p; ++xi) {
        std::complex<double> expect = pn.value(xi) * phi[mul_mod(xi, an, p)];
        CHECK(std::abs(pn1.value(xi) - expect) <= 1e-10);
    }
}

TEST_CASE("phi bound from the difference law") {
    for (const auto& mu : {StepLaw::uniform({0, 1}), StepLaw::uniform({-1, 0, 1}),
                           StepLaw({{0, 0.25}, {1, 0.75}})})
        for (u64 p : {11ULL, 101ULL, 1009ULL}) {
            auto rep = phi_bound_check(mu, p);
            CHECK(rep.ok);
        }
}

TEST_CASE("konyagin_energy") {
    // p=5, a=2, x0=1, m=3: orbit 1,2,4,3 -> reps 1/5, 2/5, -1/5, -2/5
    double e = konyagin_energy(1, 2, 5, 3);
    CHECK(e == doctest::Approx((1 + 4 + 1 + 4) / 25.0));
    CHECK_THROWS_AS(konyagin_energy(0, 2, 5, 3), std::domain_error);
    CHECK_THROWS_AS(konyagin_energy(1, 5, 5, 3), std::domain_error);
    // monotone in m
    double prev = 0;
    for (u64 m = 0; m < 30; ++m) {
        double cur = konyagin_energy(1, 3, 10007, m);
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("self-similarity suite passes on exact data") {
    SplitRng rng(11);
    for (int t = 0; t < 8; ++t) {
        u64 p = 0;
        while (!is_prime(p)) p = 31 + rng.below(400);
        u64 a = 1 + rng.below(p - 1);
        u64 n = 1 + rng.below(5), m = 1 + rng.below(4), k = 1 + rng.below(3);
        auto rep = self_similarity_suite(StepLaw::uniform({-1, 0, 1}), p, a, n, m, k, 1e-8, true);
        CHECK(rep.ok);
        CHECK(rep.worst_slack >= -1e-8);
    }
}
