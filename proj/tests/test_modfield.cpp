#include <doctest.h>

#include "axb/modular.hpp"
#include "axb/sieve.hpp"

using namespace axb;

TEST_CASE("modular arithmetic primitives") {
    CHECK(mul_mod(1234567890123ULL, 9876543210123ULL, 1000000007ULL) ==
          (static_cast<u128>(1234567890123ULL) * 9876543210123ULL % 1000000007ULL));
    CHECK(add_mod(1000000006ULL, 5, 1000000007ULL) == 4);
    CHECK(pow_mod(2, 10, 1000) == 24);
    CHECK(pow_mod(3, 0, 7) == 1);
    for (u64 p : {5ULL, 101ULL, 10007ULL})
        for (u64 x = 1; x < std::min<u64>(p, 60); ++x)
            CHECK(mul_mod(x, inv_mod(x, p), p) == 1);
    CHECK_THROWS_AS(inv_mod(0, 7), std::domain_error);
}

TEST_CASE("is_prime agrees with a sieve below 20000") {
    auto flags = sieve_flags(20000);
    for (u64 v = 0; v <= 20000; ++v) CHECK(is_prime(v) == static_cast<bool>(flags[v]));
}

TEST_CASE("is_prime on large known values") {
    CHECK(is_prime(2147483647ULL));           // 2^31 - 1
    CHECK(is_prime(1000000007ULL));
    CHECK_FALSE(is_prime(1000000007ULL * 3));
    CHECK(is_prime(67280421310721ULL));       // factor of 2^128 + 1
    CHECK_FALSE(is_prime(3215031751ULL));     // strong pseudoprime to 2,3,5,7
}

TEST_CASE("prime_factors") {
    CHECK(prime_factors(1).empty());
    CHECK(prime_factors(2) == std::vector<u64>{2});
    CHECK(prime_factors(360) == std::vector<u64>{2, 3, 5});
    CHECK(prime_factors(1000003ULL * 1000033ULL) == std::vector<u64>{1000003ULL, 1000033ULL});
}

TEST_CASE("mult_order examples and structure") {
    CHECK(mult_order(2, 7) == 3);   // 2,4,1
    CHECK(mult_order(3, 7) == 6);   // generator
    CHECK(mult_order(1, 7) == 1);
    CHECK(mult_order(2, 8191) == 13);    // 8191 = 2^13 - 1
    CHECK(mult_order(2, 131071) == 17);  // 131071 = 2^17 - 1
    for (u64 a = 1; a < 101; ++a) {
        u64 ord = mult_order(a, 101);
        CHECK((101 - 1) % ord == 0);
        CHECK(pow_mod(a, ord, 101) == 1);
        for (u64 k = 1; k < ord; ++k) CHECK(pow_mod(a, k, 101) != 1);
    }
    CHECK_THROWS_AS(mult_order(0, 7), std::domain_error);
}

TEST_CASE("euler_phi") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(12) == 4);
    CHECK(euler_phi(97) == 96);
    CHECK(euler_phi(100) == 40);
}

TEST_CASE("frac_rep lands in (-1/2, 1/2] and is antisymmetric") {
    CHECK(frac_rep(0, 7) == doctest::Approx(0.0));
    CHECK(frac_rep(1, 4) == doctest::Approx(0.25));
    CHECK(frac_rep(2, 4) == doctest::Approx(0.5));
    CHECK(frac_rep(3, 4) == doctest::Approx(-0.25));
    for (u64 p : {7ULL, 10007ULL})
        for (u64 x = 0; x < std::min<u64>(p, 2000); ++x) {
            double f = frac_rep(x, p);
            CHECK(f > -0.5);
            CHECK(f <= 0.5);
            if (x != 0 && 2 * x != p) CHECK(frac_rep(p - x, p) == doctest::Approx(-f));
        }
}

TEST_CASE("PrimeModulus validates") {
    CHECK(PrimeModulus(10007).p == 10007);
    CHECK_THROWS_AS(PrimeModulus(10006), std::domain_error);
    CHECK_THROWS_AS(PrimeModulus(1), std::domain_error);
}

TEST_CASE("primes_in_window matches a plain sieve") {
    auto flags = sieve_flags(50000);
    std::vector<u64> expect;
    for (u64 v = 30000; v <= 50000; ++v)
        if (flags[v]) expect.push_back(v);
    CHECK(primes_in_window(30000, 50000) == expect);
    CHECK(primes_in_window(90, 100) == std::vector<u64>{97});
    CHECK(primes_in_window(0, 10) == std::vector<u64>{2, 3, 5, 7});
    CHECK(primes_in_window(24, 28).empty());
    CHECK(primes_in_window(10, 5).empty());
}
