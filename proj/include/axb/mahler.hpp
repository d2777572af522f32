#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "axb/step_law.hpp"
#include "axb/zpoly.hpp"

namespace axb {

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::complex<double> horner(const std::vector<double>& c, std::complex<double> z) {
    std::complex<double> v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * z + c[i];
    return v;
}

inline std::complex<double> horner_deriv(const std::vector<double>& c, std::complex<double> z) {
    std::complex<double> v = 0;
    for (std::size_t i = c.size(); i-- > 1;) v = v * z + static_cast<double>(i) * c[i];
    return v;
}

}  // namespace detail

// All complex roots via companion-matrix eigenvalues, polished with a few
// Newton iterations against the original coefficients.
inline std::vector<std::complex<double>> complex_roots(const ZPoly& poly) {
    if (poly.is_zero()) throw std::domain_error("complex_roots: zero polynomial");
    std::vector<double> c(poly.coeffs().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<double>(poly[i]);
    int n = poly.degree();
    if (n == 0) return {};

    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
    if (solver.info() != Eigen::Success)
        throw NumericError("complex_roots: eigenvalue solver did not converge");

    std::vector<std::complex<double>> roots(n);
    for (int i = 0; i < n; ++i) {
        std::complex<double> z = solver.eigenvalues()[i];
        for (int it = 0; it < 10; ++it) {
            std::complex<double> f = detail::horner(c, z);
            std::complex<double> df = detail::horner_deriv(c, z);
            if (std::abs(df) == 0) break;
            std::complex<double> step = f / df;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
            z -= step;
        }
        roots[i] = z;
    }
    return roots;
}

// M(P) = |leading| * prod max(1, |root|).
inline double mahler_measure(const ZPoly& poly) {
    if (poly.is_zero()) throw std::domain_error("mahler_measure: zero polynomial");
    double m = std::abs(static_cast<double>(poly.leading()));
    for (const auto& z : complex_roots(poly)) {
        double r = std::abs(z);
        if (!std::isfinite(r)) throw NumericError("mahler_measure: non-finite root");
        if (r > 1.0) m *= r;
    }
    return m;
}

struct MahlerSuiteReport {
    double measure_of_product = 0;
    double product_of_measures = 0;
    double multiplicativity_rel_err = 0;
    double height_bound = 0;        // 2 H sqrt(n)
    bool height_bound_holds = true;
    double factor_count_ceiling = 0;  // k <= (log n)^3 log M / c
    bool ok = true;
};

// Multiplicativity of M over the given factorization, the 2 H sqrt(n)
// height bound for difference-walk polynomials, and the Dobrowolski-style
// ceiling on the number of non-cyclotomic irreducible factors.
inline MahlerSuiteReport mahler_suite(const std::vector<ZPoly>& factors, const StepLaw& mu, u64 n,
                                      double dobrowolski_c = 1.0, double rel_tol = 1e-6) {
    if (factors.empty()) throw std::invalid_argument("mahler_suite: empty factor list");
    MahlerSuiteReport rep;
    ZPoly product = ZPoly::one();
    rep.product_of_measures = 1.0;
    for (const auto& f : factors) {
        product = product * f;
        rep.product_of_measures *= mahler_measure(f);
    }
    rep.measure_of_product = mahler_measure(product);
    rep.multiplicativity_rel_err =
        std::abs(rep.measure_of_product - rep.product_of_measures) /
        std::max(1.0, rep.product_of_measures);
    if (rep.multiplicativity_rel_err > rel_tol) rep.ok = false;

    double h = static_cast<double>(mu.max_abs_value());
    rep.height_bound = 2.0 * h * std::sqrt(static_cast<double>(n));
    rep.height_bound_holds = rep.measure_of_product <= rep.height_bound * (1.0 + rel_tol);

    double logn = std::log(std::max<double>(3, n));
    rep.factor_count_ceiling =
        logn * logn * logn * std::log(std::max(1.0, rep.measure_of_product)) / dobrowolski_c;
    return rep;
}

}  // namespace axb
