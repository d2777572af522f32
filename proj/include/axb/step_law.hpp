#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace axb {

struct MuParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Atom {
    std::int64_t value;
    double weight;
};

// Finite step law mu on Z: the common law of the increments b_n.
// At least two distinct atoms (aperiodicity), weights positive, sum 1.
class StepLaw {
public:
    explicit StepLaw(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
        std::sort(atoms_.begin(), atoms_.end(),
                  [](const Atom& x, const Atom& y) { return x.value < y.value; });
        validate();
    }

    static StepLaw uniform(std::vector<std::int64_t> values) {
        std::vector<Atom> a;
        for (auto v : values) a.push_back({v, 1.0 / static_cast<double>(values.size())});
        return StepLaw(std::move(a));
    }

    // "value:weight,..." with weights as num/den rationals or decimals,
    // e.g. "0:1/2,1:1/2" or "-1:0.25,0:0.5,1:0.25".
    static StepLaw parse(const std::string& s) {
        std::vector<Atom> atoms;
        std::size_t pos = 0;
        while (pos < s.size()) {
            std::size_t comma = s.find(',', pos);
            std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            std::size_t colon = tok.rfind(':');
            if (colon == std::string::npos || colon == 0)
                throw MuParseError("mu atom must look like value:weight, got '" + tok + "'");
            std::int64_t v;
            double w;
            try {
                v = std::stoll(tok.substr(0, colon));
                std::string ws = tok.substr(colon + 1);
                std::size_t slash = ws.find('/');
                if (slash != std::string::npos)
                    w = std::stod(ws.substr(0, slash)) / std::stod(ws.substr(slash + 1));
                else
                    w = std::stod(ws);
            } catch (const std::exception&) {
                throw MuParseError("cannot parse mu atom '" + tok + "'");
            }
            atoms.push_back({v, w});
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (atoms.empty()) throw MuParseError("empty mu specification");
        return StepLaw(std::move(atoms));
    }

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t support_size() const { return atoms_.size(); }

    // Shannon entropy H(mu) = sum mu(z) log(1/mu(z)).
    double shannon_entropy() const {
        double h = 0;
        for (const auto& a : atoms_) h -= a.weight * std::log(a.weight);
        return h;
    }

    // ||mu||_2^2 = sum mu(z)^2, so H_2 = -log of this.
    double l2_mass() const {
        double s = 0;
        for (const auto& a : atoms_) s += a.weight * a.weight;
        return s;
    }

    double renyi2_entropy() const { return -std::log(l2_mass()); }

    // H_q = (q/(q-1)) log ||mu||_q^{-1}.
    double renyi_entropy(double q) const {
        if (q <= 1) throw std::domain_error("renyi_entropy: q must be > 1");
        if (std::isinf(q)) {
            double mx = 0;
            for (const auto& a : atoms_) mx = std::max(mx, a.weight);
            return -std::log(mx);
        }
        double s = 0;
        for (const auto& a : atoms_) s += std::pow(a.weight, q);
        return -std::log(s) / (q - 1.0);
    }

    // C_mu = log sup mu - log inf mu over the support.
    double log_spread() const {
        double lo = atoms_.front().weight, hi = lo;
        for (const auto& a : atoms_) {
            lo = std::min(lo, a.weight);
            hi = std::max(hi, a.weight);
        }
        return std::log(hi) - std::log(lo);
    }

    std::int64_t max_abs_value() const {
        std::int64_t h = 0;
        for (const auto& a : atoms_) h = std::max(h, std::abs(a.value));
        return h;
    }

private:
    void validate() const {
        if (atoms_.size() < 2) throw MuParseError("mu must be supported on at least two elements");
        double total = 0;
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            if (atoms_[i].weight <= 0) throw MuParseError("mu weights must be strictly positive");
            if (i > 0 && atoms_[i].value == atoms_[i - 1].value)
                throw MuParseError("mu support values must be distinct");
            total += atoms_[i].weight;
        }
        if (std::abs(total - 1.0) > 1e-12) throw MuParseError("mu weights must sum to 1");
    }

    std::vector<Atom> atoms_;
};

// Law nu of b_0 - b_1 for independent b_i ~ mu. Symmetric, nu(0) = ||mu||_2^2.
class DifferenceLaw {
public:
    explicit DifferenceLaw(const StepLaw& mu) {
        std::map<std::int64_t, double> acc;
        for (const auto& x : mu.atoms())
            for (const auto& y : mu.atoms()) acc[x.value - y.value] += x.weight * y.weight;
        for (const auto& [v, w] : acc) atoms_.push_back({v, w});
    }

    const std::vector<Atom>& atoms() const { return atoms_; }

    double weight_at(std::int64_t v) const {
        for (const auto& a : atoms_)
            if (a.value == v) return a.weight;
        return 0;
    }

private:
    std::vector<Atom> atoms_;
};

struct EntropyBundle {
    double shannon;
    double renyi2;
    std::vector<std::pair<double, double>> renyi_q;  // (q, H_q)
    double c_mu;
};

inline EntropyBundle entropy_bundle(const StepLaw& mu, const std::vector<double>& qs = {}) {
    EntropyBundle b;
    b.shannon = mu.shannon_entropy();
    b.renyi2 = mu.renyi2_entropy();
    for (double q : qs) b.renyi_q.push_back({q, mu.renyi_entropy(q)});
    b.c_mu = mu.log_spread();
    return b;
}

inline StepLaw difference_step_law(const StepLaw& mu) {
    DifferenceLaw nu(mu);
    return StepLaw(nu.atoms());
}

}  // namespace axb
