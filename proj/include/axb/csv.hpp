#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "axb/chebotarev.hpp"
#include "axb/mixing.hpp"

namespace axb {

inline std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline const char* sweep_csv_header() {
    return "p,a,n,order_a,admissible,tv,p_l2sq,entb_n,entb_bound,l2_lb";
}

inline std::string sweep_csv(const std::vector<SweepRecord>& records) {
    std::string out = sweep_csv_header();
    out += '\n';
    for (const auto& r : records) {
        out += std::to_string(r.p) + ',' + std::to_string(r.a) + ',' + std::to_string(r.n) + ',' +
               std::to_string(r.order_a) + ',' + (r.admissible ? "1" : "0") + ',';
        if (r.failed) {
            out += "nan,nan,";
            out += std::to_string(r.entb_n) + ",nan,nan\n";
        } else {
            out += fmt12(r.tv) + ',' + fmt12(r.p_l2sq) + ',' + std::to_string(r.entb_n) + ',' +
                   fmt12(r.entb_bound) + ',' + fmt12(r.l2_lb) + '\n';
        }
    }
    return out;
}

inline const char* prime_average_csv_header() { return "p,logp,Np,excluded"; }

inline std::string prime_average_csv(const PrimeWindowAverage& avg) {
    std::string out = prime_average_csv_header();
    out += '\n';
    std::size_t i = 0, j = 0;
    while (i < avg.primes.size() || j < avg.excluded.size()) {
        bool take_excluded =
            j < avg.excluded.size() && (i >= avg.primes.size() || avg.excluded[j] < avg.primes[i]);
        u64 p = take_excluded ? avg.excluded[j] : avg.primes[i];
        u64 np = take_excluded ? p : avg.np_values[i];
        out += std::to_string(p) + ',' + fmt12(std::log(static_cast<double>(p))) + ',' +
               std::to_string(np) + ',' + (take_excluded ? "1" : "0") + '\n';
        if (take_excluded)
            ++j;
        else
            ++i;
    }
    return out;
}

}  // namespace axb
