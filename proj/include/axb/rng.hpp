#pragma once

#include <cstdint>

namespace axb {

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

// Counter-based generator: the stream is a pure function of (key, counter),
// so identical seeds reproduce identical streams on every platform and
// substreams can be derived without consuming parent state.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed) : key_(detail::mix64(seed ^ 0x5851f42d4c957f2dULL)) {}

    // Independent substream keyed by (this stream, k1, k2).
    SplitRng split(std::uint64_t k1, std::uint64_t k2 = 0) const {
        SplitRng child(0);
        child.key_ = detail::mix64(key_ ^ detail::mix64(k1 + 0x632be59bd9b4e019ULL) ^
                                   detail::mix64(detail::mix64(k2) + 0x9e3779b97f4a7c15ULL));
        child.counter_ = 0;
        return child;
    }

    std::uint64_t next_u64() { return detail::mix64(key_ + 0xd1342543de82ef95ULL * ++counter_); }

    // Uniform in [0, n) without modulo bias worth worrying about at n << 2^64.
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace axb
