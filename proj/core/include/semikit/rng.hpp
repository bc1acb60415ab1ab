#pragma once

#include <cstdint>

namespace semikit {

/* splitmix64. Used instead of <random> distributions so that seeded runs
 * produce identical streams on every platform. */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /* Uniform in [0, n), n > 0. Modulo bias is irrelevant at our sizes. */
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    /* Uniform in [lo, hi] inclusive. */
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (next() & 1) != 0; }

private:
    std::uint64_t state_;
};

}  // namespace semikit
