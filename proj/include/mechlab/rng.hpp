#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mechlab/rational.hpp"

namespace mechlab {

/// Seeded deterministic generator. Built on the standardized mt19937_64
/// engine with hand-rolled rejection sampling, so identical seeds give
/// identical draws on every platform and standard library.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n).
    uint64_t below(uint64_t n) {
        if (n == 0) throw std::domain_error("Rng::below(0)");
        uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// Bernoulli draw with exact rational probability.
    bool chance(const Rational& p) {
        if (p.sign() <= 0) return false;
        if (p >= Rational(1)) return true;
        return below(static_cast<uint64_t>(p.den())) < static_cast<uint64_t>(p.num());
    }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace mechlab
