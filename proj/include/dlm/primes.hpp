#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "dlm/errors.hpp"
#include "dlm/special_functions.hpp"

namespace dlm {

// Sorted primes up to a limit (simple sieve; desk scale tops out at 1e8).
struct PrimeTable {
    std::uint64_t limit = 0;
    std::vector<std::uint32_t> primes;

    explicit PrimeTable(std::uint64_t limit_) : limit(limit_) {
        if (limit_ > 200'000'000ull) throw resource_error("PrimeTable: limit exceeds 2e8 cap");
        std::vector<bool> composite(limit_ + 1, false);
        for (std::uint64_t p = 2; p * p <= limit_; ++p) {
            if (composite[p]) continue;
            for (std::uint64_t m = p * p; m <= limit_; m += p) composite[m] = true;
        }
        for (std::uint64_t p = 2; p <= limit_; ++p)
            if (!composite[p]) primes.push_back((std::uint32_t)p);
    }
};

enum class PrimeSumKind { reciprocal, log_over_p, cosine };

struct PrimeSumResult {
    double value;     // the direct prime sum
    double residual;  // value minus the corresponding main term
};

// The three prime sums with their main terms:
//   sum 1/p            vs log log x + b1
//   sum log p / p      vs log x
//   sum cos(a log p)/p vs log |zeta(1 + 1/log x + i a)|
inline double meissel_mertens_constant(const PrimeTable& table) {
    double s = 0;
    for (auto p : table.primes) s += 1.0 / p;
    return s - std::log(std::log((double)table.limit));
}

inline double meissel_mertens_constant(std::uint64_t x = 100'000'000ull) {
    return meissel_mertens_constant(PrimeTable(x));
}

inline PrimeSumResult prime_sum(PrimeSumKind kind, const PrimeTable& table, double x, double alpha = 0.0,
                                double b1 = 0.26149721284764278) {
    if (x < 2.0) throw domain_error("prime_sum: x must be >= 2");
    if ((double)table.limit < x) throw domain_error("prime_sum: prime table too short");
    double s = 0;
    for (auto p : table.primes) {
        if ((double)p > x) break;
        switch (kind) {
            case PrimeSumKind::reciprocal: s += 1.0 / p; break;
            case PrimeSumKind::log_over_p: s += std::log((double)p) / p; break;
            case PrimeSumKind::cosine: s += std::cos(alpha * std::log((double)p)) / p; break;
        }
    }
    double main = 0;
    switch (kind) {
        case PrimeSumKind::reciprocal: main = std::log(std::log(x)) + b1; break;
        case PrimeSumKind::log_over_p: main = std::log(x); break;
        case PrimeSumKind::cosine: main = log_abs_zeta_shift(alpha, x); break;
    }
    return {s, s - main};
}

inline PrimeSumResult prime_sum(PrimeSumKind kind, double x, double alpha = 0.0) {
    if (x > 1e8) throw domain_error("prime_sum: x must be <= 1e8");
    return prime_sum(kind, PrimeTable((std::uint64_t)x), x, alpha);
}

} // namespace dlm
