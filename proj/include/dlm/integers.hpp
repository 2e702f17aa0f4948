#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "dlm/errors.hpp"

namespace dlm {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (n % p == 0) return n == p;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

struct PrimePower {
    u64 prime;
    unsigned exponent;
    bool operator==(const PrimePower&) const = default;
};

// Prime factorization, primes strictly increasing.
struct Factorization {
    std::vector<PrimePower> factors;

    u64 value() const {
        u64 n = 1;
        for (auto [p, e] : factors)
            for (unsigned i = 0; i < e; ++i) n *= p;
        return n;
    }
};

// Trial division by 2,3 then 6k+-1; sufficient for desk-scale moduli.
inline Factorization factorize(u64 n) {
    if (n == 0) throw domain_error("factorize: n must be positive");
    Factorization f;
    auto strip = [&](u64 p) {
        unsigned e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e) f.factors.push_back({p, e});
    };
    strip(2);
    strip(3);
    for (u64 p = 5; p * p <= n; p += 6) {
        strip(p);
        strip(p + 2);
    }
    if (n > 1) f.factors.push_back({n, 1});
    return f;
}

inline u64 euler_phi(const Factorization& f) {
    u64 r = 1;
    for (auto [p, e] : f.factors) {
        r *= p - 1;
        for (unsigned i = 1; i < e; ++i) r *= p;
    }
    return r;
}

inline u64 euler_phi(u64 n) { return euler_phi(factorize(n)); }

// Count of primitive characters mod n: multiplicative with
// phi*(p) = p-2 and phi*(p^m) = p^m (1-1/p)^2 for m >= 2.
inline u64 phi_star(u64 n) {
    u64 r = 1;
    for (auto [p, e] : factorize(n).factors) {
        if (e == 1) {
            r *= p - 2;
        } else {
            u64 pe = p;
            for (unsigned i = 2; i < e; ++i) pe *= p;  // p^(e-1) / p * ... -> p^(e-2)
            r *= pe * (p - 1) * (p - 1) / p;           // p^e (1-1/p)^2 = p^(e-2)(p-1)^2
        }
    }
    return r;
}

inline int moebius(u64 n) {
    int r = 1;
    for (auto [p, e] : factorize(n).factors) {
        (void)p;
        if (e > 1) return 0;
        r = -r;
    }
    return r;
}

inline u64 divisor_count(u64 n) {
    u64 r = 1;
    for (auto [p, e] : factorize(n).factors) {
        (void)p;
        r *= e + 1;
    }
    return r;
}

inline std::vector<u64> divisors(u64 n) {
    std::vector<u64> d{1};
    for (auto [p, e] : factorize(n).factors) {
        std::size_t m = d.size();
        u64 pe = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pe *= p;
            for (std::size_t j = 0; j < m; ++j) d.push_back(d[j] * pe);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

// Extended Euclid; requires gcd(a, m) = 1.
inline u64 invmod(u64 a, u64 m) {
    long long t = 0, newt = 1;
    long long r = static_cast<long long>(m), newr = static_cast<long long>(a % m);
    while (newr != 0) {
        long long qd = r / newr;
        long long tmp = t - qd * newt;
        t = newt;
        newt = tmp;
        tmp = r - qd * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw domain_error("invmod: arguments not coprime");
    return static_cast<u64>(t < 0 ? t + static_cast<long long>(m) : t);
}

} // namespace dlm
