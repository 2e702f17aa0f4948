#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "dlm/characters.hpp"
#include "dlm/errors.hpp"
#include "dlm/primes.hpp"
#include "dlm/shifts.hpp"

namespace dlm {

// h(n) = (a_1 n^{-i t_1} + ... + a_k n^{-i t_k}) / 2
inline cdouble h_coeff(u64 n, const ShiftSpec& spec) {
    if (n == 0) throw domain_error("h_coeff: n must be positive");
    cdouble acc = 0;
    double ln = std::log((double)n);
    for (std::size_t m = 0; m < spec.k(); ++m) acc += spec.a[m] * std::polar(1.0, -spec.t[m] * ln);
    return acc / 2.0;
}

// The scale system: c_j = e^j / (log log q)^2, P_j = q^{c_j}, K_j = c_j^{-3/4},
// R the largest j with P_R <= q^delta. Index 0 entries are the conventional
// c_0 = 0, P_0 = 1. Plain aggregate so tests can assemble synthetic schedules.
struct MollifierSchedule {
    u64 q = 0;
    double delta = 0;
    double a_star = 0;
    std::vector<double> c{0.0};
    std::vector<double> P{1.0};
    std::vector<double> K{0.0};   // K[0] unused
    std::vector<u64> D{0};        // Taylor degree, K[0]/D[0] unused
    int R = 0;
};

inline MollifierSchedule mollifier_schedule(u64 q, double delta, const ShiftSpec& spec) {
    if (q < 1000) throw domain_error("mollifier_schedule: q must be >= 1000");
    if (!(delta > 0.0 && delta < 1.0)) throw domain_error("mollifier_schedule: delta must be in (0,1)");
    MollifierSchedule s;
    s.q = q;
    s.delta = delta;
    s.a_star = spec.a_star();
    double ll2 = std::pow(std::log(std::log((double)q)), 2.0);
    for (int j = 1;; ++j) {
        double cj = std::exp((double)j) / ll2;
        if (cj > delta) break;
        s.c.push_back(cj);
        s.P.push_back(std::pow((double)q, cj));
        double Kj = std::pow(cj, -0.75);
        s.K.push_back(Kj);
        u64 Dj = (u64)std::floor(100.0 * s.a_star * s.a_star * Kj);
        if (j == 1) Dj *= 2;
        s.D.push_back(Dj);
        s.R = j;
    }
    return s;
}

// a_x(p) = log(x/p) p^{-1/log x} / log x
inline double a_weight(double p, double x) {
    return std::log(x / p) / std::log(x) * std::pow(p, -1.0 / std::log(x));
}

// P_{j,x}(s, chi): primes in (P_{j-1}, P_j] with weight a_x(p) p^{-s};
// j = 1 additionally carries sum_{p <= log q} chi(p^2) / (2 p^{2s}).
inline cdouble p_poly(int j, double x, cdouble s, const DirichletCharacter& chi, const MollifierSchedule& sched,
                      const PrimeTable& pt) {
    if (j < 1 || j > sched.R) throw domain_error("p_poly: scale index out of range");
    if ((double)pt.limit < sched.P[j]) throw domain_error("p_poly: prime table too short");
    cdouble acc = 0;
    for (auto p : pt.primes) {
        if ((double)p <= sched.P[j - 1]) continue;
        if ((double)p > sched.P[j]) break;
        acc += chi((std::int64_t)p) * a_weight((double)p, x) * std::exp(-s * std::log((double)p));
    }
    if (j == 1) {
        double lq = std::log((double)sched.q);
        for (auto p : pt.primes) {
            if ((double)p > lq) break;
            acc += chi((std::int64_t)(p * (u64)p)) * 0.5 * std::exp(-2.0 * s * std::log((double)p));
        }
    }
    return acc;
}

// N_{j,x}(s, chi; beta) = sum_{n=0}^{D_j} beta^n P_{j,x}(s, chi)^n / n!
inline cdouble n_poly(int j, double x, cdouble s, const DirichletCharacter& chi, double beta,
                      const MollifierSchedule& sched, const PrimeTable& pt) {
    if (j < 1 || j > sched.R) throw domain_error("n_poly: scale index out of range");
    cdouble P = p_poly(j, x, s, chi, sched, pt);
    cdouble term = 1.0, acc = 1.0;
    for (u64 n = 1; n <= sched.D[j]; ++n) {
        term *= beta * P / (double)n;
        acc += term;
        if (std::abs(term) < 1e-300) break;
    }
    return acc;
}

// chi in T_k: |P_{j,P_R}(1/2 + i t_m, chi)| <= K_j for every j <= R, m <= k.
inline bool tk_membership(const DirichletCharacter& chi, const ShiftSpec& spec, const MollifierSchedule& sched,
                          const PrimeTable& pt) {
    for (int j = 1; j <= sched.R; ++j)
        for (std::size_t m = 0; m < spec.k(); ++m)
            if (std::abs(p_poly(j, sched.P[sched.R], cdouble(0.5, spec.t[m]), chi, sched, pt)) > sched.K[j])
                return false;
    return true;
}

enum class SurrogateVariant { general, nonquadratic };

// RHS of the log|L| product bound, without the unquantified O(1):
//   2 Re sum_{p<=x} h(p) chi(p) p^{-1/2-1/log x} log(x/p)/log x
// + Re sum_{p<=lim} h(p^2) chi(p^2) / p        (lim = sqrt x, or min(log q, sqrt x))
// + a (A+1) log q / log x
inline double log_l_surrogate(const DirichletCharacter& chi, const ShiftSpec& spec, double x,
                              SurrogateVariant variant, const PrimeTable& pt) {
    if (!chi.is_primitive()) throw domain_error("log_l_surrogate: chi must be primitive");
    if (x < 2.0) throw domain_error("log_l_surrogate: x must be >= 2");
    if ((double)pt.limit < x) throw domain_error("log_l_surrogate: prime table too short");
    double q = (double)chi.modulus();
    double lx = std::log(x);
    cdouble s1 = 0, s2 = 0;
    double sq_lim = std::sqrt(x);
    if (variant == SurrogateVariant::nonquadratic) sq_lim = std::min(std::log(q), sq_lim);
    for (auto p : pt.primes) {
        if ((double)p > x) break;
        double pd = (double)p;
        s1 += h_coeff(p, spec) * chi((std::int64_t)p) * std::pow(pd, -0.5 - 1.0 / lx) * std::log(x / pd) / lx;
        if (pd <= sq_lim) s2 += h_coeff((u64)p * p, spec) * chi((std::int64_t)((u64)p * p)) / pd;
    }
    return 2.0 * s1.real() + s2.real() + spec.a_total() * (spec.A + 1.0) * std::log(q) / lx;
}

enum class CoeffFlavor { g, h, f, c_indicator, b, b_prime, b_double_prime };

struct CoefficientVector {
    CoeffFlavor flavor;
    std::vector<cdouble> values;  // index n in [1, L]; values[0] = 0
};

namespace detail {

// Extend a multiplicative coefficient vector by the Euler factor at p with
// prime-power weights w(r). Entries of v carry no factor p on entry.
template <typename W>
inline void mult_extend(std::vector<double>& v, u64 p, u64 L, W w) {
    std::vector<double> add(v.size(), 0.0);
    u64 pr = p;
    for (int r = 1; pr <= L; ++r) {
        double wr = w(r);
        if (wr != 0.0)
            for (u64 m = 1; m * pr <= L; ++m)
                if (v[m] != 0.0) add[m * pr] += v[m] * wr;
        if (pr > L / p) break;
        pr *= p;
    }
    for (u64 n = 0; n <= L; ++n) v[n] += add[n];
}

inline std::vector<double> g_vector(int j, double x, double beta, u64 L, const MollifierSchedule& sched,
                                    const PrimeTable& pt) {
    std::vector<double> v(L + 1, 0.0);
    v[1] = 1.0;
    for (auto p : pt.primes) {
        if ((double)p <= sched.P[j - 1] || (u64)p > L) continue;
        if ((double)p > sched.P[j]) break;
        double ax = a_weight((double)p, x);
        mult_extend(v, p, L, [&](int r) {
            double t = 1.0;
            for (int i = 1; i <= r; ++i) t *= beta * ax / (double)i;
            return t;
        });
    }
    return v;
}

inline std::vector<double> h_vector(int j, double x, double beta, u64 L, const MollifierSchedule& sched,
                                    const PrimeTable& pt) {
    std::vector<double> v(L + 1, 0.0);
    v[1] = 1.0;
    double lq = std::log((double)sched.q);
    for (auto p : pt.primes) {
        if ((double)p <= sched.P[j - 1] || (u64)p > L) continue;
        if ((double)p > sched.P[j]) break;
        double ax = a_weight((double)p, x);
        bool small = (double)p <= lq;
        mult_extend(v, p, L, [&](int r) {
            double g = std::pow(beta * ax, (double)r);
            double fact = 1.0;
            for (int i = 1; i <= r; ++i) fact *= i;
            g /= fact;
            if (!small) return g;
            double extra = 0.0, half = 1.0;  // half = 1/(2^u u!)
            for (int u = 1; 2 * u <= r; ++u) {
                half /= 2.0 * u;
                double f2 = 1.0;
                for (int i = 1; i <= r - 2 * u; ++i) f2 *= i;
                extra += std::pow(beta * ax, (double)(r - 2 * u)) * half / f2;
            }
            return g + extra;
        });
    }
    return v;
}

// Coefficients of the truncated exponential sum_{n<=D} beta^n P^n / n! where P
// has Dirichlet coefficients base[] (primes a_x(p), plus 1/2 at p^2, p <= log q).
inline std::vector<double> f_vector(double x, double beta, u64 L, const MollifierSchedule& sched,
                                    const PrimeTable& pt) {
    std::vector<double> base(L + 1, 0.0);
    double lq = std::log((double)sched.q);
    for (auto p : pt.primes) {
        if ((u64)p > L) break;
        if ((double)p <= sched.P[1]) base[p] += a_weight((double)p, x);
        if ((double)p <= lq && (u64)p * p <= L) base[(u64)p * p] += 0.5;
    }
    std::vector<double> f(L + 1, 0.0), pw(L + 1, 0.0);
    f[1] = 1.0;
    pw[1] = 1.0;
    double scale = 1.0;  // beta^n / n!
    for (u64 n = 1; n <= sched.D[1]; ++n) {
        std::vector<double> next(L + 1, 0.0);
        bool any = false;
        for (u64 a = 1; a <= L; ++a) {
            if (pw[a] == 0.0) continue;
            for (u64 b = 2; a * b <= L; ++b)
                if (base[b] != 0.0) { next[a * b] += pw[a] * base[b]; any = true; }
        }
        if (!any) break;
        pw = std::move(next);
        scale *= beta / (double)n;
        for (u64 m = 1; m <= L; ++m) f[m] += scale * pw[m];
    }
    return f;
}

// c_j(n): n is a product of at most cap atoms, each a prime in (P_{j-1}, P_j]
// (j = 1 also allows prime squares with p <= log q, counting one atom each).
inline std::vector<double> c_vector(int j, u64 L, const MollifierSchedule& sched, const std::vector<std::uint32_t>& spf) {
    u64 cap = (u64)std::floor(100.0 * sched.a_star * sched.a_star * sched.K[j]);
    double lq = std::log((double)sched.q);
    std::vector<double> v(L + 1, 0.0);
    v[1] = 1.0;
    for (u64 n = 2; n <= L; ++n) {
        u64 m = n, atoms = 0;
        bool ok = true;
        while (m > 1) {
            u64 p = spf[m];
            int r = 0;
            while (m % p == 0) { m /= p; ++r; }
            if ((double)p <= sched.P[j - 1] || (double)p > sched.P[j]) { ok = false; break; }
            if (j == 1 && (double)p <= lq)
                atoms += (u64)((r + 1) / 2);
            else
                atoms += (u64)r;
        }
        if (ok && atoms <= cap) v[n] = 1.0;
    }
    return v;
}

inline std::vector<std::uint32_t> spf_table(u64 L) {
    std::vector<std::uint32_t> spf(L + 1, 0);
    for (u64 i = 2; i <= L; ++i)
        if (spf[i] == 0)
            for (u64 m = i; m <= L; m += i)
                if (spf[m] == 0) spf[m] = (std::uint32_t)i;
    return spf;
}

inline std::vector<cdouble> twist(const std::vector<double>& v, double t) {
    std::vector<cdouble> out(v.size());
    for (u64 n = 1; n < v.size(); ++n)
        out[n] = v[n] == 0.0 ? cdouble(0) : v[n] * std::polar(1.0, -t * std::log((double)n));
    return out;
}

inline std::vector<cdouble> dirichlet_conv(const std::vector<cdouble>& u, const std::vector<cdouble>& v) {
    u64 L = u.size() - 1;
    std::vector<cdouble> out(L + 1, cdouble(0));
    for (u64 a = 1; a <= L; ++a) {
        if (u[a] == cdouble(0)) continue;
        for (u64 b = 1; a * b <= L; ++b)
            if (v[b] != cdouble(0)) out[a * b] += u[a] * v[b];
    }
    return out;
}

} // namespace detail

// Coefficient systems at scale j: the multiplicative g_x/h_x, the expansion
// coefficients f_x of N_{1,x}, the c_j indicator, and the k-fold convolutions
// b / b' / b''. beta applies to the scalar flavors (defaults to a_1).
inline CoefficientVector mollifier_coeffs(int j, double x, const ShiftSpec& spec, u64 L, CoeffFlavor flavor,
                                          const MollifierSchedule& sched, const PrimeTable& pt, double beta = 0.0) {
    if (j < 1 || j > sched.R) throw domain_error("mollifier_coeffs: scale index out of range");
    if (L < 1 || L > 1'000'000) throw resource_error("mollifier_coeffs: length cap is 1e6");
    if (beta == 0.0) beta = spec.a[0];
    auto to_complex = [](const std::vector<double>& v) {
        std::vector<cdouble> out(v.begin(), v.end());
        return out;
    };

    switch (flavor) {
        case CoeffFlavor::g:
            return {flavor, to_complex(detail::g_vector(j, x, beta, L, sched, pt))};
        case CoeffFlavor::h:
            return {flavor, to_complex(detail::h_vector(j, x, beta, L, sched, pt))};
        case CoeffFlavor::f: {
            if (j != 1) throw domain_error("mollifier_coeffs: flavor f is the j = 1 expansion");
            return {flavor, to_complex(detail::f_vector(x, beta, L, sched, pt))};
        }
        case CoeffFlavor::c_indicator:
            return {flavor, to_complex(detail::c_vector(j, L, sched, detail::spf_table(L)))};
        case CoeffFlavor::b:
        case CoeffFlavor::b_prime:
        case CoeffFlavor::b_double_prime: {
            std::vector<double> cvec;
            if (flavor == CoeffFlavor::b && j >= 2) cvec = detail::c_vector(j, L, sched, detail::spf_table(L));
            std::vector<cdouble> acc;
            for (std::size_t m = 0; m < spec.k(); ++m) {
                std::vector<double> v;
                if (j == 1)
                    v = flavor == CoeffFlavor::b ? detail::f_vector(x, spec.a[m], L, sched, pt)
                                                 : detail::h_vector(1, x, spec.a[m], L, sched, pt);
                else {
                    v = detail::g_vector(j, x, spec.a[m], L, sched, pt);
                    if (flavor == CoeffFlavor::b)
                        for (u64 n = 1; n <= L; ++n) v[n] *= cvec[n];
                }
                auto factor = flavor == CoeffFlavor::b_double_prime
                                  ? std::vector<cdouble>(v.begin(), v.end())
                                  : detail::twist(v, spec.t[m]);
                acc = m == 0 ? std::move(factor) : detail::dirichlet_conv(acc, factor);
            }
            return {flavor, std::move(acc)};
        }
    }
    throw domain_error("mollifier_coeffs: unknown flavor");
}

} // namespace dlm
