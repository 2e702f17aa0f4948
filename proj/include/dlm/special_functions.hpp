#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "dlm/errors.hpp"

namespace dlm {

using cdouble = std::complex<double>;

struct EvalOptions {
    int euler_maclaurin_shift = 30;  // N
    int bernoulli_terms = 12;        // M
};

namespace detail {

// B_{2j} for j = 1..30
inline constexpr std::array<double, 31> kBernoulli2n = {
    1.0,
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
    -26315271553053477373.0 / 1919190.0,
    2929993913841559.0 / 6.0,
    -261082718496449122051.0 / 13530.0,
    1520097643918070802691.0 / 1806.0,
    -27833269579301024235023.0 / 690.0,
    596451111593912163277961.0 / 282.0,
    -5609403368997817686249127547.0 / 46410.0,
    495057205241079648212477525.0 / 66.0,
    -801165718135489957347924991853.0 / 1590.0,
    29149963634884862421418123812691.0 / 798.0,
    -2479392929313226753685415739663229.0 / 870.0,
    84483613348880041862046775994036021.0 / 354.0,
    -1215233140483755572040304994079820246041491.0 / 56786730.0,
};

// Lanczos, g = 607/128, 15 terms (Godfrey's coefficients).
inline constexpr double kLanczosG = 607.0 / 128.0;
inline constexpr std::array<double, 15> kLanczosC = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

inline cdouble lanczos_log_gamma(cdouble s) {
    // valid for Re s >= 0.5
    cdouble sum = kLanczosC[0];
    for (std::size_t i = 1; i < kLanczosC.size(); ++i) sum += kLanczosC[i] / (s + (double)(i - 1));
    cdouble base = s + kLanczosG - 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (s - 0.5) * std::log(base) - base + std::log(sum);
}

} // namespace detail

// log Gamma(s), principal branch for Re s >= 0.5 (reflection otherwise may
// pick up 2 pi i multiples; use complex_gamma when the branch matters).
inline cdouble log_gamma(cdouble s) {
    if (s.real() >= 0.5) return detail::lanczos_log_gamma(s);
    // reflection: Gamma(s) Gamma(1-s) = pi / sin(pi s)
    cdouble sinpis = std::sin(std::numbers::pi * s);
    if (sinpis == cdouble(0.0, 0.0)) throw pole_error("log_gamma: pole at nonpositive integer");
    return std::log(std::numbers::pi) - std::log(sinpis) - detail::lanczos_log_gamma(1.0 - s);
}

inline cdouble complex_gamma(cdouble s) {
    if (s.real() >= 0.5) return std::exp(detail::lanczos_log_gamma(s));
    if (s.imag() == 0.0 && s.real() == std::floor(s.real()))
        throw pole_error("complex_gamma: pole at nonpositive integer");
    cdouble sinpis = std::sin(std::numbers::pi * s);
    return std::numbers::pi / (sinpis * std::exp(detail::lanczos_log_gamma(1.0 - s)));
}

// Hurwitz zeta(s, alpha) by Euler-Maclaurin, analytically continued to
// Re s > 0 (and a bit beyond), alpha in (0, 1].
inline cdouble hurwitz_zeta(cdouble s, double alpha, EvalOptions opts = {}) {
    if (s == cdouble(1.0, 0.0)) throw pole_error("hurwitz_zeta: pole at s = 1");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw domain_error("hurwitz_zeta: alpha must be in (0, 1]");
    int N = opts.euler_maclaurin_shift;
    if (std::abs(s.imag()) > 30.0) N = opts.euler_maclaurin_shift + (int)std::abs(s.imag());
    int M = opts.bernoulli_terms;
    if (M < 1) M = 1;
    if (M > 30) M = 30;

    cdouble sum = 0;
    for (int n = 0; n < N; ++n) sum += std::pow(cdouble(n + alpha, 0.0), -s);
    double Na = N + alpha;
    cdouble NaPow = std::pow(cdouble(Na, 0.0), -s);  // (N+alpha)^{-s}
    sum += NaPow * Na / (s - 1.0);                   // (N+alpha)^{1-s}/(s-1)
    sum += 0.5 * NaPow;

    // correction terms: sum_j B_{2j}/(2j)! * s(s+1)...(s+2j-2) * (N+alpha)^{-s-2j+1}
    cdouble rising = s;                 // s (s+1) ... (s + 2j - 2)
    cdouble powNa = NaPow / Na;         // (N+alpha)^{-s-1}, then -s-3, ...
    static const std::array<double, 31>& B = detail::kBernoulli2n;
    double fact = 2.0;                  // (2j)!
    for (int j = 1; j <= M; ++j) {
        sum += B[j] / fact * rising * powNa;
        rising *= (s + (double)(2 * j - 1)) * (s + (double)(2 * j));
        powNa /= Na * Na;
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    }
    return sum;
}

// digamma for real x > 0, Euler-Maclaurin with the same Bernoulli table;
// supplies the limit zeta(s, x) - 1/(s-1) -> -psi(x) as s -> 1
inline double digamma(double x, EvalOptions opts = {}) {
    if (!(x > 0.0)) throw domain_error("digamma: x must be positive");
    int N = opts.euler_maclaurin_shift;
    double acc = 0;
    for (int n = 0; n < N; ++n) acc -= 1.0 / (x + n);
    double X = x + N;
    acc += std::log(X) - 0.5 / X;
    double p = 1.0 / (X * X);
    double powX = p;
    for (int j = 1; j <= opts.bernoulli_terms && j <= 30; ++j) {
        acc -= detail::kBernoulli2n[j] / (2.0 * j) * powX;
        powX *= p;
    }
    return acc;
}

inline cdouble riemann_zeta(cdouble s, EvalOptions opts = {}) {
    if (s == cdouble(1.0, 0.0)) throw pole_error("riemann_zeta: pole at s = 1");
    return hurwitz_zeta(s, 1.0, opts);
}

// log |zeta(1 + 1/log x + i alpha)|
inline double log_abs_zeta_shift(double alpha, double x) {
    if (x < 2.0) throw domain_error("log_abs_zeta_shift: x must be >= 2");
    return std::log(std::abs(riemann_zeta(cdouble(1.0 + 1.0 / std::log(x), alpha))));
}

} // namespace dlm
