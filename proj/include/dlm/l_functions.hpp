#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "dlm/characters.hpp"
#include "dlm/errors.hpp"
#include "dlm/shifts.hpp"
#include "dlm/special_functions.hpp"

namespace dlm {

enum class LMethod { reference, afe };

struct LValueResult {
    cdouble value;
    LMethod method;
    double truncation_error_estimate;
};

// zeta(s, a/q) for a = 1..q, computed once per (q, s) and shared read-only
// across all characters of the modulus.
class HurwitzCache {
public:
    HurwitzCache(u64 q, cdouble s, EvalOptions opts = {}) : q_(q), s_(s) {
        values_.resize(q + 1);
        if (s == cdouble(1.0, 0.0)) {
            // store the regularized values zeta(s, a) - 1/(s-1) = -psi(a);
            // the omitted poles cancel in any nonprincipal character sum
            for (u64 a = 1; a <= q; ++a) values_[a] = -digamma((double)a / (double)q, opts);
        } else {
            for (u64 a = 1; a <= q; ++a) values_[a] = hurwitz_zeta(s, (double)a / (double)q, opts);
        }
    }

    u64 modulus() const { return q_; }
    cdouble s() const { return s_; }
    cdouble operator[](u64 a) const { return values_[a]; }

private:
    u64 q_;
    cdouble s_;
    std::vector<cdouble> values_;
};

// L(s, chi) = q^{-s} sum_{a=1}^{q} chi(a) zeta(s, a/q).
inline LValueResult l_reference(const DirichletCharacter& chi, const HurwitzCache& cache) {
    u64 q = chi.modulus();
    if (cache.modulus() != q) throw domain_error("l_reference: cache modulus mismatch");
    cdouble s = cache.s();
    if (chi.is_principal() && s == cdouble(1.0, 0.0)) throw pole_error("l_reference: pole of principal L at s = 1");
    cdouble sum = 0;
    for (u64 a = 1; a <= q; ++a) {
        auto ang = chi.angle_numerator((std::int64_t)a);
        if (!ang) continue;
        sum += unit_root(*ang, chi.angle_denominator()) * cache[a];
    }
    cdouble val = std::exp(-s * std::log((double)q)) * sum;
    return {val, LMethod::reference, 1e-10 * (double)q};
}

inline LValueResult l_reference(const DirichletCharacter& chi, cdouble s) {
    return l_reference(chi, HurwitzCache(chi.modulus(), s));
}

// Quadrature spec for the smoothing weight W_{a,sigma t}(x): a vertical-line
// contour integral of e^{s^2}/s (x pi^{k/2})^{-s} times a Gamma-factor ratio.
struct AfeWeightSpec {
    int parity = 0;                // the character parity flag
    int sigma = +1;                // which of W_{a, +t} / W_{a, -t}
    std::vector<double> t;         // shifts; k = t.size()
    double c = 3.0;                // line abscissa for x >= 1
    double h = 0.02;               // trapezoid step
    double T0 = 10.0;              // truncation height (e^{s^2} decays like e^{-tau^2})
};

// Evaluator for one weight spec. For x < 1 the line Re s = c is numerically
// hopeless (the integrand is ~x^{-c} with an O(1) answer), so the contour is
// shifted to Re s = -1/4, picking up the residue at s = 0.
class AfeWeight {
public:
    explicit AfeWeight(AfeWeightSpec spec) : spec_(std::move(spec)) {
        if (spec_.t.empty()) throw domain_error("AfeWeight: empty shift tuple");
        if (!(spec_.c > 0) || !(spec_.h > 0) || !(spec_.T0 >= 8)) throw domain_error("AfeWeight: bad quadrature parameters");
        build_nodes(spec_.c, main_);
        build_nodes(-0.25, shifted_);
        residue_ = gamma_ratio(cdouble(0.0, 0.0));
    }

    const AfeWeightSpec& spec() const { return spec_; }
    cdouble residue_at_zero() const { return residue_; }

    // envelope: |W(x)| <= envelope_constant() * x^{-c} for x >= 1
    double envelope_constant() const { return envelope_; }

    cdouble operator()(double x) const {
        if (!(x > 0)) throw domain_error("afe_weight: x must be positive");
        const Nodes& nodes = x < 1.0 ? shifted_ : main_;
        double cline = x < 1.0 ? -0.25 : spec_.c;
        double lx = std::log(x);
        cdouble acc = 0;
        // sum g(tau_i) * x^{-s_i}; nodes store g with the trapezoid weight folded in
        for (std::size_t i = 0; i < nodes.coeff.size(); ++i) {
            double tau = nodes.tau[i];
            acc += nodes.coeff[i] * std::polar(std::exp(-cline * lx), -tau * lx);
        }
        acc *= spec_.h / (2.0 * std::numbers::pi);
        if (x < 1.0) acc += residue_;
        return acc;
    }

private:
    struct Nodes {
        std::vector<double> tau;
        std::vector<cdouble> coeff;
    };

    AfeWeightSpec spec_;
    Nodes main_, shifted_;
    cdouble residue_;
    double envelope_ = 0;

    cdouble gamma_ratio(cdouble s) const {
        cdouble lg = 0;
        for (double tm : spec_.t) {
            lg += log_gamma((cdouble(0.5, spec_.sigma * tm) + s + (double)spec_.parity) / 2.0);
            lg -= log_gamma(cdouble(0.5 + spec_.parity, tm) / 2.0);
        }
        return std::exp(lg);
    }

    void build_nodes(double cline, Nodes& out) {
        std::size_t n = (std::size_t)std::llround(2.0 * spec_.T0 / spec_.h);
        double kk = (double)spec_.t.size();
        double env = 0;
        for (std::size_t i = 0; i <= n; ++i) {
            double tau = -spec_.T0 + (double)i * spec_.h;
            cdouble s(cline, tau);
            cdouble g = std::exp(s * s) / s * std::exp(-s * (kk / 2.0) * std::log(std::numbers::pi)) * gamma_ratio(s);
            if (i == 0 || i == n) g *= 0.5;
            out.tau.push_back(tau);
            out.coeff.push_back(g);
            env += std::abs(g);
        }
        if (cline == spec_.c) envelope_ = env * spec_.h / (2.0 * std::numbers::pi);
    }
};

// Cubic-interpolated W on a uniform grid in log x; the workhorse behind
// afe_product, where W is needed at ~10^5 abscissas per character.
class AfeWeightGrid {
public:
    AfeWeightGrid(const AfeWeight& w, double x_lo, double x_hi, double du = 0.01) : du_(du) {
        u_lo_ = std::log(x_lo) - 2.0 * du;
        std::size_t n = (std::size_t)std::ceil((std::log(x_hi) - u_lo_) / du) + 4;
        values_.reserve(n);
        for (std::size_t i = 0; i < n; ++i) values_.push_back(w(std::exp(u_lo_ + (double)i * du)));
    }

    cdouble operator()(double x) const {
        double u = (std::log(x) - u_lo_) / du_;
        auto i = (std::ptrdiff_t)u;
        if (i < 1) i = 1;
        if (i > (std::ptrdiff_t)values_.size() - 3) i = (std::ptrdiff_t)values_.size() - 3;
        double f = u - (double)i;
        // 4-point Lagrange at offsets -1, 0, 1, 2
        double fm = f - 1.0, fp = f + 1.0, f2 = f - 2.0;
        return values_[i - 1] * (-f * fm * f2 / 6.0) + values_[i] * (fp * fm * f2 / 2.0) +
               values_[i + 1] * (-fp * f * f2 / 2.0) + values_[i + 2] * (fp * f * fm / 6.0);
    }

private:
    double u_lo_, du_;
    std::vector<cdouble> values_;
};

inline cdouble afe_weight(const AfeWeightSpec& spec, double x) { return AfeWeight(spec)(x); }

// tau_t(n): sum over ordered factorizations n = n_1 ... n_k of prod n_m^{-i t_m}.
inline cdouble tau_shift(u64 n, const std::vector<double>& t) {
    if (n == 0) throw domain_error("tau_shift: n must be positive");
    if (t.size() == 1) return std::polar(1.0, -t[0] * std::log((double)n));
    cdouble acc = 0;
    std::vector<double> rest(t.begin() + 1, t.end());
    for (u64 d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        acc += std::polar(1.0, -t[0] * std::log((double)d)) * tau_shift(n / d, rest);
        if (d != n / d) acc += std::polar(1.0, -t[0] * std::log((double)(n / d))) * tau_shift(d, rest);
    }
    return acc;
}

// tau_t(n) for all n <= N by a divisor-style sieve (k <= 2 fast paths).
inline std::vector<cdouble> tau_shift_table(u64 N, const std::vector<double>& t) {
    std::vector<cdouble> tab(N + 1, cdouble(0));
    if (t.size() == 1) {
        for (u64 n = 1; n <= N; ++n) tab[n] = std::polar(1.0, -t[0] * std::log((double)n));
        return tab;
    }
    if (t.size() == 2) {
        for (u64 n1 = 1; n1 <= N; ++n1) {
            cdouble f1 = std::polar(1.0, -t[0] * std::log((double)n1));
            for (u64 n2 = 1; n1 * n2 <= N; ++n2)
                tab[n1 * n2] += f1 * std::polar(1.0, -t[1] * std::log((double)n2));
        }
        return tab;
    }
    for (u64 n = 1; n <= N; ++n) tab[n] = tau_shift(n, t);
    return tab;
}

struct AfeOptions {
    double cutoff_eps = 1e-12;   // truncate each sum where the |W| envelope drops below this
    double quad_c = 3.0;
    double quad_h = 0.02;
    double quad_T0 = 10.0;
    u64 term_budget = 30'000'000;  // resource cap on total summed terms
};

// Approximate functional equation for prod_m L(1/2 + i t_m, chi). Both
// smoothed sums depend on chi(n) only through n mod q, so the heavy work —
// tau tables, W grids, and the n-sums — is folded into per-residue-class
// totals once per (q, parity, t, X); each character then costs O(q).
class AfeProductEvaluator {
public:
    AfeProductEvaluator(u64 q, int parity, std::vector<double> t, double X, AfeOptions opts = {})
        : q_(q), parity_(parity), t_(std::move(t)), X_(X), opts_(opts) {
        if (q < 2) throw domain_error("afe_product: q must exceed 1");
        if (!(X > 0)) throw domain_error("afe_product: X must be positive");
        std::size_t k = t_.size();
        AfeWeight Wp({parity, +1, t_, opts_.quad_c, opts_.quad_h, opts_.quad_T0});
        AfeWeight Wm({parity, -1, t_, opts_.quad_c, opts_.quad_h, opts_.quad_T0});

        double qk2 = std::pow((double)q, (double)k / 2.0);
        auto cutoff = [&](const AfeWeight& w, double scale) {
            // largest n with envelope * (n*scale)^{-c} >= eps
            double x_max = std::pow(w.envelope_constant() / opts_.cutoff_eps, 1.0 / opts_.quad_c);
            return (u64)std::ceil(std::max(1.0, x_max / scale));
        };
        u64 n1 = cutoff(Wp, X / qk2);
        u64 n2 = cutoff(Wm, 1.0 / (X * qk2));
        if (n1 + n2 > opts_.term_budget) throw resource_error("afe_product: truncation budget exceeded");

        std::vector<double> tneg(t_);
        for (double& v : tneg) v = -v;
        G1_ = fold(tau_shift_table(n1, t_), Wp, X / qk2);
        G2_ = fold(tau_shift_table(n2, tneg), Wm, 1.0 / (X * qk2));

        double tsum = 0;
        for (double tm : t_) tsum += tm;
        phase_ = std::exp(cdouble(0.0, -tsum) * std::log((double)q / std::numbers::pi));
        err_ = opts_.cutoff_eps * ((double)n1 + (double)n2);
    }

    LValueResult operator()(const DirichletCharacter& chi) const {
        if (chi.modulus() != q_) throw domain_error("afe_product: modulus mismatch");
        if (!chi.is_primitive()) throw domain_error("afe_product: chi must be primitive");
        if (chi.parity() != parity_) throw domain_error("afe_product: parity mismatch");
        u64 lambda = chi.angle_denominator();
        cdouble s1 = 0, s2 = 0;
        for (u64 r = 1; r < q_; ++r) {
            auto ang = chi.angle_numerator((std::int64_t)r);
            if (!ang) continue;
            cdouble z = unit_root(*ang, lambda);
            s1 += z * G1_[r];
            s2 += std::conj(z) * G2_[r];
        }
        cdouble i_pow_a = parity_ == 0 ? cdouble(1, 0) : cdouble(0, 1);
        // root number epsilon(chi) = tau(chi) / (i^a sqrt q)
        cdouble pref = std::pow(gauss_sum(chi) / (i_pow_a * std::sqrt((double)q_)), (double)t_.size()) * phase_;
        return {s1 + pref * s2, LMethod::afe, err_};
    }

private:
    u64 q_;
    int parity_;
    std::vector<double> t_;
    double X_;
    AfeOptions opts_;
    std::vector<cdouble> G1_, G2_;  // residue-class totals of tau(n) W(n scale) / sqrt n
    cdouble phase_;
    double err_;

    std::vector<cdouble> fold(const std::vector<cdouble>& tau, const AfeWeight& w, double scale) {
        u64 nmax = tau.size() - 1;
        AfeWeightGrid grid(w, scale, (double)nmax * scale);
        std::vector<cdouble> out(q_, cdouble(0));
        for (u64 n = 1; n <= nmax; ++n)
            out[n % q_] += tau[n] / std::sqrt((double)n) * grid((double)n * scale);
        return out;
    }
};

inline LValueResult afe_product(const DirichletCharacter& chi, const std::vector<double>& t, double X,
                                const AfeOptions& opts = {}) {
    if (!chi.is_primitive() || chi.modulus() == 1)
        throw domain_error("afe_product: chi must be primitive with q > 1");
    return AfeProductEvaluator(chi.modulus(), chi.parity(), t, X, opts)(chi);
}

// Relative residual of the completed functional equation
// Lambda(s, chi) = i^a q^{1/2} tau(chi)^{-1} Lambda(1-s, conj chi),
// both sides via the reference evaluator.
inline double functional_equation_residual(const DirichletCharacter& chi, cdouble s) {
    if (!chi.is_primitive()) throw domain_error("functional_equation_residual: chi must be primitive");
    if (!(s.real() > 0 && s.real() < 1)) throw domain_error("functional_equation_residual: need 0 < Re s < 1");
    u64 q = chi.modulus();
    double a = (double)chi.parity();
    auto completed = [&](const DirichletCharacter& c, cdouble z) {
        cdouble L = l_reference(c, z).value;
        cdouble lg = log_gamma((z + a) / 2.0) + (z + a) / 2.0 * std::log((double)q / std::numbers::pi);
        return std::exp(lg) * L;
    };
    cdouble lhs = completed(chi, s);
    cdouble i_pow_a = chi.parity() == 0 ? cdouble(1, 0) : cdouble(0, 1);
    cdouble rhs = gauss_sum(chi) / (i_pow_a * std::sqrt((double)q)) * completed(chi.conjugate(), 1.0 - s);
    return std::abs(lhs - rhs) / std::abs(lhs);
}

} // namespace dlm
