#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "dlm/characters.hpp"
#include "dlm/l_functions.hpp"
#include "dlm/mollifier.hpp"
#include "dlm/parallel.hpp"
#include "dlm/shifts.hpp"

namespace dlm {

// 1/u = 1/(4 a*), 1/r_m = 1/(2k) - a_m/(4k a*), 1/v = 1 - 1/u - sum 1/r_m.
struct HolderExponents {
    double u;
    double v;
    std::vector<double> r;
};

inline HolderExponents holder_exponents(const ShiftSpec& spec) {
    double astar = spec.a_star();
    double k = (double)spec.k();
    HolderExponents h;
    h.u = 4.0 * astar;
    double inv_sum = 1.0 / h.u;
    for (double am : spec.a) {
        double inv_r = 1.0 / (2.0 * k) - am / (4.0 * k * astar);
        h.r.push_back(1.0 / inv_r);
        inv_sum += inv_r;
    }
    h.v = 1.0 / (1.0 - inv_sum);
    if (!(h.u > 1.0 && h.v > 1.0)) throw domain_error("holder_exponents: degenerate spec");
    double check = 1.0 / h.u + 1.0 / h.v;
    for (std::size_t m = 0; m < spec.a.size(); ++m) {
        if (!(h.r[m] > 1.0)) throw domain_error("holder_exponents: degenerate spec");
        if (std::abs(2.0 * spec.a[m] / h.u + 2.0 * k / h.r[m] - 1.0) > 1e-12)
            throw domain_error("holder_exponents: identity 2a_m/u + 2k/r_m = 1 violated");
        check += 1.0 / h.r[m];
    }
    if (std::abs(check - 1.0) > 1e-12) throw domain_error("holder_exponents: exponents do not sum to 1");
    return h;
}

struct MomentOptions {
    u64 cost_cap = 10'000;  // per-modulus cap on q
};

namespace detail {

// |L(1/2 + i t_m, chi)|^{2 a_m} products over primitive chi, via the shared
// per-(q, t) Hurwitz caches; one value per character, in enumeration order.
inline std::vector<double> primitive_moment_terms(const CharacterGroup& group, const ShiftSpec& spec) {
    std::vector<const HurwitzCache*> cache_for_m;
    std::vector<std::unique_ptr<HurwitzCache>> caches;
    std::map<double, std::size_t> seen;
    for (std::size_t m = 0; m < spec.k(); ++m) {
        auto it = seen.find(spec.t[m]);
        if (it == seen.end()) {
            caches.push_back(std::make_unique<HurwitzCache>(group.modulus(), cdouble(0.5, spec.t[m])));
            it = seen.emplace(spec.t[m], caches.size() - 1).first;
        }
        cache_for_m.push_back(caches[it->second].get());
    }
    std::vector<double> terms;
    for (u64 i = 0; i < group.order(); ++i) {
        auto chi = group.character(i);
        if (!chi.is_primitive()) continue;
        double prod = 1.0;
        std::map<double, double> labs;  // |L| per distinct shift
        for (std::size_t m = 0; m < spec.k(); ++m) {
            auto it = labs.find(spec.t[m]);
            if (it == labs.end())
                it = labs.emplace(spec.t[m], std::abs(l_reference(chi, *cache_for_m[m]).value)).first;
            prod *= std::pow(it->second, 2.0 * spec.a[m]);
        }
        terms.push_back(prod);
    }
    return terms;
}

} // namespace detail

// M_{t,a}(q) = sum over primitive chi of prod_m |L(1/2 + i t_m, chi)|^{2 a_m}.
inline double shifted_moment(u64 q, const ShiftSpec& spec, const MomentOptions& opts = {}) {
    if (q < 3) throw domain_error("shifted_moment: q must be >= 3");
    if (q > opts.cost_cap) throw resource_error("shifted_moment: q exceeds cost cap");
    CharacterGroup group(q);
    return pairwise_sum(detail::primitive_moment_terms(group, spec));
}

// phi(q) (log q)^{sum a_j^2} prod_{j<l} |zeta(1 + i(t_j - t_l) + 1/log q)|^{2 a_j a_l}
inline double predicted_main_term(u64 q, const ShiftSpec& spec) {
    if (q < 3) throw domain_error("predicted_main_term: q must be >= 3");
    double lq = std::log((double)q);
    double a2 = 0;
    for (double aj : spec.a) a2 += aj * aj;
    double out = (double)euler_phi(q) * std::pow(lq, a2);
    for (std::size_t j = 0; j < spec.k(); ++j)
        for (std::size_t l = j + 1; l < spec.k(); ++l) {
            double z = std::abs(riemann_zeta(cdouble(1.0 + 1.0 / lq, spec.t[j] - spec.t[l])));
            out *= std::pow(z, 2.0 * spec.a[j] * spec.a[l]);
        }
    return out;
}

// The S_0 / J / S_m decomposition over T_k, plus the Holder slack
// M^{1/u} |J|^{1/v} prod |S_m|^{1/r_m} - |S_0| (nonnegative up to roundoff).
struct ProofSplit {
    cdouble S0;
    double J = 0;
    std::vector<double> S_m;
    double moment = 0;
    double holder_residual = 0;
    u64 tk_size = 0;
    u64 primitive_count = 0;
};

inline ProofSplit proof_split(u64 q, const ShiftSpec& spec, const MollifierSchedule& sched,
                              const MomentOptions& opts = {}) {
    if (q < 3) throw domain_error("proof_split: q must be >= 3");
    if (q > opts.cost_cap) throw resource_error("proof_split: q exceeds cost cap");
    std::size_t k = spec.k();
    CharacterGroup group(q);
    PrimeTable pt(sched.R >= 1 ? (u64)std::ceil(sched.P[sched.R]) + 1 : 2);

    std::vector<std::unique_ptr<HurwitzCache>> caches;
    std::map<double, std::size_t> cache_idx;
    for (double t : spec.t)
        if (!cache_idx.count(t)) {
            caches.push_back(std::make_unique<HurwitzCache>(q, cdouble(0.5, t)));
            cache_idx.emplace(t, caches.size() - 1);
        }

    std::vector<cdouble> terms_S0;
    std::vector<double> terms_J;
    std::vector<std::vector<double>> terms_Sm(k);
    ProofSplit out;
    out.S_m.assign(k, 0.0);

    for (u64 i = 0; i < group.order(); ++i) {
        auto chi = group.character(i);
        if (!chi.is_primitive()) continue;
        ++out.primitive_count;

        // P_{j,P_R}(1/2 + i t_m, chi), reused across S_0 / J / S_m
        std::vector<std::vector<cdouble>> P(k, std::vector<cdouble>(sched.R + 1, cdouble(0)));
        bool member = true;
        for (std::size_t m = 0; m < k && member; ++m)
            for (int j = 1; j <= sched.R; ++j) {
                P[m][j] = p_poly(j, sched.P[sched.R], cdouble(0.5, spec.t[m]), chi, sched, pt);
                if (std::abs(P[m][j]) > sched.K[j]) { member = false; break; }
            }
        if (!member) continue;
        ++out.tk_size;

        std::vector<cdouble> L(k);
        for (std::size_t m = 0; m < k; ++m) L[m] = l_reference(chi, *caches[cache_idx[spec.t[m]]]).value;

        cdouble s0 = 1.0;
        double j_term = 1.0;
        for (std::size_t m = 0; m < k; ++m) {
            cdouble w = 0;
            double re_sum = 0;
            for (int j = 1; j <= sched.R; ++j) {
                w += (spec.a[m] - 1.0) * P[m][j] + spec.a[m] * std::conj(P[m][j]);
                re_sum += P[m][j].real();
            }
            s0 *= L[m] * std::exp(w);
            j_term *= std::exp(2.0 * spec.a[m] * re_sum);
        }
        terms_S0.push_back(s0);
        terms_J.push_back(j_term);

        for (std::size_t m = 0; m < k; ++m) {
            double sm = std::pow(std::abs(L[m]), 2.0 * (double)k);
            for (int j = 1; j <= sched.R; ++j) sm *= std::exp(2.0 * (spec.a[m] - (double)k) * P[m][j].real());
            for (std::size_t l = 0; l < k; ++l) {
                if (l == m) continue;
                for (int j = 1; j <= sched.R; ++j) sm *= std::exp(2.0 * spec.a[l] * P[l][j].real());
            }
            terms_Sm[m].push_back(sm);
        }
    }

    out.S0 = pairwise_sum(terms_S0);
    out.J = pairwise_sum(terms_J);
    for (std::size_t m = 0; m < k; ++m) out.S_m[m] = pairwise_sum(terms_Sm[m]);
    out.moment = shifted_moment(q, spec, opts);

    auto he = holder_exponents(spec);
    double rhs = std::pow(out.moment, 1.0 / he.u) * std::pow(out.J, 1.0 / he.v);
    for (std::size_t m = 0; m < k; ++m) rhs *= std::pow(out.S_m[m], 1.0 / he.r[m]);
    out.holder_residual = rhs - std::abs(out.S0);
    return out;
}

struct MomentReport {
    u64 q = 0;
    u64 phi = 0;
    u64 phi_star = 0;
    double moment = 0;
    double main_term = 0;
    double ratio = 0;
    bool skipped = false;
    std::string skip_reason;
    double seconds = 0;
};

inline MomentReport moment_report(u64 q, const ShiftSpec& spec, const MomentOptions& opts = {}) {
    MomentReport r;
    r.q = q;
    auto start = std::chrono::steady_clock::now();
    r.phi = euler_phi(q);
    r.phi_star = phi_star(q);
    if (q % 4 == 2 || r.phi_star == 0) {
        r.skipped = true;
        r.skip_reason = "no primitive characters";
    } else {
        r.moment = shifted_moment(q, spec, opts);
        r.main_term = predicted_main_term(q, spec);
        r.ratio = r.moment / r.main_term;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

// One report per modulus, computed in parallel, returned in input order.
inline std::vector<MomentReport> moment_sweep(const std::vector<u64>& moduli, const ShiftSpec& spec,
                                              unsigned threads = 0, const MomentOptions& opts = {}) {
    if (moduli.empty()) throw domain_error("moment_sweep: empty modulus list");
    for (u64 q : moduli)
        if (q > opts.cost_cap) throw resource_error("moment_sweep: modulus exceeds cost cap");
    std::vector<MomentReport> out(moduli.size());
    parallel_for(moduli.size(), resolve_threads(threads),
                 [&](std::size_t i) { out[i] = moment_report(moduli[i], spec, opts); });
    return out;
}

// ratio of sum_{chi mod q} |sum_{p<=x} a(p) chi(p) / sqrt p|^{2k}
// to phi(q) k! (sum_{p<=x} |a(p)|^2 / p)^k, under the hypothesis x^k <= q / log q.
inline double power_moment_ratio(u64 q, double x, const std::map<u64, cdouble>& coeffs, unsigned k) {
    if (q < 3) throw domain_error("power_moment_ratio: q must be >= 3");
    if (k == 0) throw domain_error("power_moment_ratio: k must be positive");
    if (std::pow(x, (double)k) > (double)q / std::log((double)q))
        throw domain_error("power_moment_ratio: hypothesis x^k <= q/log q violated");
    CharacterGroup group(q);
    double diag = 0;
    for (auto& [p, ap] : coeffs) {
        if ((double)p > x) throw domain_error("power_moment_ratio: coefficient prime exceeds x");
        if (std::gcd(p, q) != 1) throw domain_error("power_moment_ratio: coefficient prime divides q");
        diag += std::norm(ap) / (double)p;
    }
    std::vector<double> terms;
    for (u64 i = 0; i < group.order(); ++i) {
        auto chi = group.character(i);
        cdouble s = 0;
        for (auto& [p, ap] : coeffs) s += ap * chi((std::int64_t)p) / std::sqrt((double)p);
        terms.push_back(std::pow(std::norm(s), (double)k));
    }
    double lhs = pairwise_sum(terms);
    double fact = 1;
    for (unsigned i = 2; i <= k; ++i) fact *= i;
    double rhs = (double)group.order() * fact * std::pow(diag, (double)k);
    return lhs / rhs;
}

} // namespace dlm
