#pragma once

#include <cassert>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>
#include <vector>

#include "dlm/integers.hpp"

namespace dlm {

using cdouble = std::complex<double>;

inline cdouble unit_root(u64 num, u64 den) {
    // e(num/den), num reduced mod den
    double ang = 2.0 * std::numbers::pi * (double)(num % den) / (double)den;
    return {std::cos(ang), std::sin(ang)};
}

namespace detail {

// Smallest primitive root mod p^e for odd prime p.
inline u64 primitive_root(u64 p, unsigned e) {
    u64 pe = p;
    for (unsigned i = 1; i < e; ++i) pe *= p;
    u64 order = pe / p * (p - 1);
    auto ofac = factorize(order);
    for (u64 g = 2;; ++g) {
        if (g % p == 0) continue;
        bool ok = true;
        for (auto [q, _] : ofac.factors)
            if (powmod(g, order / q, pe) == 1) { ok = false; break; }
        if (ok) return g;
    }
}

} // namespace detail

// One cyclic factor of (Z/q)^*. For odd prime powers this is the whole local
// unit group; for 2^e (e >= 3) the local group splits as {+-1} x <5> and
// contributes two components sharing the same modulus.
struct CyclicComponent {
    u64 modulus;    // prime power p^e
    u64 prime;
    unsigned exponent;
    u64 generator;
    u64 order;
    std::vector<std::uint32_t> dlog;  // index: residue mod modulus; UINT32_MAX off the cycle
};

class CharacterGroup;

// A Dirichlet character mod q, stored as an exponent vector over the group's
// cyclic components. chi(n) is an exact root of unity: the angle numerator is
// integer arithmetic mod the group exponent lambda.
class DirichletCharacter {
public:
    DirichletCharacter(const CharacterGroup* group, std::vector<u64> exponents);

    u64 modulus() const;
    const std::vector<u64>& exponents() const { return exponents_; }

    // Angle numerator a with chi(n) = e(a / lambda), or nullopt when gcd(n, q) > 1.
    std::optional<u64> angle_numerator(std::int64_t n) const;
    u64 angle_denominator() const;

    cdouble operator()(std::int64_t n) const {
        auto a = angle_numerator(n);
        if (!a) return {0.0, 0.0};
        return unit_root(*a, angle_denominator());
    }

    u64 conductor() const { return conductor_; }
    bool is_primitive() const;
    bool is_principal() const;
    // Parity flag: 0 when chi(-1) = 1, 1 when chi(-1) = -1.
    int parity() const { return parity_; }

    DirichletCharacter conjugate() const;

private:
    const CharacterGroup* group_;
    std::vector<u64> exponents_;
    u64 conductor_;
    int parity_;

    void compute_conductor_and_parity();
};

// The full character group mod q via CRT over prime-power components.
// Immutable after construction; discrete-log tables are shared read-only.
class CharacterGroup {
public:
    static constexpr u64 kDefaultModulusCap = 10'000'000;

    explicit CharacterGroup(u64 q, u64 modulus_cap = kDefaultModulusCap) : q_(q) {
        if (q == 0) throw domain_error("character_group: modulus must be positive");
        if (q > modulus_cap) throw resource_error("character_group: modulus exceeds cap");
        build();
    }

    u64 modulus() const { return q_; }
    const std::vector<CyclicComponent>& components() const { return components_; }
    u64 order() const { return order_; }          // phi(q)
    u64 exponent() const { return lambda_; }      // lcm of component orders (1 if no components)

    std::size_t size() const { return order_; }

    // Character by enumeration index; order is lexicographic in exponent vectors.
    DirichletCharacter character(u64 index) const {
        if (index >= order_) throw domain_error("character index out of range");
        std::vector<u64> e(components_.size());
        for (std::size_t c = components_.size(); c-- > 0;) {
            e[c] = index % components_[c].order;
            index /= components_[c].order;
        }
        return DirichletCharacter(this, std::move(e));
    }

    DirichletCharacter principal() const {
        return DirichletCharacter(this, std::vector<u64>(components_.size(), 0));
    }

    std::vector<DirichletCharacter> all_characters() const {
        std::vector<DirichletCharacter> out;
        out.reserve(order_);
        for (u64 i = 0; i < order_; ++i) out.push_back(character(i));
        return out;
    }

    std::vector<DirichletCharacter> primitive_characters() const {
        std::vector<DirichletCharacter> out;
        for (u64 i = 0; i < order_; ++i) {
            auto chi = character(i);
            if (chi.is_primitive()) out.push_back(std::move(chi));
        }
        return out;
    }

private:
    u64 q_;
    u64 order_ = 1;
    u64 lambda_ = 1;
    std::vector<CyclicComponent> components_;

    void push_component(CyclicComponent c) {
        order_ *= c.order;
        lambda_ = std::lcm(lambda_, c.order);
        components_.push_back(std::move(c));
    }

    void add_cyclic(u64 modulus, u64 prime, unsigned exponent, u64 generator, u64 order) {
        CyclicComponent c{modulus, prime, exponent, generator, order, {}};
        c.dlog.assign(modulus, UINT32_MAX);
        u64 x = 1;
        for (u64 k = 0; k < order; ++k) {
            c.dlog[x] = static_cast<std::uint32_t>(k);
            x = mulmod(x, generator, modulus);
        }
        push_component(std::move(c));
    }

    // (Z/2^e)^* = {+-1} x <5> for e >= 3; every odd r is (-1)^eps 5^x.
    void add_two_adic(unsigned e) {
        u64 m = 1ull << e;
        CyclicComponent sign{m, 2, e, m - 1, 2, {}};
        CyclicComponent five{m, 2, e, 5, 1ull << (e - 2), {}};
        sign.dlog.assign(m, UINT32_MAX);
        five.dlog.assign(m, UINT32_MAX);
        u64 r = 1;
        for (u64 x = 0; x < five.order; ++x) {
            sign.dlog[r] = 0;
            five.dlog[r] = static_cast<std::uint32_t>(x);
            sign.dlog[m - r] = 1;
            five.dlog[m - r] = static_cast<std::uint32_t>(x);
            r = mulmod(r, 5, m);
        }
        push_component(std::move(sign));
        push_component(std::move(five));
    }

    void build() {
        for (auto [p, e] : factorize(q_).factors) {
            if (p == 2) {
                if (e == 1) continue;  // (Z/2)^* trivial
                if (e == 2)
                    add_cyclic(4, 2, 2, 3, 2);
                else
                    add_two_adic(e);
            } else {
                u64 m = p;
                for (unsigned i = 1; i < e; ++i) m *= p;
                u64 order = m / p * (p - 1);
                add_cyclic(m, p, e, detail::primitive_root(p, e), order);
            }
        }
    }

    friend class DirichletCharacter;
};

inline DirichletCharacter::DirichletCharacter(const CharacterGroup* group, std::vector<u64> exponents)
    : group_(group), exponents_(std::move(exponents)) {
    assert(exponents_.size() == group_->components().size());
    compute_conductor_and_parity();
}

inline u64 DirichletCharacter::modulus() const { return group_->modulus(); }
inline u64 DirichletCharacter::angle_denominator() const { return group_->exponent(); }
inline bool DirichletCharacter::is_primitive() const { return conductor_ == group_->modulus(); }

inline bool DirichletCharacter::is_principal() const {
    for (u64 e : exponents_)
        if (e != 0) return false;
    return true;
}

inline std::optional<u64> DirichletCharacter::angle_numerator(std::int64_t n) const {
    u64 q = group_->modulus();
    u64 r = static_cast<u64>(((n % (std::int64_t)q) + (std::int64_t)q) % (std::int64_t)q);
    if (std::gcd(r, q) != 1) return std::nullopt;
    u64 lambda = group_->exponent();
    u64 acc = 0;
    const auto& comps = group_->components();
    for (std::size_t c = 0; c < comps.size(); ++c) {
        if (exponents_[c] == 0) continue;
        u64 d = comps[c].dlog[r % comps[c].modulus];
        assert(d != UINT32_MAX);
        u64 term = mulmod(mulmod(exponents_[c] % comps[c].order, d % comps[c].order, comps[c].order),
                          lambda / comps[c].order, lambda);
        acc = (acc + term) % lambda;
    }
    return acc;
}

inline DirichletCharacter DirichletCharacter::conjugate() const {
    std::vector<u64> e(exponents_.size());
    const auto& comps = group_->components();
    for (std::size_t c = 0; c < comps.size(); ++c)
        e[c] = exponents_[c] == 0 ? 0 : comps[c].order - exponents_[c];
    return DirichletCharacter(group_, std::move(e));
}

inline void DirichletCharacter::compute_conductor_and_parity() {
    const auto& comps = group_->components();
    u64 cond = 1;
    // local conductors; the two 2-adic components (e >= 3) must be combined
    for (std::size_t c = 0; c < comps.size(); ++c) {
        const auto& comp = comps[c];
        if (comp.prime == 2 && comp.exponent >= 3) {
            if (comp.generator == 5) continue;  // handled together with the sign component
            // comps[c] is the sign component, comps[c+1] the 5-component
            u64 eps = exponents_[c];
            u64 x = exponents_[c + 1];
            u64 ord5 = comps[c + 1].order;
            u64 local;
            if (x == 0) {
                local = eps == 0 ? 1 : 4;
            } else {
                u64 m = ord5 / std::gcd(x, ord5);  // order of the 5-part, a power of 2
                unsigned t = 0;
                while ((1ull << t) < m) ++t;
                local = 1ull << (t + 2);
            }
            cond *= local;
        } else if (comp.prime == 2) {
            // modulus 4
            cond *= exponents_[c] == 0 ? 1 : 4;
        } else {
            u64 e = exponents_[c];
            if (e == 0) continue;
            u64 m = comp.order / std::gcd(e, comp.order);  // order of the local character
            u64 pv = 1;
            while (m % comp.prime == 0) { m /= comp.prime; pv *= comp.prime; }
            cond *= pv * comp.prime;  // p^(v+1)
        }
    }
    conductor_ = cond;
    auto a = angle_numerator(-1);
    parity_ = (a && *a != 0) ? 1 : 0;
}

inline CharacterGroup character_group(u64 q, u64 cap = CharacterGroup::kDefaultModulusCap) {
    return CharacterGroup(q, cap);
}

// tau(chi) = sum_{n=1}^{q} chi(n) e(n/q), by direct summation.
inline cdouble gauss_sum(const DirichletCharacter& chi) {
    u64 q = chi.modulus();
    u64 lambda = chi.angle_denominator();
    cdouble acc = 0;
    for (u64 n = 1; n <= q; ++n) {
        auto a = chi.angle_numerator((std::int64_t)n);
        if (!a) continue;
        // chi(n) e(n/q) = e(a/lambda + n/q); combine exactly over denominator lcm
        u64 den = std::lcm(lambda, q);
        u64 num = (mulmod(*a % lambda, den / lambda, den) + mulmod(n % q, den / q, den)) % den;
        acc += unit_root(num, den);
    }
    return acc;
}

// Hyper-Kloosterman sum S_k(v, q): sum over unit k-tuples with product v of
// e((x_1 + ... + x_k)/q). Enumerates k-1 free coordinates, solves the last.
inline cdouble kloosterman_sum(unsigned k, u64 v, u64 q, double cost_cap = 1e7) {
    if (k == 0) throw domain_error("kloosterman_sum: k must be positive");
    if (q == 0) throw domain_error("kloosterman_sum: q must be positive");
    v %= q;
    if (std::gcd(v, q) != 1) throw domain_error("kloosterman_sum: v must be coprime to q");
    u64 phi = euler_phi(q);
    double cost = 1;
    for (unsigned i = 1; i < k; ++i) cost *= (double)phi;
    if (cost > cost_cap) throw resource_error("kloosterman_sum: phi(q)^(k-1) exceeds cost cap");

    std::vector<u64> units;
    units.reserve(phi);
    for (u64 x = 1; x < q; ++x)
        if (std::gcd(x, q) == 1) units.push_back(x);
    if (q == 1) units.push_back(0);

    cdouble acc = 0;
    std::vector<std::size_t> idx(k > 1 ? k - 1 : 0, 0);
    while (true) {
        u64 prod = 1, sum = 0;
        for (std::size_t i = 0; i + 1 < k; ++i) {
            u64 x = units[idx[i]];
            prod = mulmod(prod, x, q);
            sum += x;
        }
        u64 last = mulmod(v, invmod(prod, q), q);
        acc += unit_root((sum + last) % q, q);
        // odometer over the free coordinates
        std::size_t i = 0;
        for (; i < idx.size(); ++i) {
            if (++idx[i] < units.size()) break;
            idx[i] = 0;
        }
        if (i == idx.size()) break;
        if (idx.empty()) break;
    }
    return acc;
}

// sum over all chi mod q of chi(n); must equal phi(q) [n == 1 mod q].
inline std::int64_t orthogonality_sum(u64 q, std::int64_t n) {
    CharacterGroup g(q);
    u64 r = static_cast<u64>(((n % (std::int64_t)q) + (std::int64_t)q) % (std::int64_t)q);
    if (std::gcd(r, q) != 1) throw domain_error("orthogonality_sum: n must be coprime to q");
    cdouble acc = 0;
    for (u64 i = 0; i < g.order(); ++i) acc += g.character(i)((std::int64_t)r);
    return static_cast<std::int64_t>(std::llround(acc.real()));
}

// sum over primitive chi mod q of chi(a), by direct summation; the caller can
// cross-check against the divisor formula sum_{c | (q, a-1)} mu(q/c) phi(c).
inline std::int64_t primitive_orthogonality_sum_direct(const CharacterGroup& g, std::int64_t a) {
    u64 q = g.modulus();
    u64 r = static_cast<u64>(((a % (std::int64_t)q) + (std::int64_t)q) % (std::int64_t)q);
    if (std::gcd(r, q) != 1) throw domain_error("primitive_orthogonality_sum: a must be coprime to q");
    cdouble acc = 0;
    for (u64 i = 0; i < g.order(); ++i) {
        auto chi = g.character(i);
        if (chi.is_primitive()) acc += chi((std::int64_t)r);
    }
    return static_cast<std::int64_t>(std::llround(acc.real()));
}

inline std::int64_t primitive_orthogonality_sum_formula(u64 q, std::int64_t a) {
    u64 r = static_cast<u64>(((a % (std::int64_t)q) + (std::int64_t)q) % (std::int64_t)q);
    if (std::gcd(r, q) != 1) throw domain_error("primitive_orthogonality_sum: a must be coprime to q");
    u64 am1 = (r + q - 1) % q;  // a-1 mod q; gcd(q, a-1) as integers when a in [1, q]
    u64 g = am1 == 0 ? q : std::gcd(q, am1);
    std::int64_t acc = 0;
    for (u64 c : divisors(g)) acc += moebius(q / c) * (std::int64_t)euler_phi(c);
    return acc;
}

inline std::int64_t primitive_orthogonality_sum(u64 q, std::int64_t a) {
    CharacterGroup g(q);
    auto direct = primitive_orthogonality_sum_direct(g, a);
    auto formula = primitive_orthogonality_sum_formula(q, a);
    if (direct != formula) throw domain_error("primitive_orthogonality_sum: direct/formula mismatch");
    return direct;
}

} // namespace dlm
