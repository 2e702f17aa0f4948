#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "dlm/errors.hpp"

namespace dlm {

// The shift/exponent tuples (t_1..t_k), (a_1..a_k) with the bound exponent A.
struct ShiftSpec {
    std::vector<double> t;
    std::vector<double> a;
    double A = 1.0;

    ShiftSpec(std::vector<double> t_, std::vector<double> a_, double A_ = 1.0)
        : t(std::move(t_)), a(std::move(a_)), A(A_) {
        if (t.empty() || t.size() != a.size()) throw domain_error("ShiftSpec: t and a must be nonempty, equal length");
        if (A <= 0) throw domain_error("ShiftSpec: A must be positive");
        for (double aj : a)
            if (!(aj > 0)) throw domain_error("ShiftSpec: exponents a_j must be positive");
    }

    std::size_t k() const { return t.size(); }

    // a* = sum_j max(1, a_j)
    double a_star() const {
        double s = 0;
        for (double aj : a) s += std::max(1.0, aj);
        return s;
    }

    double a_total() const {
        double s = 0;
        for (double aj : a) s += aj;
        return s;
    }

    // |t_j| <= q^A for all j
    bool shifts_admissible(double q) const {
        double bound = std::pow(q, A);
        return std::all_of(t.begin(), t.end(), [&](double tj) { return std::abs(tj) <= bound; });
    }
};

} // namespace dlm
