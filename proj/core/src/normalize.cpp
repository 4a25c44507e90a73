#include "semigrid/normalize.hpp"

#include <cassert>

#include "semigrid/errors.hpp"

namespace semigrid {

namespace {

// Highest exponent whose digit exceeds the bound, or nullopt.
std::optional<int> highest_offender(const GridSpec& g, const LaurentDigits& p) {
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
        if (abs(it->second) > g.digit_bound) return it->first;
    }
    return std::nullopt;
}

}  // namespace

LaurentDigits normalize(const GridSpec& g, const LaurentDigits& p, NormalizeTrace* trace) {
    LaurentDigits q = p;
    Int norm = one_norm(q);
    if (trace) trace->norms.push_back(norm);
    while (auto k = highest_offender(g, q)) {
        const bool positive = q.at(*k) > 0;
        // q -= p4 * u^{k-ell} when the offending digit is positive, += otherwise.
        for (const auto& [j, e] : g.p4.coeffs()) {
            const int pos = j - g.ell + *k;
            q.add_at(pos, positive ? -e : e);
        }
        const Int next_norm = one_norm(q);
        // Dominance of e_ell makes each step shed at least
        // e_ell - sum_{k != ell} |e_k| > 0 from the 1-norm.
        assert(next_norm < norm);
        if (next_norm >= norm) throw ValidationError("normalization failed to reduce the 1-norm");
        norm = next_norm;
        if (trace) {
            ++trace->steps;
            trace->norms.push_back(norm);
        }
    }
    return q;
}

bool is_normal_form(const GridSpec& g, const LaurentDigits& p) {
    return max_abs_digit(p) <= g.digit_bound;
}

}  // namespace semigrid
