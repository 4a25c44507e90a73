#include "semigrid/omega.hpp"

#include "semigrid/errors.hpp"

namespace semigrid {

std::pair<Int, Int> pell_pair(const Int& b) {
    if (b < 2) throw NonSquareRequired("base must be at least 2");
    const Int root = sqrt(b);
    if (root * root == b) throw NonSquareRequired("base " + b.str() + " is a square");
    for (Int e = 4;; ++e) {
        const Int d2 = b * e * e + 1;
        const Int d = sqrt(d2);
        if (d * d == d2 && d > 3) return {d, e};
    }
}

OmegaSpec make_omega_spec(const Int& b) {
    const auto [d, e] = pell_pair(b);
    return OmegaSpec{b, d, e};
}

OmegaStream OmegaStream::from_digits(const LaurentDigits& d, std::optional<int> truncation) {
    OmegaStream s;
    s.digits = d;
    s.top = d.is_zero() ? 0 : d.hi();
    // Default depth: far enough below the support that the sign detector can
    // always grow a nonzero residual past its overshoot thresholds.
    s.truncation = truncation.value_or((d.is_zero() ? 0 : d.lo()) - 48);
    if (s.truncation > s.top) s.truncation = s.top;
    return s;
}

OmegaStream omega_reduce(const OmegaSpec& spec, const OmegaStream& s,
                         std::optional<std::size_t> steps) {
    OmegaStream out = s;
    const Int bound = spec.digit_bound();
    std::size_t done = 0;
    while (!steps || done < *steps) {
        // Largest offending exponent first.
        int k = 0;
        Int a;
        bool found = false;
        for (auto it = out.digits.coeffs().rbegin(); it != out.digits.coeffs().rend(); ++it) {
            if (abs(it->second) > bound) {
                k = it->first;
                a = it->second;
                found = true;
                break;
            }
        }
        if (!found) break;
        const Int sgn = a > 0 ? 1 : -1;
        // u^{k+1} - 2d u^k + u^{k-1} has value zero.
        out.digits.add_at(k + 1, sgn);
        out.digits.add_at(k, -2 * spec.d * sgn);
        out.digits.add_at(k - 1, sgn);
        ++done;
    }
    if (!out.digits.is_zero()) out.top = std::max(out.top, out.digits.hi());
    return out;
}

const char* to_string(OmegaVerdict v) {
    switch (v) {
        case OmegaVerdict::DecidedNegative: return "Negative";
        case OmegaVerdict::DecidedZero: return "Zero";
        case OmegaVerdict::DecidedPositive: return "Positive";
        case OmegaVerdict::Undecided: return "UndecidedAtTruncation";
    }
    return "?";
}

OmegaResult omega_sign(const OmegaSpec& spec, const OmegaStream& s) {
    const Int operand_bound = spec.operand_bound();
    for (const auto& [k, a] : s.digits.coeffs())
        if (abs(a) > operand_bound)
            throw OperandBoundExceeded("omega digit " + a.str() + " exceeds 6d = " +
                                       operand_bound.str());

    OmegaResult r;
    const Int cap1 = spec.memory_bound_first();
    const Int cap2 = spec.memory_bound_second();
    Int m1 = 0, m2 = 0;  // (a_{k+2}, a_{k+1}) before reading a_k
    for (int k = s.top; k >= s.truncation; --k) {
        const Int next1 = m2 + 2 * spec.d * m1;
        const Int next2 = s.digits.at(k) - m1;
        if (abs(next1) > cap1 || abs(next2) > cap2) {
            // Overshoot certifies the sign of the old first component.
            r.overshoot_first_component = m1;
            r.verdict = m1 > 0 ? OmegaVerdict::DecidedPositive : OmegaVerdict::DecidedNegative;
            return r;
        }
        m1 = next1;
        m2 = next2;
        ++r.steps;
        r.max_abs_memory_first = std::max(r.max_abs_memory_first, Int(abs(m1)));
        r.max_abs_memory_second = std::max(r.max_abs_memory_second, Int(abs(m2)));
    }
    if (m1 == 0 && m2 == 0) {
        r.verdict = OmegaVerdict::DecidedZero;
        return r;
    }
    r.verdict = OmegaVerdict::Undecided;
    return r;
}

OmegaStream omega_add(const OmegaSpec&, const OmegaStream& s1, const OmegaStream& s2) {
    OmegaStream out;
    out.digits = add_digits(s1.digits, s2.digits);
    out.top = std::max(s1.top, s2.top);
    out.truncation = std::max(s1.truncation, s2.truncation);
    if (!out.digits.is_zero()) out.top = std::max(out.top, out.digits.hi());
    return out;
}

OmegaResult omega_compare(const OmegaSpec& spec, const OmegaStream& s1, const OmegaStream& s2) {
    OmegaStream diff;
    diff.digits = sub_digits(s1.digits, s2.digits);
    diff.top = std::max(s1.top, s2.top);
    diff.truncation = std::min(s1.truncation, s2.truncation);
    if (!diff.digits.is_zero()) diff.top = std::max(diff.top, diff.digits.hi());
    return omega_sign(spec, diff);
}

OmegaStream omega_mul_poly(const OmegaSpec&, const LaurentDigits& poly, const OmegaStream& s) {
    OmegaStream out;
    out.digits = poly_mul_digits(poly, s.digits);
    const int shift_hi = poly.is_zero() ? 0 : poly.hi();
    const int shift_lo = poly.is_zero() ? 0 : poly.lo();
    out.top = s.top + shift_hi;
    out.truncation = s.truncation + shift_lo;
    if (!out.digits.is_zero()) out.top = std::max(out.top, out.digits.hi());
    return out;
}

QuadValue omega_value(const OmegaSpec& spec, const OmegaStream& s) {
    // u^k has integer coordinates in Z[sqrt(b)]: u = d + e sqrt(b),
    // u^{-1} = d - e sqrt(b) since d^2 - b e^2 = 1.
    QuadValue v{0, 0};
    if (s.digits.is_zero()) return v;
    const auto mul = [&](QuadValue x, const QuadValue& y) {
        return QuadValue{x.a * y.a + spec.b * x.c * y.c, x.a * y.c + x.c * y.a};
    };
    const QuadValue u{spec.d, spec.e};
    const QuadValue uinv{spec.d, -spec.e};
    for (const auto& [k, a] : s.digits.coeffs()) {
        QuadValue p{1, 0};
        const QuadValue& base = k >= 0 ? u : uinv;
        for (int i = 0; i < (k >= 0 ? k : -k); ++i) p = mul(p, base);
        v.a += Rat(a) * p.a;
        v.c += Rat(a) * p.c;
    }
    return v;
}

Sign quad_sign(const OmegaSpec& spec, const QuadValue& v) {
    const Sign sa = sign_of_rat(v.a);
    const Sign sc = sign_of_rat(v.c);
    if (sc == Sign::Zero) return sa;
    if (sa == Sign::Zero) return sc;
    if (sa == sc) return sa;
    // Opposite parts: compare a^2 with b*c^2.
    const Rat lhs = v.a * v.a;
    const Rat rhs = Rat(spec.b) * v.c * v.c;
    if (lhs == rhs) return Sign::Zero;
    return (lhs > rhs) == (sa == Sign::Positive) ? Sign::Positive : Sign::Negative;
}

Sign omega_oracle_sign(const OmegaSpec& spec, const OmegaStream& s) {
    return quad_sign(spec, omega_value(spec, s));
}

Rat omega_potential(const OmegaStream& s, const Rat& ut) {
    Rat total = 0;
    for (const auto& [k, a] : s.digits.coeffs()) {
        Rat p = 1;
        const Rat base = k >= 0 ? ut : Rat(1) / ut;
        for (int i = 0; i < (k >= 0 ? k : -k); ++i) p *= base;
        total += Rat(abs(a)) * p;
    }
    return total;
}

}  // namespace semigrid
