#include "semigrid/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace semigrid {

void IPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Int IPoly::eval_int(const Int& x) const {
    Int acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Rat IPoly::eval(const Rat& x) const {
    Rat acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

void RPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Rat RPoly::eval(const Rat& x) const {
    Rat acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

IPoly ipoly_from_digits(const LaurentDigits& p, int shift) {
    IPoly out;
    if (p.is_zero()) return out;
    if (p.lo() + shift < 0) throw std::invalid_argument("shift does not clear negative exponents");
    out.c.assign(static_cast<std::size_t>(p.hi() + shift) + 1, Int(0));
    for (const auto& [k, a] : p.coeffs()) out.c[static_cast<std::size_t>(k + shift)] = a;
    return out;
}

IPoly rem_monic(IPoly a, const IPoly& m) {
    assert(!m.is_zero() && m.c.back() == 1);
    const int dm = m.degree();
    a.trim();
    while (a.degree() >= dm) {
        const Int q = a.c.back();
        const std::size_t off = a.c.size() - 1 - static_cast<std::size_t>(dm);
        for (int i = 0; i <= dm; ++i) a.c[off + static_cast<std::size_t>(i)] -= q * m.c[static_cast<std::size_t>(i)];
        a.trim();
    }
    return a;
}

RPoly to_rpoly(const IPoly& p) {
    RPoly out;
    out.c.reserve(p.c.size());
    for (const auto& v : p.c) out.c.emplace_back(v);
    return out;
}

RPoly rpoly_rem(const RPoly& a, const RPoly& b) {
    assert(!b.is_zero());
    RPoly r = a;
    r.trim();
    const int db = b.degree();
    const Rat lead = b.c.back();
    while (!r.is_zero() && r.degree() >= db) {
        const Rat q = r.c.back() / lead;
        const std::size_t off = r.c.size() - 1 - static_cast<std::size_t>(db);
        for (int i = 0; i <= db; ++i) r.c[off + static_cast<std::size_t>(i)] -= q * b.c[static_cast<std::size_t>(i)];
        r.trim();
    }
    return r;
}

RPoly rpoly_neg_rem(const RPoly& a, const RPoly& b) {
    RPoly r = rpoly_rem(a, b);
    for (auto& v : r.c) v = -v;
    return r;
}

RPoly rpoly_gcd(RPoly a, RPoly b) {
    a.trim();
    b.trim();
    while (!b.is_zero()) {
        RPoly r = rpoly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) {
        const Rat lead = a.c.back();
        for (auto& v : a.c) v /= lead;
    }
    return a;
}

RPoly rpoly_derivative(const RPoly& p) {
    RPoly out;
    for (std::size_t i = 1; i < p.c.size(); ++i) out.c.push_back(p.c[i] * Int(i));
    out.trim();
    return out;
}

RPoly rpoly_squarefree(const RPoly& p) {
    if (p.is_zero() || p.degree() <= 1) return p;
    RPoly g = rpoly_gcd(p, rpoly_derivative(p));
    if (g.degree() <= 0) return p;
    // Divide p by g exactly.
    RPoly q;
    RPoly r = p;
    r.trim();
    const int dg = g.degree();
    q.c.assign(static_cast<std::size_t>(r.degree() - dg) + 1, Rat(0));
    while (!r.is_zero() && r.degree() >= dg) {
        const Rat f = r.c.back() / g.c.back();
        const std::size_t pos = static_cast<std::size_t>(r.degree() - dg);
        q.c[pos] = f;
        for (int i = 0; i <= dg; ++i) r.c[pos + static_cast<std::size_t>(i)] -= f * g.c[static_cast<std::size_t>(i)];
        r.trim();
    }
    q.trim();
    return q;
}

namespace {

int sign_changes(const std::vector<RPoly>& chain, const Rat& x) {
    int changes = 0;
    int last = 0;
    for (const auto& p : chain) {
        const Rat v = p.eval(x);
        const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

}  // namespace

int sturm_count(const RPoly& p, const Rat& lo, const Rat& hi) {
    if (p.is_zero()) return 0;
    std::vector<RPoly> chain;
    chain.push_back(p);
    RPoly d = rpoly_derivative(p);
    if (!d.is_zero()) {
        chain.push_back(d);
        while (true) {
            const RPoly& a = chain[chain.size() - 2];
            const RPoly& b = chain.back();
            RPoly r = rpoly_neg_rem(a, b);
            if (r.is_zero()) break;
            chain.push_back(std::move(r));
        }
    }
    return sign_changes(chain, lo) - sign_changes(chain, hi);
}

RatInterval ipoly_range_on_positive(const IPoly& p, const Rat& lo, const Rat& hi) {
    assert(lo > 0 && lo <= hi);
    RatInterval out{0, 0};
    Rat plo = 1, phi = 1;  // lo^i, hi^i
    for (std::size_t i = 0; i < p.c.size(); ++i) {
        if (i > 0) {
            plo *= lo;
            phi *= hi;
        }
        const Int& a = p.c[i];
        if (a > 0) {
            out.lo += a * plo;
            out.hi += a * phi;
        } else if (a < 0) {
            out.lo += a * phi;
            out.hi += a * plo;
        }
    }
    return out;
}

}  // namespace semigrid
