#include "semigrid/grid.hpp"

#include <json.hpp>

#include <random>
#include <sstream>

#include "semigrid/errors.hpp"
#include "semigrid/normalize.hpp"
#include "semigrid/oracle.hpp"
#include "semigrid/polynomial.hpp"
#include "semigrid/sign.hpp"

namespace semigrid {

const Int& GridSpec::window_cap(std::size_t offset) const {
    if (window_bounds.empty()) throw InvalidGrid("grid '" + name + "' has no window bounds");
    return window_bounds[std::min(offset, window_bounds.size() - 1)];
}

Int GridSpec::max_window_cap() const {
    Int m = 0;
    for (const Int& c : window_bounds) m = std::max(m, c);
    return m;
}

Int GridSpec::max_abs_p3_coeff() const {
    Int m = 0;
    for (const Int& c : p3) m = std::max(m, Int(abs(c)));
    return m;
}

Int GridSpec::run_cap() const { return (1 + max_abs_p3_coeff()) * max_window_cap(); }

const Int& GridSpec::e_ell() const { return p4.at(ell); }

namespace {

std::vector<Int> ints(std::initializer_list<long long> v) {
    std::vector<Int> out;
    for (long long x : v) out.emplace_back(x);
    return out;
}

// Defining polynomial from p3 with negative powers cleared: p3 * u^{h-1},
// written in ascending order and monic by d_0 = 1.
std::vector<Int> minpoly_from_p3(const std::vector<Int>& p3) {
    std::vector<Int> m(p3.size());
    for (std::size_t i = 0; i < p3.size(); ++i) m[p3.size() - 1 - i] = p3[i];
    return m;
}

GridSpec make_db(int b) {
    if (b < 2) throw ValidationError("D_b requires b >= 2");
    GridSpec g;
    g.name = "d" + std::to_string(b);
    g.p3 = ints({1, -b});
    g.minpoly = minpoly_from_p3(g.p3);
    g.u_lo = Rat(2 * b - 1, 2);
    g.u_hi = Rat(2 * b + 1, 2);
    g.p1 = LaurentDigits{{-1, 1}};
    g.p4 = LaurentDigits{{1, -1}, {0, b}};
    g.ell = 0;
    g.digit_bound = b - 1;
    g.window_bounds = {Int(50) * b, Int(50) * b};
    g.input_bound = 3 * b;
    g.base_b = b;
    return g;
}

GridSpec make_sqrt2half() {
    GridSpec g;
    g.name = "sqrt2half";
    g.p3 = ints({1, -4, 2});
    g.minpoly = minpoly_from_p3(g.p3);  // u^2 - 4u + 2, u = 2 + sqrt(2)
    g.u_lo = Rat(341, 100);
    g.u_hi = Rat(342, 100);
    g.p1 = LaurentDigits{{-1, 2}, {-2, -1}};
    g.p2 = LaurentDigits{{0, 2}, {-1, -2}};
    g.p4 = LaurentDigits{{1, -1}, {0, 4}, {-1, -2}};
    g.ell = 0;
    g.digit_bound = 3;
    g.window_bounds = {100, 100, 100};
    g.input_bound = 12;
    g.base_b = 2;
    g.root = RootSpec{2, 2};
    return g;
}

GridSpec make_sqrtb2m1half(int b) {
    if (b < 2) throw ValidationError("sqrt(b^2-1) grid requires b >= 2");
    const Int b2 = Int(b) * b;
    GridSpec g;
    g.name = b == 2 ? "sqrt3half" : "sqrt" + Int(b2 - 1).str() + "_b" + std::to_string(b);
    g.p3 = {Int(1), -2 * b2, b2};
    g.minpoly = minpoly_from_p3(g.p3);  // u^2 - 2b^2 u + b^2, u = b^2 + b*sqrt(b^2-1)
    g.u_lo = Rat(2 * b2 - 1);
    g.u_hi = Rat(2 * b2);
    g.p1 = LaurentDigits{{-1, 2 * b}, {-2, -b}};
    g.p2 = LaurentDigits{{0, b}, {-1, -b}};
    g.p4 = LaurentDigits{{1, -1}, {0, 2 * b2}, {-1, -b2}};
    g.ell = 0;
    g.digit_bound = 2 * b2 - 1;
    Int chat = 1000;
    for (int i = 0; i < 5; ++i) chat *= b;
    g.window_bounds = {chat, chat, chat};
    g.input_bound = 6 * b2;
    g.base_b = b;
    g.root = RootSpec{2, b2 - 1};
    return g;
}

GridSpec make_cbrt7() {
    GridSpec g;
    g.name = "cbrt7";
    g.p3 = ints({1, -12, 6, -1});
    g.minpoly = minpoly_from_p3(g.p3);  // u^3 - 12u^2 + 6u - 1, 11 < u < 12
    g.u_lo = 11;
    g.u_hi = 12;
    g.p2 = LaurentDigits{{0, 2}, {-1, -1}};
    g.p4 = LaurentDigits{{0, -1}, {-1, 12}, {-2, -6}, {-3, 1}};  // -p3
    g.ell = -1;
    g.digit_bound = 12;
    const Int chat = 360;
    g.window_bounds = {16 * chat, 4 * chat, chat};
    g.input_bound = 36;
    g.root = RootSpec{3, 7};
    return g;
}

GridSpec make_cbrt65half() {
    GridSpec g;
    g.name = "cbrt65half";
    g.p3 = ints({1, -96, -48, -8});
    g.minpoly = minpoly_from_p3(g.p3);  // u^3 - 96u^2 - 48u - 8, 96.49 <= u <= 96.50
    g.u_lo = Rat(9649, 100);
    g.u_hi = Rat(9650, 100);
    g.p1 = LaurentDigits{{-1, 48}, {-2, 24}, {-3, 4}};
    g.p2 = LaurentDigits{{0, 4}, {-1, 2}};
    g.p4 = LaurentDigits{{0, -1}, {-1, 96}, {-2, 48}, {-3, 8}};  // -p3
    g.ell = -1;
    g.digit_bound = 95;
    const Int chat = 285000;
    g.window_bounds = {19 * chat, 7 * chat, chat};
    g.input_bound = 285;
    g.base_b = 2;
    g.root = RootSpec{3, 65};
    return g;
}

LaurentDigits p3_digits(const GridSpec& g) {
    LaurentDigits d;
    for (std::size_t i = 0; i < g.p3.size(); ++i) d.set(-static_cast<int>(i), g.p3[i]);
    return d;
}

LaurentDigits power_digits(const LaurentDigits& base, int power) {
    LaurentDigits acc = LaurentDigits::integer(1);
    for (int i = 0; i < power; ++i) acc = poly_mul_digits(acc, base);
    return acc;
}

}  // namespace

GridSpec make_grid(const GridKind& kind) {
    GridSpec g = std::visit(
        [](const auto& k) -> GridSpec {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, Db>) return make_db(k.b);
            if constexpr (std::is_same_v<T, Sqrt2Half>) return make_sqrt2half();
            if constexpr (std::is_same_v<T, SqrtB2m1Half>) return make_sqrtb2m1half(k.b);
            if constexpr (std::is_same_v<T, Cbrt7>) return make_cbrt7();
            if constexpr (std::is_same_v<T, Cbrt65Half>) return make_cbrt65half();
        },
        kind);
    const ValidationReport report = validate_grid(g);
    if (!report.ok()) {
        for (const auto& c : report.checks)
            if (!c.passed)
                throw ValidationError("grid '" + g.name + "' failed check '" + c.name +
                                      "': " + c.detail);
        throw ValidationError("grid '" + g.name + "' failed validation");
    }
    return g;
}

std::vector<GridSpec> shipped_grids() {
    std::vector<GridSpec> out;
    out.push_back(make_grid(Db{10}));
    out.push_back(make_grid(Sqrt2Half{}));
    out.push_back(make_grid(SqrtB2m1Half{2}));
    out.push_back(make_grid(Cbrt7{}));
    out.push_back(make_grid(Cbrt65Half{}));
    return out;
}

GridSpec grid_by_name(const std::string& name) {
    if (name == "sqrt2half") return make_grid(Sqrt2Half{});
    if (name == "sqrt3half") return make_grid(SqrtB2m1Half{2});
    if (name == "cbrt7") return make_grid(Cbrt7{});
    if (name == "cbrt65half") return make_grid(Cbrt65Half{});
    if (name.size() > 1 && name[0] == 'd') {
        try {
            const int b = std::stoi(name.substr(1));
            return make_grid(Db{b});
        } catch (const std::logic_error&) {
        }
    }
    throw ValidationError("unknown grid '" + name + "'");
}

bool ValidationReport::ok() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return fuzz_failures == 0;
}

namespace {

void check(ValidationReport& r, const std::string& name, bool passed,
           const std::string& detail = "") {
    r.checks.push_back({name, passed, detail});
}

// Fuzz of the overshoot condition: run the sign algorithm on random in-bound
// vectors and verify, whenever a window entry leaves its cap, that the
// window's value dominates the largest possible unread tail
// u^{k-h}/(1-u^{-1}) * B.  Exact via the oracle; empirical, not a proof.
void fuzz_termination(const GridSpec& g, ValidationReport& r, std::size_t trials) {
    std::mt19937_64 rng(0x5eed0001);
    const std::int64_t bound = to_int64_checked(g.input_bound, "input bound");
    std::uniform_int_distribution<std::int64_t> digit(-bound, bound);
    std::uniform_int_distribution<int> support(2, 10);
    std::uniform_int_distribution<int> mode(0, 2);
    const Int tail_scale = std::max(Int(3 * abs(g.e_ell())), g.input_bound);
    for (std::size_t t = 0; t < trials; ++t) {
        LaurentDigits p;
        const int len = support(rng);
        const int m = mode(rng);
        for (int i = 0; i < len; ++i) {
            std::int64_t v = digit(rng);
            if (m == 1) v = bound;  // adversarial same-sign runs overshoot fast
            if (m == 2) v = -bound;
            p.set(len / 2 - i, v);
        }
        SignRunInfo info;
        const Sign s = sign_of(g, p, &info);
        ++r.fuzz_trials;
        if (s != sign_at(g, p)) {
            ++r.fuzz_failures;
            continue;
        }
        if (!info.overshoot) continue;
        ++r.fuzz_overshoots;
        const OvershootEvent& ev = *info.overshoot;
        // |W(u)| * (1 - u^{-1}) > u^{k-h} * B, checked as an exact sign.
        const LaurentDigits one_minus_uinv{{0, 1}, {-1, -1}};
        LaurentDigits lhs = poly_mul_digits(ev.window, one_minus_uinv);
        if (ev.window_sign == Sign::Negative) lhs = negate_digits(lhs);
        LaurentDigits rhs;
        rhs.set(ev.position - g.h(), tail_scale);
        if (sign_at(g, sub_digits(lhs, rhs)) != Sign::Positive) ++r.fuzz_failures;
    }
}

}  // namespace

ValidationReport validate_grid(const GridSpec& g) {
    ValidationReport r;
    try {
        check(r, "p3-nonempty", g.h() >= 2, "p3 needs at least two coefficients");
        if (g.h() < 2) return r;
        check(r, "p3-monic", g.p3[0] == 1, "d_0 must equal 1");

        Int off_sum = 0;
        for (const auto& [k, e] : g.p4.coeffs())
            if (k != g.ell) off_sum += abs(e);
        check(r, "p4-dominance", g.e_ell() > off_sum,
              "e_ell = " + g.e_ell().str() + " vs sum of others " + off_sum.str());

        check(r, "digit-bound-positive", g.digit_bound >= 1, "");
        check(r, "input-bound-covers-three-operands", g.input_bound >= 3 * g.digit_bound,
              "three normal-form operands must stay within the input bound");
        check(r, "window-caps-present", !g.window_bounds.empty(), "");
        if (g.window_bounds.empty()) return r;
        Int min_cap = g.window_bounds[0];
        bool nonincreasing = true;
        for (std::size_t i = 0; i < g.window_bounds.size(); ++i) {
            min_cap = std::min(min_cap, g.window_bounds[i]);
            if (i > 0 && g.window_bounds[i] > g.window_bounds[i - 1]) nonincreasing = false;
        }
        check(r, "window-caps-nonincreasing", nonincreasing,
              "caps must not grow with the window offset");
        check(r, "window-caps-exceed-operands", min_cap > 3 * abs(g.e_ell()),
              "the smallest cap must exceed 3|e_ell|");
        check(r, "window-caps-cover-input", min_cap >= g.input_bound, "");

        // Interval sanity: monic minpoly, bracketing, isolation, u > 1.
        IPoly m;
        m.c = g.minpoly;
        m.trim();
        check(r, "minpoly-monic", !m.is_zero() && m.c.back() == 1, "");
        check(r, "interval-above-one", g.u_lo > 1 && g.u_lo < g.u_hi, "");
        if (m.is_zero() || m.c.back() != 1 || !(g.u_lo > 1) || !(g.u_lo < g.u_hi)) return r;
        const Rat flo = m.eval(g.u_lo);
        const Rat fhi = m.eval(g.u_hi);
        check(r, "interval-brackets", (flo < 0 && fhi > 0) || (flo > 0 && fhi < 0) ||
                                          flo == 0 || fhi == 0,
              "minpoly must change sign across the interval");
        const int roots = sturm_count(rpoly_squarefree(to_rpoly(m)), g.u_lo, g.u_hi);
        check(r, "interval-isolates", roots == 1,
              "interval contains " + std::to_string(roots) + " roots");
        if (!r.ok()) return r;

        // Oracle checks of the defining identities.
        check(r, "p3-zero", sign_at(g, p3_digits(g)) == Sign::Zero, "p3(u) != 0");
        check(r, "p4-zero", sign_at(g, g.p4) == Sign::Zero, "p4(u) != 0");
        if (g.p1.has_value()) {
            check(r, "p1-has-base", g.base_b.has_value(), "p1 requires b");
            if (g.base_b) {
                const LaurentDigits lhs =
                    sub_digits(scale_digits(*g.p1, *g.base_b), LaurentDigits::integer(1));
                check(r, "p1-value", sign_at(g, lhs) == Sign::Zero, "b * p1(u) != 1");
            }
        }
        if (g.p2.has_value()) {
            check(r, "p2-has-root", g.root.has_value(), "p2 requires root semantics");
            if (g.root) {
                const LaurentDigits lhs = sub_digits(power_digits(*g.p2, g.root->power),
                                                     LaurentDigits::integer(g.root->radicand));
                check(r, "p2-value", sign_at(g, lhs) == Sign::Zero,
                      "p2(u)^" + std::to_string(g.root->power) + " != radicand");
            }
        }
        if (!r.ok()) return r;

        fuzz_termination(g, r, 300);
        check(r, "fuzz-termination", r.fuzz_failures == 0,
              std::to_string(r.fuzz_failures) + " of " + std::to_string(r.fuzz_trials) +
                  " trials failed (" + std::to_string(r.fuzz_overshoots) + " overshoots)");
    } catch (const Error& e) {
        check(r, "exception", false, e.what());
    }
    return r;
}

LaurentDigits const_digits(const GridSpec& g, const GridConstant& which) {
    return std::visit(
        [&](const auto& c) -> LaurentDigits {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, ConstOne>) {
                return LaurentDigits::integer(1);
            } else if constexpr (std::is_same_v<T, ConstIntegerN>) {
                return normalize(g, LaurentDigits::integer(c.n));
            } else if constexpr (std::is_same_v<T, ConstInvB>) {
                if (!g.p1) throw UnsupportedConstant("grid '" + g.name + "' has no 1/b");
                return normalize(g, *g.p1);
            } else if constexpr (std::is_same_v<T, ConstC>) {
                if (!g.p2) throw UnsupportedConstant("grid '" + g.name + "' has no constant c");
                return normalize(g, *g.p2);
            } else {
                // 1/2 = (b/2) * (1/b) whenever b is even.
                if (!g.p1 || !g.base_b || *g.base_b % 2 != 0)
                    throw UnsupportedConstant("grid '" + g.name + "' cannot represent 1/2");
                return normalize(g, scale_digits(*g.p1, *g.base_b / 2));
            }
        },
        which);
}

// ---------------------------------------------------------------------------
// JSON

namespace {

using nlohmann::json;

Int json_to_int(const json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw ValidationError("expected integer or integer string in grid JSON");
}

Rat json_to_rat(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(Int(s));
        return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    }
    throw ValidationError("expected rational as integer or \"p/q\" string");
}

LaurentDigits json_to_digits(const json& j) {
    LaurentDigits d;
    for (const auto& [key, value] : j.items())
        d.set(std::stoi(key), json_to_int(value));
    return d;
}

json digits_to_json(const LaurentDigits& d) {
    json j = json::object();
    for (const auto& [k, a] : d.coeffs()) j[std::to_string(k)] = a.str();
    return j;
}

std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
}

}  // namespace

GridSpec grid_from_json(const std::string& json_text) {
    json j = json::parse(json_text);
    GridSpec g;
    g.name = j.at("name").get<std::string>();
    for (const auto& c : j.at("minpoly")) g.minpoly.push_back(json_to_int(c));
    g.u_lo = json_to_rat(j.at("u_interval").at(0));
    g.u_hi = json_to_rat(j.at("u_interval").at(1));
    if (j.contains("p1")) g.p1 = json_to_digits(j.at("p1"));
    if (j.contains("p2")) g.p2 = json_to_digits(j.at("p2"));
    for (const auto& c : j.at("p3")) g.p3.push_back(json_to_int(c));
    g.p4 = json_to_digits(j.at("p4"));
    g.ell = j.at("ell").get<int>();
    g.digit_bound = json_to_int(j.at("digit_bound"));
    for (const auto& c : j.at("window_bounds")) g.window_bounds.push_back(json_to_int(c));
    g.input_bound = json_to_int(j.at("input_bound"));
    if (j.contains("b")) g.base_b = json_to_int(j.at("b"));
    if (j.contains("root"))
        g.root = RootSpec{j.at("root").at("power").get<int>(),
                          json_to_int(j.at("root").at("radicand"))};
    return g;
}

std::string grid_to_json(const GridSpec& g) {
    json j;
    j["name"] = g.name;
    j["minpoly"] = json::array();
    for (const Int& c : g.minpoly) j["minpoly"].push_back(c.str());
    j["u_interval"] = {rat_to_string(g.u_lo), rat_to_string(g.u_hi)};
    if (g.p1) j["p1"] = digits_to_json(*g.p1);
    if (g.p2) j["p2"] = digits_to_json(*g.p2);
    j["p3"] = json::array();
    for (const Int& c : g.p3) j["p3"].push_back(c.str());
    j["p4"] = digits_to_json(g.p4);
    j["ell"] = g.ell;
    j["digit_bound"] = g.digit_bound.str();
    j["window_bounds"] = json::array();
    for (const Int& c : g.window_bounds) j["window_bounds"].push_back(c.str());
    j["input_bound"] = g.input_bound.str();
    if (g.base_b) j["b"] = g.base_b->str();
    if (g.root) j["root"] = {{"power", g.root->power}, {"radicand", g.root->radicand.str()}};
    return j.dump(2);
}

}  // namespace semigrid
