#include "semigrid/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

#include "semigrid/errors.hpp"
#include "semigrid/mulconst.hpp"
#include "semigrid/normalize.hpp"

namespace semigrid {

Point make_point(const GridSpec& g, LaurentDigits x, LaurentDigits y) {
    return Point{normalize(g, x), normalize(g, y)};
}

AxisRect make_axis_rect(const GridSpec& g, Point ll, Point ur) {
    if (compare(g, ll.x, ur.x) != Ordering::Less || compare(g, ll.y, ur.y) != Ordering::Less)
        throw ValidationError("axis rectangle requires ll.x < ur.x and ll.y < ur.y");
    return AxisRect{std::move(ll), std::move(ur)};
}

Point translate(const GridSpec& g, const Point& p, const Point& v) {
    return make_point(g, add_digits(p.x, v.x), add_digits(p.y, v.y));
}

namespace {

struct RotationConstants {
    LaurentDigits cos_, sin_;
};

// cos/sin digits for the base angle, or the name of what the grid lacks.
RotationConstants rotation_constants(const GridSpec& g, int base_angle) {
    const auto require = [&](bool ok, const char* missing) {
        if (!ok)
            throw UnsupportedRotation("grid '" + g.name + "' does not contain " + missing +
                                      ", required for " + std::to_string(base_angle) +
                                      "-degree rotations");
    };
    if (base_angle == 45) {
        // cos45 = sin45 = sqrt(2)/2 = c * (1/b) with c = sqrt(2), b = 2.
        require(g.root && g.root->power == 2 && g.root->radicand == 2, "sqrt(2)");
        require(g.p1 && g.base_b && *g.base_b == 2, "1/2");
        const LaurentDigits c = mul_by_poly(g, *g.p2, *g.p1);
        return {c, c};
    }
    // 30/60 need sqrt(3)/2 and 1/2.
    require(g.root && g.root->power == 2 && g.root->radicand == 3, "sqrt(3)");
    require(g.p1 && g.base_b && *g.base_b == 2, "1/2");
    const LaurentDigits cos30 = mul_by_poly(g, *g.p2, *g.p1);
    const LaurentDigits half = const_digits(g, ConstHalf{});
    if (base_angle == 30) return {cos30, half};
    return {half, cos30};  // 60 degrees
}

Point rotate_with(const GridSpec& g, const Point& p, const RotationConstants& rc) {
    LaurentDigits x = sub_digits(mul_by_poly(g, rc.cos_, p.x), mul_by_poly(g, rc.sin_, p.y));
    LaurentDigits y = add_digits(mul_by_poly(g, rc.sin_, p.x), mul_by_poly(g, rc.cos_, p.y));
    return make_point(g, std::move(x), std::move(y));
}

Point quarter_turn(const GridSpec& g, const Point& p) {
    return make_point(g, negate_digits(p.y), p.x);
}

}  // namespace

Point rotate(const GridSpec& g, const Point& p, int angle_degrees) {
    int a = angle_degrees % 360;
    if (a < 0) a += 360;
    Point out = p;
    if (a % 30 == 0) {
        const int residual = a % 90;  // 0, 30 or 60
        if (residual != 0) out = rotate_with(g, out, rotation_constants(g, residual));
        for (int i = 0; i < a / 90; ++i) out = quarter_turn(g, out);
        return out;
    }
    if (a % 45 == 0) {
        out = rotate_with(g, out, rotation_constants(g, 45));
        for (int i = 0; i < a / 90; ++i) out = quarter_turn(g, out);
        return out;
    }
    throw UnsupportedRotation("angle " + std::to_string(angle_degrees) +
                              " is not a multiple of 30 or 45 degrees");
}

Sign side_sign(const GridSpec& g, const Point& a, const Point& b, const Point& q) {
    const LaurentDigits dx = normalize(g, sub_digits(b.x, a.x));
    const LaurentDigits dy = normalize(g, sub_digits(b.y, a.y));
    const LaurentDigits t1 = mul_by_grid_constant(g, dx, sub_digits(q.y, a.y));
    const LaurentDigits t2 = mul_by_grid_constant(g, dy, sub_digits(q.x, a.x));
    return sign_of(g, sub_digits(t1, t2));
}

namespace {

struct OrientedSide {
    LaurentDigits alpha, beta, gamma;  // f(v, w) = alpha*v + beta*w + gamma, >= 0 inside
};

OrientedSide oriented_side(const GridSpec& g, const Point& p, const Point& q,
                           const Point& opposite) {
    const Sign s = side_sign(g, p, q, opposite);
    if (s == Sign::Zero) throw DegenerateTriangle("side functional vanishes at the opposite vertex");
    const LaurentDigits dx = normalize(g, sub_digits(q.x, p.x));
    const LaurentDigits dy = normalize(g, sub_digits(q.y, p.y));
    OrientedSide side;
    side.alpha = negate_digits(dy);
    side.beta = dx;
    side.gamma = normalize(g, sub_digits(poly_mul_digits(p.x, dy), poly_mul_digits(p.y, dx)));
    if (s == Sign::Negative) {
        side.alpha = negate_digits(side.alpha);
        side.beta = negate_digits(side.beta);
        side.gamma = negate_digits(side.gamma);
    }
    return side;
}

std::array<OrientedSide, 3> oriented_sides(const GridSpec& g, const Triangle& t) {
    return {oriented_side(g, t.a, t.b, t.c), oriented_side(g, t.b, t.c, t.a),
            oriented_side(g, t.c, t.a, t.b)};
}

Sign oriented_value_sign(const GridSpec& g, const OrientedSide& s, const Point& q) {
    const LaurentDigits t1 = mul_by_grid_constant(g, s.alpha, q.x);
    const LaurentDigits t2 = mul_by_grid_constant(g, s.beta, q.y);
    return sign_of(g, add_digits(add_digits(t1, t2), s.gamma));
}

}  // namespace

bool triangle_contains(const GridSpec& g, const Triangle& t, const Point& q) {
    for (const OrientedSide& s : oriented_sides(g, t))
        if (oriented_value_sign(g, s, q) == Sign::Negative) return false;
    return true;
}

bool convex_polygon_contains(const GridSpec& g, const std::vector<Point>& vertices,
                             const Point& q) {
    const std::size_t n = vertices.size();
    if (n < 3) throw NotConvex("a convex polygon needs at least three vertices");
    Sign orientation = Sign::Zero;
    for (std::size_t i = 0; i < n; ++i) {
        const Sign s = side_sign(g, vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
        if (s == Sign::Zero) throw NotConvex("three consecutive vertices are collinear");
        if (orientation == Sign::Zero) orientation = s;
        if (s != orientation) throw NotConvex("vertices are not consistently oriented");
    }
    for (std::size_t i = 0; i < n; ++i) {
        Sign s = side_sign(g, vertices[i], vertices[(i + 1) % n], q);
        if (orientation == Sign::Negative) s = opposite(s);
        if (s == Sign::Negative) return false;
    }
    return true;
}

Point equilateral_third(const GridSpec& g, const Point& a, const Point& b,
                        EquilateralSide side) {
    if (!(g.root && g.root->power == 2 && g.root->radicand == 3))
        throw UnsupportedConstant("grid '" + g.name + "' does not contain sqrt(3)");
    if (equal(g, a.x, b.x) && equal(g, a.y, b.y))
        throw CoincidentPoints("equilateral third vertex needs two distinct base points");
    const LaurentDigits half = const_digits(g, ConstHalf{});
    const LaurentDigits sqrt3half = mul_by_poly(g, *g.p2, *g.p1);
    // ((x+x')/2 + (y-y')*sqrt(3)/2, (y+y')/2 + (x'-x)*sqrt(3)/2) on the plus
    // side; the minus side negates the sqrt(3)/2 terms.
    LaurentDigits sx = mul_by_poly(g, sqrt3half, sub_digits(a.y, b.y));
    LaurentDigits sy = mul_by_poly(g, sqrt3half, sub_digits(b.x, a.x));
    if (side == EquilateralSide::Minus) {
        sx = negate_digits(sx);
        sy = negate_digits(sy);
    }
    const LaurentDigits mx = mul_by_poly(g, half, add_digits(a.x, b.x));
    const LaurentDigits my = mul_by_poly(g, half, add_digits(a.y, b.y));
    return make_point(g, add_digits(mx, sx), add_digits(my, sy));
}

// ---------------------------------------------------------------------------
// Region automaton

struct RegionAutomaton::Run {
    std::array<SignMachine::State, 3> side;
    std::vector<std::int64_t> bufv, bufw;  // buf[j] = digit at (read position + j)
    int emit_pos = 0;

    bool operator==(const Run&) const = default;
};

RegionAutomaton::RegionAutomaton(const GridSpec& g, const Triangle& t, std::int64_t radius)
    : grid_(g) {
    const std::int64_t r =
        radius > 0 ? radius : to_int64_checked(g.digit_bound, "digit bound");
    alphabet_.tracks = {TrackAlphabet::digits(r), TrackAlphabet::digits(r)};

    const std::array<OrientedSide, 3> sides = oriented_sides(g, t);
    Int stream_bound = 0;
    gamma_hi_ = 0;
    gamma_lo_ = 1;  // empty span until a nonzero gamma appears
    for (int i = 0; i < 3; ++i) {
        alpha_[i] = sides[i].alpha;
        beta_[i] = sides[i].beta;
        gamma_[i] = sides[i].gamma;
        Int side_bound = (one_norm(alpha_[i]) + one_norm(beta_[i])) * r + max_abs_digit(gamma_[i]);
        stream_bound = std::max(stream_bound, side_bound);
        for (const LaurentDigits* c : {&alpha_[i], &beta_[i]}) {
            if (c->is_zero()) continue;
            emit_lead_ = std::max(emit_lead_, c->hi());
            min_coeff_lo_ = std::min(min_coeff_lo_, c->lo());
        }
        if (!gamma_[i].is_zero()) {
            if (gamma_lo_ > gamma_hi_) {
                gamma_hi_ = gamma_[i].hi();
                gamma_lo_ = gamma_[i].lo();
            } else {
                gamma_hi_ = std::max(gamma_hi_, gamma_[i].hi());
                gamma_lo_ = std::min(gamma_lo_, gamma_[i].lo());
            }
        }
    }
    if (gamma_lo_ > gamma_hi_) {
        gamma_hi_ = 0;
        gamma_lo_ = 1;
    }
    buffer_len_ = static_cast<std::size_t>(emit_lead_ - min_coeff_lo_) + 1;
    machine_ = std::make_unique<SignMachine>(g, to_int64_checked(stream_bound, "stream bound"));
}

int RegionAutomaton::min_top() const { return gamma_hi_ - emit_lead_; }

namespace {

void shift_buffer(std::vector<std::int64_t>& buf, std::int64_t incoming) {
    for (std::size_t j = buf.size(); j-- > 1;) buf[j] = buf[j - 1];
    buf[0] = incoming;
}

}  // namespace

bool RegionAutomaton::contains_word(const ConvWord& w) const {
    Run run;
    run.bufv.assign(buffer_len_, 0);
    run.bufw.assign(buffer_len_, 0);
    for (auto& s : run.side) s = machine_->initial_state();

    const int word_top = w.symbols.empty() ? min_top() : w.top;
    const int virtual_top = std::max(word_top, min_top());
    run.emit_pos = virtual_top + emit_lead_;

    const auto step = [&](std::int64_t dv, std::int64_t dw) {
        shift_buffer(run.bufv, dv);
        shift_buffer(run.bufw, dw);
        for (int i = 0; i < 3; ++i) {
            std::int64_t c = to_int64_checked(gamma_[i].at(run.emit_pos), "gamma digit");
            for (const auto& [j, a] : alpha_[i].coeffs())
                c += to_int64_checked(a, "alpha") * run.bufv[static_cast<std::size_t>(emit_lead_ - j)];
            for (const auto& [j, a] : beta_[i].coeffs())
                c += to_int64_checked(a, "beta") * run.bufw[static_cast<std::size_t>(emit_lead_ - j)];
            run.side[static_cast<std::size_t>(i)] =
                machine_->step(run.side[static_cast<std::size_t>(i)], c);
        }
        --run.emit_pos;
    };

    for (int i = 0; i < virtual_top - word_top; ++i) step(0, 0);
    for (const auto& sym : w.symbols) {
        if (sym.size() != 2) throw AlphabetMismatch("region words carry two tracks");
        step(sym[0].value_or(0), sym[1].value_or(0));
    }
    // Flush the buffered digits and the remaining inhomogeneous tail.
    for (std::size_t t = 0; t + 1 < buffer_len_ || run.emit_pos >= gamma_lo_; ++t) step(0, 0);
    for (const auto& s : run.side)
        if (machine_->finish(s) == Sign::Negative) return false;
    return true;
}

bool RegionAutomaton::contains_point(const Point& p) const {
    return contains_word(convolve({p.x, p.y}));
}

// Materialization at a fixed top alignment; the emit position is part of the
// state, clamped once it drops below every gamma exponent.
struct RegionMaterializer final : LazyDfa {
    const RegionAutomaton& region;
    int top;
    std::vector<RegionAutomaton::Run> nodes;
    struct RunHash {
        std::size_t operator()(const RegionAutomaton::Run& r) const {
            std::size_t seed = static_cast<std::size_t>(r.emit_pos) * 0x9e3779b97f4a7c15ULL;
            for (const auto& s : r.side) seed ^= SignMachine::StateHash{}(s) + (seed << 6);
            for (std::int64_t v : r.bufv)
                seed ^= static_cast<std::size_t>(v) + 0x9e3779b9ULL + (seed << 6) + (seed >> 2);
            for (std::int64_t v : r.bufw)
                seed ^= static_cast<std::size_t>(v) + 0x85ebca6bULL + (seed << 6) + (seed >> 2);
            return seed;
        }
    };
    std::unordered_map<RegionAutomaton::Run, std::size_t, RunHash> index;

    RegionMaterializer(const RegionAutomaton& r, int top_) : region(r), top(top_) {}

    const Alphabet& alphabet() const override { return region.alphabet_; }
    SyncDFA::LabelKind label_kind() const override { return SyncDFA::LabelKind::Acceptor; }

    std::size_t intern(RegionAutomaton::Run run) {
        run.emit_pos = std::max(run.emit_pos, region.gamma_lo_ - 1);
        auto it = index.find(run);
        if (it != index.end()) return it->second;
        nodes.push_back(run);
        index.emplace(std::move(run), nodes.size() - 1);
        return nodes.size() - 1;
    }

    RegionAutomaton::Run advance(RegionAutomaton::Run run, std::int64_t dv,
                                 std::int64_t dw) const {
        shift_buffer(run.bufv, dv);
        shift_buffer(run.bufw, dw);
        for (int i = 0; i < 3; ++i) {
            std::int64_t c = to_int64_checked(region.gamma_[i].at(run.emit_pos), "gamma digit");
            for (const auto& [j, a] : region.alpha_[i].coeffs())
                c += to_int64_checked(a, "alpha") *
                     run.bufv[static_cast<std::size_t>(region.emit_lead_ - j)];
            for (const auto& [j, a] : region.beta_[i].coeffs())
                c += to_int64_checked(a, "beta") *
                     run.bufw[static_cast<std::size_t>(region.emit_lead_ - j)];
            run.side[static_cast<std::size_t>(i)] =
                region.machine_->step(run.side[static_cast<std::size_t>(i)], c);
        }
        --run.emit_pos;
        return run;
    }

    std::size_t initial() override {
        RegionAutomaton::Run run;
        run.bufv.assign(region.buffer_len_, 0);
        run.bufw.assign(region.buffer_len_, 0);
        for (auto& s : run.side) s = region.machine_->initial_state();
        run.emit_pos = top + region.emit_lead_;
        return intern(std::move(run));
    }

    std::size_t step(std::size_t state, std::size_t symbol_index) override {
        const Alphabet::Symbol sym = region.alphabet_.symbol_at(symbol_index);
        return intern(advance(nodes[state], sym[0].value_or(0), sym[1].value_or(0)));
    }

    std::int8_t label(std::size_t state) override {
        RegionAutomaton::Run run = nodes[state];
        for (std::size_t t = 0; t + 1 < region.buffer_len_ || run.emit_pos >= region.gamma_lo_;
             ++t)
            run = advance(std::move(run), 0, 0);
        for (const auto& s : run.side)
            if (region.machine_->finish(s) == Sign::Negative) return SyncDFA::kReject;
        return SyncDFA::kAccept;
    }
};

SyncDFA RegionAutomaton::materialize(int top, std::size_t state_cap) const {
    if (top < min_top())
        throw ValidationError("alignment top " + std::to_string(top) +
                              " is below the triangle's constant span; need at least " +
                              std::to_string(min_top()));
    RegionMaterializer m(*this, top);
    return m.materialize(state_cap);
}

RegionDfa compile_region_dfa(const GridSpec& g, const Triangle& t, std::int64_t radius, int top,
                             std::size_t state_cap) {
    RegionAutomaton r(g, t, radius);
    const int aligned_top = std::max(top, r.min_top());
    return RegionDfa{r.materialize(aligned_top, state_cap), aligned_top};
}

bool region_dfa_contains(const RegionDfa& r, const Point& p) {
    const ConvWord w = convolve({p.x, p.y});
    std::vector<Alphabet::Symbol> symbols;
    if (!w.symbols.empty()) {
        if (w.top > r.top)
            throw ValidationError("point exceeds the compiled alignment top");
        symbols.assign(static_cast<std::size_t>(r.top - w.top),
                       Alphabet::Symbol{std::nullopt, std::nullopt});
        symbols.insert(symbols.end(), w.symbols.begin(), w.symbols.end());
    }
    return r.dfa.run(symbols) == SyncDFA::kAccept;
}

// ---------------------------------------------------------------------------
// Interleaved representation

std::vector<Int> interleave(const LaurentDigits& p) {
    std::vector<Int> out;
    if (p.is_zero()) return out;
    const int hi = std::max(p.hi(), 0);
    const int lo = std::min(p.lo(), 0);
    const int max_index = std::max(hi > 0 ? 2 * hi - 1 : 0, lo < 0 ? -2 * lo : 0);
    out.reserve(static_cast<std::size_t>(max_index) + 1);
    for (int t = 0; t <= max_index; ++t) {
        const int pos = t == 0 ? 0 : (t % 2 == 1 ? (t + 1) / 2 : -t / 2);
        out.push_back(p.at(pos));
    }
    return out;
}

LaurentDigits deinterleave(const std::vector<Int>& word) {
    LaurentDigits p;
    for (std::size_t t = 0; t < word.size(); ++t) {
        const int ti = static_cast<int>(t);
        const int pos = ti == 0 ? 0 : (ti % 2 == 1 ? (ti + 1) / 2 : -ti / 2);
        p.set(pos, word[t]);
    }
    return p;
}

// ---------------------------------------------------------------------------
// Rectangle same-area relation in D_p

bool rect_same_area(const GridSpec& db_grid, const AxisRect& r, const Int& ell, int k) {
    if (!db_grid.base_b || db_grid.p3.size() != 2 || db_grid.p3[1] != -*db_grid.base_b)
        throw ValidationError("rect_same_area needs a D_b grid");
    const Int p = *db_grid.base_b;
    if (ell < 1 || gcd(ell, p) != 1)
        throw ValidationError("area coefficient must be positive and coprime to the base");

    const LaurentDigits w = normalize(db_grid, sub_digits(r.ur.x, r.ll.x));
    const LaurentDigits h = normalize(db_grid, sub_digits(r.ur.y, r.ll.y));
    if (w.is_zero() || h.is_zero()) return false;
    // Positions of the last nonzero digits: normal-form digits are smaller
    // than p in magnitude, so the lowest exponent is the p-adic valuation.
    const int i = w.lo();
    const int j = h.lo();
    if (i + j != k) return false;
    const LaurentDigits sw = shift_digits(w, -i);
    const LaurentDigits sh = shift_digits(h, -j);
    for (Int d = 1; d <= ell; ++d) {
        if (ell % d != 0) continue;
        const LaurentDigits l1 = const_digits(db_grid, ConstIntegerN{d});
        const LaurentDigits l2 = const_digits(db_grid, ConstIntegerN{ell / d});
        if (equal(db_grid, sw, l1) && equal(db_grid, sh, l2)) return true;
    }
    return false;
}

// Demo DFA over interleaved binary words.  Per factorization ell1 * ell2 the
// component tracks, per side, the support pattern of ell1 * 2^i (one 1, or
// two 1s at consecutive exponents) and checks i + j = k from the bounded
// offset between the two valuation digits in interleaved reading order.
namespace {

int interleaved_position(int v) { return v == 0 ? 0 : (v % 2 == 1 ? (v + 1) / 2 : -v / 2); }

class RectAreaDfa final : public LazyDfa {
  public:
    RectAreaDfa(int ell, int k) : k_(k) {
        if ((ell != 1 && ell != 3) || k < -2 || k > 2)
            throw ValidationError("demo rect-area DFA supports ell in {1,3} and |k| <= 2");
        if (ell == 1) {
            factorizations_.push_back({1, 1});
        } else {
            factorizations_.push_back({1, 3});
            factorizations_.push_back({3, 1});
        }
        alphabet_.tracks = {TrackAlphabet{0, 1, false}, TrackAlphabet{0, 1, false}};
    }

    const Alphabet& alphabet() const override { return alphabet_; }
    SyncDFA::LabelKind label_kind() const override { return SyncDFA::LabelKind::Acceptor; }

    std::size_t initial() override {
        Node n;
        n.components.assign(factorizations_.size(), Component{});
        return intern(std::move(n));
    }

    std::size_t step(std::size_t state, std::size_t symbol_index) override {
        const Alphabet::Symbol sym = alphabet_.symbol_at(symbol_index);
        Node n = nodes_[state];
        for (std::size_t c = 0; c < n.components.size(); ++c)
            advance(n.components[c], factorizations_[c],
                    static_cast<int>(*sym[0]), static_cast<int>(*sym[1]), n.t_small,
                    n.t_parity);
        n.t_small = std::min<std::uint8_t>(n.t_small + 1, 9);
        n.t_parity ^= 1;
        return intern(std::move(n));
    }

    std::int8_t label(std::size_t state) override {
        for (const Component& c : nodes_[state].components)
            if (c.w.phase == kDone && c.h.phase == kDone && c.cross == kCrossOk)
                return SyncDFA::kAccept;
        return SyncDFA::kReject;
    }

  private:
    static constexpr std::uint8_t kStart = 0, kAwait = 1, kDone = 2, kDead = 3;
    static constexpr std::uint8_t kFromZero = 0, kPosSide = 1, kNegSide = 2;
    static constexpr std::uint8_t kCrossNone = 0, kCrossFirst = 1, kCrossOk = 2, kCrossDead = 3;
    static constexpr std::uint8_t kAgeCap = 13;

    struct TrackState {
        std::uint8_t phase = kStart;
        std::uint8_t kind = 0;
        std::uint8_t age = 0;  // steps since the first 1 of the pair
        bool operator==(const TrackState&) const = default;
    };
    struct Component {
        TrackState w, h;
        std::uint8_t cross = kCrossNone;
        std::int8_t v_exact = -1;   // first valuation index when <= 8
        std::uint8_t v_parity = 0;  // parity of the first valuation index
        std::uint8_t v_age = 0;     // current index minus first valuation index
        bool operator==(const Component&) const = default;
    };
    struct Node {
        std::vector<Component> components;
        std::uint8_t t_small = 0;  // min(index, 9)
        std::uint8_t t_parity = 0;
        bool operator==(const Node&) const = default;
    };
    struct NodeHash {
        std::size_t operator()(const Node& n) const {
            std::size_t seed = n.t_small * 31u + n.t_parity;
            for (const Component& c : n.components) {
                const std::uint32_t packed =
                    static_cast<std::uint32_t>(c.w.phase) | (c.w.kind << 2) | (c.w.age << 4) |
                    (c.h.phase << 8) | (c.h.kind << 10) | (c.h.age << 12) | (c.cross << 16) |
                    (static_cast<std::uint32_t>(static_cast<std::uint8_t>(c.v_exact)) << 18) |
                    (c.v_parity << 26) | (c.v_age << 27);
                seed = seed * 0x9e3779b9u + packed;
            }
            return seed;
        }
    };

    // Track automaton for the pattern ell_t * 2^i; fires the valuation event
    // with its backdate b (valuation index = current index - b).
    static std::optional<int> advance_track(TrackState& s, int target, int digit,
                                            std::uint8_t t_small, std::uint8_t t_parity) {
        switch (s.phase) {
            case kStart:
                if (digit == 0) return std::nullopt;
                if (target == 1) {
                    s.phase = kDone;
                    return 0;
                }
                s.phase = kAwait;
                s.kind = t_small == 0 ? kFromZero : (t_parity == 1 ? kPosSide : kNegSide);
                s.age = 0;
                return std::nullopt;
            case kAwait: {
                const std::uint8_t offset = s.age + 1;
                if (digit == 1) {
                    if (s.kind == kFromZero && offset == 1) {
                        s.phase = kDone;
                        return 1;  // support {0, 1}, valuation one index back
                    }
                    if (offset == 2) {
                        s.phase = kDone;
                        return s.kind == kPosSide ? 2 : 0;
                    }
                    s.phase = kDead;
                    return std::nullopt;
                }
                if (offset >= 2) {
                    s.phase = kDead;  // partner out of reach
                    return std::nullopt;
                }
                s.age = offset;
                return std::nullopt;
            }
            case kDone:
                if (digit == 1) s.phase = kDead;
                return std::nullopt;
            default:
                return std::nullopt;
        }
    }

    void cross_complete(Component& c, int b, std::uint8_t t_small, std::uint8_t t_parity) const {
        if (c.cross == kCrossDead || c.cross == kCrossOk) {
            // A third valuation event cannot happen; patterns allow two.
            return;
        }
        if (c.cross == kCrossNone) {
            c.cross = kCrossFirst;
            c.v_exact = t_small <= 8 ? static_cast<std::int8_t>(t_small - b) : -1;
            c.v_parity = (t_parity ^ (b & 1)) & 1;
            c.v_age = static_cast<std::uint8_t>(b);
            return;
        }
        // Second valuation: delta between the two valuation indices.
        const int delta = static_cast<int>(c.v_age) - b;
        bool ok;
        if (c.v_exact >= 0) {
            const int v1 = c.v_exact;
            const int v2 = v1 + delta;
            ok = v2 >= 0 &&
                 interleaved_position(v1) + interleaved_position(v2) == k_;
        } else {
            // v1 >= 7: only opposite interleaving sides can meet |k| <= 2.
            const int p2 = (c.v_parity ^ (delta & 1)) & 1;
            if (p2 == c.v_parity) {
                ok = false;
            } else if (c.v_parity == 1) {  // v1 odd: positive side
                ok = (1 - delta) % 2 == 0 && (1 - delta) / 2 == k_;
            } else {
                ok = (delta + 1) % 2 == 0 && (delta + 1) / 2 == k_;
            }
        }
        c.cross = ok ? kCrossOk : kCrossDead;
    }

    void advance(Component& c, const std::pair<int, int>& fact, int dw, int dh,
                 std::uint8_t t_small, std::uint8_t t_parity) const {
        if (c.cross == kCrossFirst) {
            if (c.v_age >= kAgeCap) {
                c.cross = kCrossDead;  // any later valuation is too far away
            } else {
                ++c.v_age;
            }
        }
        const auto bw = advance_track(c.w, fact.first, dw, t_small, t_parity);
        if (bw) cross_complete(c, *bw, t_small, t_parity);
        const auto bh = advance_track(c.h, fact.second, dh, t_small, t_parity);
        if (bh) cross_complete(c, *bh, t_small, t_parity);
    }

    std::size_t intern(Node n) {
        auto it = index_.find(n);
        if (it != index_.end()) return it->second;
        nodes_.push_back(n);
        index_.emplace(std::move(n), nodes_.size() - 1);
        return nodes_.size() - 1;
    }

    int k_;
    std::vector<std::pair<int, int>> factorizations_;
    Alphabet alphabet_;
    std::vector<Node> nodes_;
    std::unordered_map<Node, std::size_t, NodeHash> index_;
};

}  // namespace

std::shared_ptr<LazyDfa> rect_area_automaton(int ell, int k) {
    return std::make_shared<RectAreaDfa>(ell, k);
}

bool rect_area_dfa_accepts(LazyDfa& a, const LaurentDigits& width, const LaurentDigits& height) {
    const std::vector<Int> wi = interleave(width);
    const std::vector<Int> hi = interleave(height);
    const std::size_t len = std::max(wi.size(), hi.size());
    std::vector<Alphabet::Symbol> symbols;
    symbols.reserve(len);
    for (std::size_t t = 0; t < len; ++t) {
        const std::int64_t dw = t < wi.size() ? to_int64_checked(wi[t], "digit") : 0;
        const std::int64_t dh = t < hi.size() ? to_int64_checked(hi[t], "digit") : 0;
        symbols.push_back({dw, dh});
    }
    return a.run(symbols) == SyncDFA::kAccept;
}

}  // namespace semigrid
