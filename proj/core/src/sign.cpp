#include "semigrid/sign.hpp"

#include <cassert>
#include <cstring>
#include <deque>

#include "semigrid/errors.hpp"
#include "semigrid/oracle.hpp"

namespace semigrid {

namespace {

LaurentDigits window_digits(const std::vector<Int>& w, int leading_exponent) {
    LaurentDigits d;
    for (std::size_t i = 0; i < w.size(); ++i)
        d.set(leading_exponent - static_cast<int>(i), w[i]);
    return d;
}

}  // namespace

Sign sign_of(const GridSpec& g, const LaurentDigits& p, SignRunInfo* info) {
    if (info) *info = SignRunInfo{};
    if (max_abs_digit(p) > g.input_bound)
        throw InputBoundExceeded("digit exceeds the grid input bound " + g.input_bound.str());
    if (p.is_zero()) return Sign::Zero;

    const int h = g.h();
    const int lo = p.lo();
    std::vector<Int> window(static_cast<std::size_t>(h), Int(0));
    Int leading_before_update = 0;  // coefficient eliminated by the last update

    // k walks from hi+h down to lo; the window holds exponents k..k-h+1.
    for (int k = p.hi() + h;; --k) {
        // Overshoot check on the current window.
        for (std::size_t i = 0; i < window.size(); ++i) {
            if (info && abs(window[i]) > info->max_abs_window_entry)
                info->max_abs_window_entry = abs(window[i]);
            if (abs(window[i]) > g.window_cap(i)) {
                const LaurentDigits wd = window_digits(window, k);
                const Sign s = sign_at(g, wd);
                if (s == Sign::Zero)
                    throw InvalidGrid("grid '" + g.name +
                                      "': overshooting window has value zero; the window caps "
                                      "do not dominate the tail");
                if (info)
                    info->overshoot = OvershootEvent{k, wd, s, sign_of_int(leading_before_update)};
                return s;
            }
        }
        if (k == lo) {
            // Clean exit: everything unprocessed sits inside the window.
            return sign_at(g, window_digits(window, k));
        }
        // Eliminate the leading coefficient with p3 and slide the window.
        const Int a = window[0];
        leading_before_update = a;
        for (int i = 0; i + 1 < h; ++i) window[static_cast<std::size_t>(i)] =
            window[static_cast<std::size_t>(i) + 1] - a * g.p3[static_cast<std::size_t>(i) + 1];
        window[static_cast<std::size_t>(h) - 1] = p.at(k - h);
        if (info) ++info->steps;
    }
}

const char* to_string(Ordering o) {
    switch (o) {
        case Ordering::Less: return "Less";
        case Ordering::Equal: return "Equal";
        case Ordering::Greater: return "Greater";
    }
    return "?";
}

Ordering compare(const GridSpec& g, const LaurentDigits& p, const LaurentDigits& q) {
    switch (sign_of(g, sub_digits(p, q))) {
        case Sign::Negative: return Ordering::Less;
        case Sign::Zero: return Ordering::Equal;
        case Sign::Positive: return Ordering::Greater;
    }
    return Ordering::Equal;
}

bool equal(const GridSpec& g, const LaurentDigits& p, const LaurentDigits& q) {
    return compare(g, p, q) == Ordering::Equal;
}

// ---------------------------------------------------------------------------
// SignMachine

SignMachine::SignMachine(GridSpec g, std::int64_t max_stream_digit) : grid_(std::move(g)) {
    const int h = grid_.h();
    d_.reserve(static_cast<std::size_t>(h));
    for (const Int& c : grid_.p3) d_.push_back(to_int64_checked(c, "p3 coefficient"));
    caps_.reserve(static_cast<std::size_t>(h));
    Int min_cap = grid_.window_cap(0);
    for (int i = 0; i < h; ++i) {
        caps_.push_back(to_int64_checked(grid_.window_cap(static_cast<std::size_t>(i)),
                                         "window cap"));
        if (grid_.window_cap(static_cast<std::size_t>(i)) < min_cap)
            min_cap = grid_.window_cap(static_cast<std::size_t>(i));
    }
    // Digits beyond the smallest cap would trip the overshoot check as fresh
    // entries, where nothing dominates the tail.
    if (min_cap < max_stream_digit)
        throw InputBoundExceeded("digit stream bound " + std::to_string(max_stream_digit) +
                                 " exceeds the smallest window cap " + min_cap.str() +
                                 " of grid '" + grid_.name + "'");
}

std::size_t SignMachine::StateHash::operator()(const State& s) const {
    std::size_t seed = static_cast<std::size_t>(s.decided) + 0x9e3779b97f4a7c15ULL;
    for (std::int64_t v : s.window)
        seed ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    return seed;
}

SignMachine::State SignMachine::initial_state() const {
    State s;
    s.window.assign(static_cast<std::size_t>(grid_.h()), 0);
    return s;
}

SignMachine::State SignMachine::step(const State& s, std::int64_t digit) const {
    if (s.decided != 0) return s;
    const std::size_t h = s.window.size();
    State t;
    t.window.resize(h);
    const std::int64_t a = s.window[0];
    for (std::size_t i = 0; i + 1 < h; ++i) t.window[i] = s.window[i + 1] - a * d_[i + 1];
    t.window[h - 1] = digit;
    for (std::size_t i = 0; i < h; ++i) {
        const std::int64_t v = t.window[i] < 0 ? -t.window[i] : t.window[i];
        if (v > caps_[i]) {
            const Sign sg = window_sign(t.window);
            if (sg == Sign::Zero)
                throw InvalidGrid("grid '" + grid_.name +
                                  "': overshooting window has value zero");
            t.window.clear();
            t.decided = static_cast<std::int8_t>(sg);
            return t;
        }
    }
    return t;
}

Sign SignMachine::finish(const State& s) const {
    if (s.decided != 0) return static_cast<Sign>(s.decided);
    State t = s;
    for (int i = 0; i + 1 < grid_.h(); ++i) {
        t = step(t, 0);
        if (t.decided != 0) return static_cast<Sign>(t.decided);
    }
    return window_sign(t.window);
}

Sign SignMachine::window_sign(const std::vector<std::int64_t>& w) const {
    std::string key(reinterpret_cast<const char*>(w.data()), w.size() * sizeof(std::int64_t));
    auto it = sign_cache_.find(key);
    if (it != sign_cache_.end()) return it->second;
    LaurentDigits d;
    for (std::size_t i = 0; i < w.size(); ++i) d.set(-static_cast<int>(i), w[i]);
    const Sign s = sign_at(grid_, d);
    sign_cache_.emplace(std::move(key), s);
    return s;
}

// ---------------------------------------------------------------------------
// Lazy automata built on the machine: sign, comparison, addition, mulconst.

namespace {

std::int64_t radius_or_input_bound(const GridSpec& g, std::int64_t radius) {
    return radius > 0 ? radius : to_int64_checked(g.input_bound, "input bound");
}

// Per-track padding monitor: #* digits* #*.
enum PadPhase : std::uint8_t { kPre = 0, kIn = 1, kPost = 2, kBroken = 3 };

std::uint8_t advance_pad(std::uint8_t phase, bool is_pad) {
    switch (phase) {
        case kPre: return is_pad ? kPre : kIn;
        case kIn: return is_pad ? kPost : kIn;
        case kPost: return is_pad ? kPost : kBroken;
        default: return kBroken;
    }
}

// A linear form sum_i coeff_i * track_i(u) fed through the sign machine,
// with each polynomial convolution folded into the per-symbol update.  This
// is the shift/negate/add composition: multiplying a track by u^j reads the
// digit j positions later, so buffering span-many recent digits per track is
// enough to emit the combined digit stream.
struct FoldedForm {
    std::vector<LaurentDigits> coeffs;  // one integer Laurent polynomial per track
    int emit_lead = 0;                  // H: emit position = read position + H
    int emit_trail = 0;                 // flush until emit position = read lo + trail
    std::size_t buffer_len = 0;

    explicit FoldedForm(std::vector<LaurentDigits> cs) : coeffs(std::move(cs)) {
        int max_hi = 0, min_lo = 0;
        for (const auto& c : coeffs) {
            if (c.is_zero()) continue;
            max_hi = std::max(max_hi, c.hi());
            min_lo = std::min(min_lo, c.lo());
        }
        emit_lead = max_hi;
        emit_trail = min_lo;
        buffer_len = static_cast<std::size_t>(max_hi - min_lo) + 1;
    }

    std::int64_t max_emitted_digit(const std::vector<std::int64_t>& radii) const {
        Int bound = 0;
        for (std::size_t t = 0; t < coeffs.size(); ++t)
            bound += one_norm(coeffs[t]) * radii[t];
        return to_int64_checked(bound, "combined digit bound");
    }

    // buffers[t][j] holds track t's digit at position (read position + j).
    std::int64_t emit(const std::vector<std::vector<std::int64_t>>& buffers) const {
        std::int64_t out = 0;
        for (std::size_t t = 0; t < coeffs.size(); ++t) {
            for (const auto& [j, c] : coeffs[t].coeffs()) {
                // term c * track_t(emit_pos - j); emit_pos = read_pos + emit_lead.
                const std::size_t idx = static_cast<std::size_t>(emit_lead - j);
                out += to_int64_checked(c, "form coefficient") * buffers[t][idx];
            }
        }
        return out;
    }
};

class FormCheckerDfa final : public LazyDfa {
  public:
    FormCheckerDfa(const GridSpec& g, FoldedForm form, std::vector<std::int64_t> radii,
                   SyncDFA::LabelKind kind)
        : form_(std::move(form)),
          radii_(radii),
          machine_(g, form_.max_emitted_digit(radii)),
          kind_(kind) {
        for (std::int64_t r : radii) alphabet_.tracks.push_back(TrackAlphabet::digits(r));
    }

    const Alphabet& alphabet() const override { return alphabet_; }
    SyncDFA::LabelKind label_kind() const override { return kind_; }

    std::size_t initial() override {
        Node n;
        n.pads.assign(alphabet_.track_count(), kPre);
        n.buffers.assign(alphabet_.track_count(),
                         std::vector<std::int64_t>(form_.buffer_len, 0));
        n.machine = machine_.initial_state();
        return intern(std::move(n));
    }

    std::size_t step(std::size_t state, std::size_t symbol_index) override {
        const Node& cur = nodes_[state];
        const Alphabet::Symbol sym = alphabet_.symbol_at(symbol_index);
        Node nxt = cur;
        for (std::size_t t = 0; t < sym.size(); ++t) {
            nxt.pads[t] = advance_pad(nxt.pads[t], !sym[t].has_value());
            auto& buf = nxt.buffers[t];
            // Reading moves one position down: shift buffers toward higher j.
            for (std::size_t j = buf.size(); j-- > 1;) buf[j] = buf[j - 1];
            buf[0] = sym[t].value_or(0);
        }
        nxt.machine = machine_.step(nxt.machine, form_.emit(nxt.buffers));
        return intern(std::move(nxt));
    }

    std::int8_t label(std::size_t state) override {
        const Node& cur = nodes_[state];
        const Sign s = flush_sign(cur);
        if (kind_ == SyncDFA::LabelKind::SignClassifier) return static_cast<std::int8_t>(s);
        for (std::uint8_t p : cur.pads)
            if (p == kBroken) return SyncDFA::kReject;
        return s == Sign::Zero ? SyncDFA::kAccept : SyncDFA::kReject;
    }

    // Exposed so region automata can reuse one machine per side.
    Sign flush_sign(std::size_t state) { return flush_sign(nodes_[state]); }

  private:
    struct Node {
        std::vector<std::uint8_t> pads;
        std::vector<std::vector<std::int64_t>> buffers;
        SignMachine::State machine;
        bool operator==(const Node&) const = default;
    };
    struct NodeHash {
        std::size_t operator()(const Node& n) const {
            std::size_t seed = SignMachine::StateHash{}(n.machine);
            for (auto p : n.pads) seed = seed * 1315423911u + p;
            for (const auto& buf : n.buffers)
                for (std::int64_t v : buf)
                    seed ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (seed << 6) +
                            (seed >> 2);
            return seed;
        }
    };

    Sign flush_sign(const Node& cur) const {
        // Emit the digits still sitting in the buffers, then let the machine
        // finish with its pending zero-steps.
        Node tmp = cur;
        const int flush_steps = form_.emit_lead - form_.emit_trail;
        for (int i = 0; i < flush_steps; ++i) {
            for (auto& buf : tmp.buffers) {
                for (std::size_t j = buf.size(); j-- > 1;) buf[j] = buf[j - 1];
                buf[0] = 0;
            }
            tmp.machine = machine_.step(tmp.machine, form_.emit(tmp.buffers));
        }
        return machine_.finish(tmp.machine);
    }

    std::size_t intern(Node n) {
        auto it = index_.find(n);
        if (it != index_.end()) return it->second;
        nodes_.push_back(n);
        const std::size_t id = nodes_.size() - 1;
        index_.emplace(std::move(n), id);
        return id;
    }

    FoldedForm form_;
    std::vector<std::int64_t> radii_;
    SignMachine machine_;
    SyncDFA::LabelKind kind_;
    Alphabet alphabet_;
    std::vector<Node> nodes_;
    std::unordered_map<Node, std::size_t, NodeHash> index_;
};

// Single-track sign automaton without padding: the word is the digit vector.
class SignDfa final : public LazyDfa {
  public:
    SignDfa(const GridSpec& g, std::int64_t radius) : machine_(g, radius) {
        alphabet_.tracks.push_back(TrackAlphabet::digits(radius, /*with_pad=*/false));
    }

    const Alphabet& alphabet() const override { return alphabet_; }
    SyncDFA::LabelKind label_kind() const override {
        return SyncDFA::LabelKind::SignClassifier;
    }

    std::size_t initial() override { return intern(machine_.initial_state()); }

    std::size_t step(std::size_t state, std::size_t symbol_index) override {
        const Alphabet::Symbol sym = alphabet_.symbol_at(symbol_index);
        return intern(machine_.step(nodes_[state], sym[0].value_or(0)));
    }

    std::int8_t label(std::size_t state) override {
        return static_cast<std::int8_t>(machine_.finish(nodes_[state]));
    }

  private:
    std::size_t intern(SignMachine::State s) {
        auto it = index_.find(s);
        if (it != index_.end()) return it->second;
        nodes_.push_back(s);
        const std::size_t id = nodes_.size() - 1;
        index_.emplace(std::move(s), id);
        return id;
    }

    SignMachine machine_;
    Alphabet alphabet_;
    std::vector<SignMachine::State> nodes_;
    std::unordered_map<SignMachine::State, std::size_t, SignMachine::StateHash> index_;
};

}  // namespace

std::shared_ptr<LazyDfa> sign_automaton(const GridSpec& g, std::int64_t radius) {
    return std::make_shared<SignDfa>(g, radius_or_input_bound(g, radius));
}

SyncDFA compile_sign_dfa(const GridSpec& g, std::int64_t radius, std::size_t state_cap) {
    return sign_automaton(g, radius)->materialize(state_cap);
}

std::shared_ptr<LazyDfa> comparison_automaton(const GridSpec& g, std::int64_t radius) {
    const std::int64_t r =
        radius > 0 ? radius : to_int64_checked(g.digit_bound, "digit bound");
    FoldedForm form({LaurentDigits::integer(1), LaurentDigits::integer(-1)});
    return std::make_shared<FormCheckerDfa>(g, std::move(form),
                                            std::vector<std::int64_t>{r, r},
                                            SyncDFA::LabelKind::SignClassifier);
}

std::shared_ptr<LazyDfa> addition_checker_automaton(const GridSpec& g,
                                                    std::vector<std::int64_t> radii) {
    if (radii.empty()) {
        const std::int64_t d = to_int64_checked(g.digit_bound, "digit bound");
        radii = {d, d, d};
    }
    if (radii.size() != 3) throw AlphabetMismatch("addition checker needs three tracks");
    FoldedForm form({LaurentDigits::integer(1), LaurentDigits::integer(1),
                     LaurentDigits::integer(-1)});
    return std::make_shared<FormCheckerDfa>(g, std::move(form), std::move(radii),
                                            SyncDFA::LabelKind::Acceptor);
}

SyncDFA compile_addition_checker(const GridSpec& g, std::vector<std::int64_t> radii,
                                 std::size_t state_cap) {
    return addition_checker_automaton(g, std::move(radii))->materialize(state_cap);
}

std::shared_ptr<LazyDfa> mulconst_checker_automaton(const GridSpec& g, const LaurentDigits& num,
                                                    const LaurentDigits& den,
                                                    std::vector<std::int64_t> radii) {
    if (den.is_zero() || sign_at(g, den) == Sign::Zero)
        throw ZeroDenominator("den(u) = 0 in mulconst checker");
    if (radii.empty()) {
        const std::int64_t d = to_int64_checked(g.digit_bound, "digit bound");
        radii = {d, d};
    }
    if (radii.size() != 2) throw AlphabetMismatch("mulconst checker needs two tracks");
    FoldedForm form({num, negate_digits(den)});
    return std::make_shared<FormCheckerDfa>(g, std::move(form), std::move(radii),
                                            SyncDFA::LabelKind::Acceptor);
}

SyncDFA compile_mulconst_checker(const GridSpec& g, const LaurentDigits& num,
                                 const LaurentDigits& den, std::vector<std::int64_t> radii,
                                 std::size_t state_cap) {
    return mulconst_checker_automaton(g, num, den, std::move(radii))->materialize(state_cap);
}

}  // namespace semigrid
