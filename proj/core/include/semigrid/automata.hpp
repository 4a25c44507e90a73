// Synchronized multi-track automata over padded digit alphabets, the
// convolution encoding, and the generic automaton algebra (run, product,
// projection, determinization, minimization, equivalence, DOT export).
// Tracks are read most-significant exponent first unless stated otherwise;
// the padding symbol # appears in a track only outside that track's span.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "semigrid/digits.hpp"
#include "semigrid/grid.hpp"

namespace semigrid {

struct TrackAlphabet {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    bool with_pad = true;

    static TrackAlphabet digits(std::int64_t radius, bool with_pad = true) {
        return {-radius, radius, with_pad};
    }
    std::size_t size() const {
        return static_cast<std::size_t>(hi - lo + 1) + (with_pad ? 1 : 0);
    }
    bool operator==(const TrackAlphabet&) const = default;
};

struct Alphabet {
    using Digit = std::optional<std::int64_t>;  // nullopt encodes '#'
    using Symbol = std::vector<Digit>;

    std::vector<TrackAlphabet> tracks;

    std::size_t track_count() const { return tracks.size(); }
    std::size_t size() const;
    std::size_t index_of(const Symbol& s) const;
    Symbol symbol_at(std::size_t index) const;
    std::string format_symbol(const Symbol& s) const;  // "(1,#,0)"
    bool operator==(const Alphabet&) const = default;
};

enum class ReadOrder { MsbFirst, LsbFirst };

struct SyncDFA {
    enum class LabelKind { Acceptor, SignClassifier };
    static constexpr std::int8_t kReject = 0;
    static constexpr std::int8_t kAccept = 1;

    Alphabet alphabet;
    ReadOrder order = ReadOrder::MsbFirst;
    LabelKind kind = LabelKind::Acceptor;
    std::uint32_t initial = 0;
    std::vector<std::uint32_t> next;  // state_count * alphabet.size(), row-major
    std::vector<std::int8_t> labels;  // Acceptor: 0/1; SignClassifier: -1/0/+1
    std::vector<std::string> state_names;  // optional display names

    std::size_t state_count() const { return labels.size(); }
    std::uint32_t step(std::uint32_t s, std::size_t symbol_index) const {
        return next[s * alphabet.size() + symbol_index];
    }
    std::int8_t run(const std::vector<Alphabet::Symbol>& word) const;
    std::string label_name(std::int8_t label) const;
};

// A positioned convolution word: symbols for exponents top, top-1, ....
struct ConvWord {
    int top = 0;
    std::vector<Alphabet::Symbol> symbols;
};

// Overlay of digit vectors into one word over a tuple alphabet; the domain is
// the interval hull of the track spans and # marks positions outside a span.
ConvWord convolve(const std::vector<LaurentDigits>& tracks);
// "(#,2)(1,2).(1,2)(1,8)(2,9)(#,5)" with the dot between exponents 0 and -1.
std::string format_conv_word(const ConvWord& w);

std::int8_t dfa_run(const SyncDFA& a, const ConvWord& word);

SyncDFA dfa_product(const SyncDFA& a, const SyncDFA& b,
                    const std::function<std::int8_t(std::int8_t, std::int8_t)>& combine,
                    SyncDFA::LabelKind kind = SyncDFA::LabelKind::Acceptor);

struct SyncNFA {
    Alphabet alphabet;
    ReadOrder order = ReadOrder::MsbFirst;
    std::vector<std::uint32_t> initials;
    std::vector<bool> accepting;
    // next[state][symbol] -> ascending target list
    std::vector<std::vector<std::vector<std::uint32_t>>> next;

    std::size_t state_count() const { return accepting.size(); }
};

// Removes one track from an acceptor.  Runs of the removed track may stick
// out of the kept tracks' hull, so initial/accepting sets are closed under
// symbols that are all-# on the kept tracks.
SyncNFA project_track(const SyncDFA& a, std::size_t track);

SyncDFA determinize(const SyncNFA& n, std::size_t state_cap = 1000000);

SyncDFA dfa_minimize(const SyncDFA& a);

// nullopt when equivalent; otherwise a shortest word on which labels differ.
std::optional<std::vector<Alphabet::Symbol>> dfa_equivalent(const SyncDFA& a, const SyncDFA& b);

std::string export_dot(const SyncDFA& a);

// Accepts exactly the words whose per-track # pattern is a valid convolution:
// every track reads #* digits* #*.
SyncDFA valid_convolution_dfa(const Alphabet& alphabet);

// The base-b school addition checker on three nonnegative tracks, processing
// least-significant digit first with states n (no carry), c (carry), i
// (incorrect); # is identified with 0 and acceptance requires ending in n.
SyncDFA compile_school_adder(int base);

struct AdderTrace {
    std::string trace;                // boundary states, most significant first
    std::vector<std::string> states;  // same content as a list
    bool accepted = false;
};
AdderTrace school_adder_trace(int base, const LaurentDigits& x, const LaurentDigits& y,
                              const LaurentDigits& z);

// Lazily expanded deterministic automaton; states are dense handles interned
// on first visit.  materialize() turns the reachable part into a SyncDFA.
class LazyDfa {
  public:
    virtual ~LazyDfa() = default;
    virtual const Alphabet& alphabet() const = 0;
    virtual SyncDFA::LabelKind label_kind() const = 0;
    virtual std::size_t initial() = 0;
    virtual std::size_t step(std::size_t state, std::size_t symbol_index) = 0;
    virtual std::int8_t label(std::size_t state) = 0;

    std::int8_t run(const std::vector<Alphabet::Symbol>& word);
    std::int8_t run(const ConvWord& word) { return run(word.symbols); }
    SyncDFA materialize(std::size_t state_cap = 1000000);
};

// Single-track sign classifier equivalent to the procedural sign algorithm,
// over digits {-radius..radius}.
std::shared_ptr<LazyDfa> sign_automaton(const GridSpec& g, std::int64_t radius);
SyncDFA compile_sign_dfa(const GridSpec& g, std::int64_t radius = 0 /* input_bound */,
                         std::size_t state_cap = 1000000);

// Two-track comparison classifiers: the sign of x - y.
std::shared_ptr<LazyDfa> comparison_automaton(const GridSpec& g, std::int64_t radius = 0);

// Three-track addition checker: accepts conv(x, y, z) iff x + y = z at u.
std::shared_ptr<LazyDfa> addition_checker_automaton(const GridSpec& g,
                                                    std::vector<std::int64_t> radii = {});
SyncDFA compile_addition_checker(const GridSpec& g, std::vector<std::int64_t> radii = {},
                                 std::size_t state_cap = 1000000);

// Two-track checker: accepts conv(x, y) iff x*num(u) = y*den(u).  The
// polynomial convolutions are folded into the transition map as
// shift/negate/add compositions.
std::shared_ptr<LazyDfa> mulconst_checker_automaton(const GridSpec& g, const LaurentDigits& num,
                                                    const LaurentDigits& den,
                                                    std::vector<std::int64_t> radii = {});
SyncDFA compile_mulconst_checker(const GridSpec& g, const LaurentDigits& num,
                                 const LaurentDigits& den,
                                 std::vector<std::int64_t> radii = {},
                                 std::size_t state_cap = 1000000);

}  // namespace semigrid
