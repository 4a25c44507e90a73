#include "doctest.h"

#include <random>

#include "semigrid/errors.hpp"
#include "semigrid/grid.hpp"
#include "semigrid/normalize.hpp"
#include "semigrid/oracle.hpp"
#include "semigrid/sign.hpp"

using namespace semigrid;

namespace {

LaurentDigits random_in_bound(std::mt19937_64& rng, const GridSpec& g, int span = 10) {
    std::uniform_int_distribution<int> exp(-span, span);
    const auto bound = static_cast<std::int64_t>(g.input_bound);
    std::uniform_int_distribution<std::int64_t> coeff(-bound, bound);
    std::uniform_int_distribution<int> count(0, 8);
    LaurentDigits p;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) p.set(exp(rng), coeff(rng));
    return p;
}

}  // namespace

TEST_CASE("sign_of worked examples") {
    const GridSpec g = make_grid(Sqrt2Half{});
    CHECK(sign_of(g, LaurentDigits{}) == Sign::Zero);
    // -p4 has value 0.
    CHECK(sign_of(g, parse_digits("{1:1,0:-4,-1:2}")) == Sign::Zero);
    // sqrt(2) - 1/2 > 0, componentwise difference of p2 and p1.
    CHECK(sign_of(g, parse_digits("{0:2,-1:-4,-2:1}")) == Sign::Positive);
    CHECK(sign_of(g, parse_digits("{0:5}")) == Sign::Positive);
}

TEST_CASE("sign_of enforces the input bound") {
    const GridSpec g = make_grid(Sqrt2Half{});
    CHECK_THROWS_AS(sign_of(g, parse_digits("{0:13}")), InputBoundExceeded);
    CHECK_NOTHROW(sign_of(g, parse_digits("{0:12}")));
}

TEST_CASE("sign_of matches the oracle on random in-bound vectors") {
    std::mt19937_64 rng(2024);
    for (const GridSpec& g : shipped_grids()) {
        INFO(g.name);
        for (int i = 0; i < 300; ++i) {
            const LaurentDigits p = random_in_bound(rng, g);
            SignRunInfo info;
            CHECK(sign_of(g, p, &info) == sign_at(g, p));
            // Window entries stay within the running magnitude cap.
            CHECK(info.max_abs_window_entry <= g.run_cap());
        }
    }
}

TEST_CASE("overshoot decisions follow the leading coefficient on cbrt grids") {
    std::mt19937_64 rng(77);
    for (const GridKind kind : {GridKind(Cbrt7{}), GridKind(Cbrt65Half{})}) {
        const GridSpec g = make_grid(kind);
        int overshoots = 0;
        for (int i = 0; i < 400 && overshoots < 40; ++i) {
            const LaurentDigits p = random_in_bound(rng, g, 6);
            SignRunInfo info;
            const Sign s = sign_of(g, p, &info);
            if (!info.overshoot) continue;
            ++overshoots;
            CHECK(info.overshoot->leading_sign == s);
            CHECK(info.overshoot->window_sign == s);
        }
        INFO(g.name);
        CHECK(overshoots > 0);
    }
}

TEST_CASE("compare and equal") {
    const GridSpec g = make_grid(Sqrt2Half{});
    const LaurentDigits half = *g.p1;
    const LaurentDigits root2 = *g.p2;
    CHECK(compare(g, half, half) == Ordering::Equal);
    CHECK(compare(g, half, root2) == Ordering::Less);
    CHECK(compare(g, root2, half) == Ordering::Greater);
    CHECK(equal(g, parse_digits("{0:5}"), parse_digits("{1:1,0:1,-1:2}")));

    const GridSpec g7 = make_grid(Cbrt7{});
    CHECK(compare(g7, *g7.p2, parse_digits("{0:2}")) == Ordering::Less);  // cbrt(7) < 2
}

TEST_CASE("compiled sign DFA matches the procedure") {
    const GridSpec g = make_grid(Sqrt2Half{});
    const SyncDFA dfa = compile_sign_dfa(g, 3);
    CHECK(dfa.kind == SyncDFA::LabelKind::SignClassifier);

    // All-zero word is Zero; a positive single digit is Positive.
    CHECK(dfa.run({{0}, {0}, {0}}) == 0);
    CHECK(dfa.run({{3}}) == 1);

    // Exhaustive agreement on words of length <= 4 over digits {-3..3}.
    std::vector<Alphabet::Symbol> word;
    const std::function<void(int)> rec = [&](int remaining) {
        LaurentDigits p;
        for (std::size_t i = 0; i < word.size(); ++i)
            p.set(-static_cast<int>(i), *word[i][0]);
        const Sign expect = sign_of(g, p);
        CHECK(dfa.run(word) == static_cast<std::int8_t>(expect));
        if (remaining == 0) return;
        for (int d = -3; d <= 3; ++d) {
            word.push_back({d});
            rec(remaining - 1);
            word.pop_back();
        }
    };
    rec(4);
}

TEST_CASE("lazy sign automaton agrees with sign_of on longer words per grid") {
    std::mt19937_64 rng(5150);
    for (const GridSpec& g : shipped_grids()) {
        INFO(g.name);
        auto a = sign_automaton(g, 0);
        const auto bound = static_cast<std::int64_t>(g.input_bound);
        std::uniform_int_distribution<std::int64_t> digit(-bound, bound);
        std::uniform_int_distribution<int> len(7, 20);
        for (int i = 0; i < 60; ++i) {
            const int n = len(rng);
            std::vector<Alphabet::Symbol> word;
            LaurentDigits p;
            for (int j = 0; j < n; ++j) {
                const std::int64_t d = digit(rng);
                word.push_back({d});
                p.set(-j, d);
            }
            CHECK(a->run(word) == static_cast<std::int8_t>(sign_of(g, p)));
        }
    }
}

TEST_CASE("state cap raises StateExplosion") {
    const GridSpec g = make_grid(Sqrt2Half{});
    CHECK_THROWS_AS(compile_sign_dfa(g, 3, 10), StateExplosion);
}

TEST_CASE("decisions are absorbing") {
    const GridSpec g = make_grid(Sqrt2Half{});
    SignMachine m(g, 12);
    SignMachine::State s = m.initial_state();
    // Drive the machine into a decision with large same-sign digits.
    int guard = 0;
    while (s.decided == 0 && guard++ < 64) s = m.step(s, 12);
    REQUIRE(s.decided == 1);
    for (int d : {-12, 0, 12, 5}) {
        const SignMachine::State t = m.step(s, d);
        CHECK(t.decided == 1);
    }
}
