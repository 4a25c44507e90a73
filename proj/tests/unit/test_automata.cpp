#include "doctest.h"

#include <random>
#include <sstream>

#include "semigrid/automata.hpp"
#include "semigrid/errors.hpp"
#include "semigrid/grid.hpp"
#include "semigrid/mulconst.hpp"
#include "semigrid/normalize.hpp"
#include "semigrid/oracle.hpp"
#include "semigrid/sign.hpp"

using namespace semigrid;

TEST_CASE("convolution of the decimal pair") {
    const LaurentDigits x = transcribe_decimal("1.112");
    const LaurentDigits y = transcribe_decimal("22.2895");
    const ConvWord w = convolve({x, y});
    CHECK(w.top == 1);
    CHECK(w.symbols.size() == 6);  // exponents 1..-4
    CHECK(format_conv_word(w) == "(#,2)(1,2).(1,2)(1,8)(2,9)(#,5)");
    CHECK_FALSE(w.symbols[0][0].has_value());
    CHECK(*w.symbols[0][1] == 2);
}

TEST_CASE("convolution basics") {
    const ConvWord a = convolve({parse_digits("{0:1}"), LaurentDigits{}});
    CHECK(a.symbols.size() == 1);
    CHECK(*a.symbols[0][0] == 1);
    CHECK_FALSE(a.symbols[0][1].has_value());

    const ConvWord b = convolve({parse_digits("{0:1,-1:2}"), parse_digits("{0:3}")});
    CHECK(b.symbols.size() == 2);
    CHECK(*b.symbols[0][0] == 1);
    CHECK(*b.symbols[0][1] == 3);
    CHECK(*b.symbols[1][0] == 2);
    CHECK_FALSE(b.symbols[1][1].has_value());

    CHECK(convolve({LaurentDigits{}, LaurentDigits{}}).symbols.empty());
}

TEST_CASE("school adder reproduces the three tableaux") {
    const auto t1 = school_adder_trace(10, transcribe_decimal("2358.225"),
                                       transcribe_decimal("9112"),
                                       transcribe_decimal("11470.225"));
    CHECK(t1.trace == "n c n n c  n n n n");
    CHECK(t1.accepted);

    const auto t2 = school_adder_trace(10, transcribe_decimal("3333.33"),
                                       transcribe_decimal("22.222"),
                                       transcribe_decimal("155.552"));
    CHECK(t2.trace == "i i n n  n n n n");
    CHECK_FALSE(t2.accepted);

    const auto t3 = school_adder_trace(10, transcribe_decimal("99123.456"),
                                       transcribe_decimal("987.654"),
                                       transcribe_decimal("00111.11"));
    CHECK(t3.trace == "c c c c c  c c c n");
    CHECK_FALSE(t3.accepted);
}

TEST_CASE("school adder as a plain acceptor") {
    const SyncDFA adder = compile_school_adder(10);
    CHECK(dfa_run(adder, convolve({transcribe_decimal("2358.225"), transcribe_decimal("9112"),
                                   transcribe_decimal("11470.225")})) == SyncDFA::kAccept);
    CHECK(dfa_run(adder, convolve({transcribe_decimal("1"), transcribe_decimal("1"),
                                   transcribe_decimal("3")})) == SyncDFA::kReject);

    const SyncDFA mini = dfa_minimize(adder);
    CHECK(mini.state_count() <= 3);
    CHECK_FALSE(dfa_equivalent(mini, adder).has_value());
}

TEST_CASE("product with itself under AND is the same language") {
    const SyncDFA adder = compile_school_adder(10);
    const SyncDFA both = dfa_product(adder, adder, [](std::int8_t a, std::int8_t b) {
        return static_cast<std::int8_t>(a && b ? SyncDFA::kAccept : SyncDFA::kReject);
    });
    CHECK_FALSE(dfa_equivalent(dfa_minimize(both), dfa_minimize(adder)).has_value());
}

TEST_CASE("equivalence produces a shortest counterexample") {
    const SyncDFA a10 = compile_school_adder(10);
    SyncDFA always = a10;
    for (auto& l : always.labels) l = SyncDFA::kAccept;
    const auto cex = dfa_equivalent(a10, always);
    REQUIRE(cex.has_value());
    // The shortest difference is a single wrong column.
    CHECK(cex->size() == 1);
    CHECK(a10.run(*cex) == SyncDFA::kReject);
    CHECK(always.run(*cex) == SyncDFA::kAccept);

    const SyncDFA a2 = compile_school_adder(2);
    CHECK_THROWS_AS(dfa_equivalent(a10, a2), AlphabetMismatch);
}

TEST_CASE("addition checker accepts x + y = z and rejects off-by-one") {
    std::mt19937_64 rng(99);
    for (const GridKind kind : {GridKind(Db{10}), GridKind(Sqrt2Half{}), GridKind(Cbrt7{})}) {
        const GridSpec g = make_grid(kind);
        INFO(g.name);
        const auto d = static_cast<std::int64_t>(g.digit_bound);
        auto checker = addition_checker_automaton(g, {d, d, d + 1});
        std::uniform_int_distribution<std::int64_t> digit(-d, d);
        std::uniform_int_distribution<int> exp(-4, 4);
        for (int i = 0; i < 40; ++i) {
            LaurentDigits x, y;
            for (int j = 0; j < 4; ++j) {
                x.set(exp(rng), digit(rng));
                y.set(exp(rng), digit(rng));
            }
            const LaurentDigits z = normalize(g, add_digits(x, y));
            CHECK(checker->run(convolve({x, y, z})) == SyncDFA::kAccept);
            const LaurentDigits z_off = add_digits(z, LaurentDigits::integer(1));
            CHECK(checker->run(convolve({x, y, z_off})) == SyncDFA::kReject);
        }
        // x + 0 = x.
        const LaurentDigits p = normalize(g, parse_digits("{0:1,-1:1}"));
        CHECK(checker->run(convolve({p, LaurentDigits{}, p})) == SyncDFA::kAccept);
        CHECK(checker->run(convolve({LaurentDigits::integer(1), LaurentDigits::integer(1),
                                     LaurentDigits::integer(1)})) == SyncDFA::kReject);
    }
}

TEST_CASE("addition checker on sqrt2: p2 + p2 = normalize(2*p2)") {
    const GridSpec g = make_grid(Sqrt2Half{});
    auto checker = addition_checker_automaton(g);
    const LaurentDigits z = normalize(g, parse_digits("{0:4,-1:-4}"));
    CHECK(checker->run(convolve({*g.p2, *g.p2, z})) == SyncDFA::kAccept);
    CHECK(sign_at(g, sub_digits(z, poly_mul_digits(LaurentDigits::integer(2), *g.p2))) ==
          Sign::Zero);
}

TEST_CASE("addition checker rejects broken padding") {
    const GridSpec g = make_grid(Db{10});
    auto checker = addition_checker_automaton(g);
    // digit, pad, digit on one track is not a convolution.
    std::vector<Alphabet::Symbol> bad = {{1, 0, 1}, {std::nullopt, 0, 0}, {1, 0, 1}};
    CHECK(checker->run(bad) == SyncDFA::kReject);
}

TEST_CASE("mulconst checker: num=den=1 is value equality") {
    const GridSpec g = make_grid(Sqrt2Half{});
    auto eq = mulconst_checker_automaton(g, LaurentDigits::integer(1), LaurentDigits::integer(1));
    CHECK(eq->run(convolve({parse_digits("{0:1,-1:2}"), parse_digits("{0:1,-1:2}")})) ==
          SyncDFA::kAccept);
    CHECK(eq->run(convolve({parse_digits("{0:1}"), parse_digits("{0:2}")})) == SyncDFA::kReject);
}

TEST_CASE("mulconst checker: x * 3/2 = y in D_10") {
    const GridSpec g = make_grid(Db{10});
    auto checker = mulconst_checker_automaton(g, LaurentDigits::integer(3),
                                              LaurentDigits::integer(2));
    // 2 * 3/2 = 3.
    CHECK(checker->run(convolve({parse_digits("{0:2}"), parse_digits("{0:3}")})) ==
          SyncDFA::kAccept);
    // 1.2 * 3/2 = 1.8
    CHECK(checker->run(convolve({transcribe_decimal("1.2"), transcribe_decimal("1.8")})) ==
          SyncDFA::kAccept);
    CHECK(checker->run(convolve({parse_digits("{0:2}"), parse_digits("{0:2}")})) ==
          SyncDFA::kReject);
}

TEST_CASE("mulconst checker: sqrt(2) * sqrt(2) = 2") {
    const GridSpec g = make_grid(Sqrt2Half{});
    const LaurentDigits num = poly_mul_digits(*g.p2, *g.p2);
    auto checker = mulconst_checker_automaton(g, num, LaurentDigits::integer(1));
    CHECK(checker->run(convolve({parse_digits("{0:1}"), parse_digits("{0:2}")})) ==
          SyncDFA::kAccept);
    CHECK(checker->run(convolve({parse_digits("{0:1}"), parse_digits("{0:1}")})) ==
          SyncDFA::kReject);
}

TEST_CASE("mulconst checker rejects a zero denominator") {
    const GridSpec g = make_grid(Sqrt2Half{});
    LaurentDigits p3;
    for (std::size_t i = 0; i < g.p3.size(); ++i) p3.set(-static_cast<int>(i), g.p3[i]);
    CHECK_THROWS_AS(mulconst_checker_automaton(g, LaurentDigits::integer(1), p3),
                    ZeroDenominator);
    CHECK_THROWS_AS(mulconst_checker_automaton(g, LaurentDigits::integer(1), LaurentDigits{}),
                    ZeroDenominator);
}

TEST_CASE("projection of the addition checker's output track is total") {
    // In D_2 with digits {-1,0,1}, every pair (x, y) has a normal-form sum.
    const GridSpec g = make_grid(Db{2});
    const SyncDFA checker = compile_addition_checker(g, {1, 1, 1}, 200000);
    const SyncNFA projected = project_track(checker, 2);
    const SyncDFA det = determinize(projected);
    Alphabet pair_alpha;
    pair_alpha.tracks = {TrackAlphabet::digits(1), TrackAlphabet::digits(1)};
    const SyncDFA valid = valid_convolution_dfa(pair_alpha);
    const auto cex = dfa_equivalent(dfa_minimize(det), dfa_minimize(valid));
    if (cex) {
        std::ostringstream os;
        for (const auto& s : *cex) os << pair_alpha.format_symbol(s);
        FAIL("counterexample: ", os.str());
    }
}

TEST_CASE("multiples of 3 in D_10 via projection") {
    const GridSpec g = make_grid(Db{10});
    // x = 3y: track 0 carries y, track 1 carries x.
    auto rel = mulconst_checker_automaton(g, LaurentDigits::integer(3),
                                          LaurentDigits::integer(1), {9, 9});
    const SyncDFA dfa = rel->materialize(2000000);
    const SyncNFA exists_y = project_track(dfa, 0);
    const SyncDFA multiples = determinize(exists_y, 2000000);
    const auto run1 = [&](const LaurentDigits& x) {
        return multiples.run(convolve({x}).symbols);
    };
    CHECK(run1(transcribe_decimal("1.2")) == SyncDFA::kAccept);
    CHECK(run1(transcribe_decimal("1.01")) == SyncDFA::kReject);
    CHECK(run1(transcribe_decimal("3")) == SyncDFA::kAccept);
    CHECK(run1(transcribe_decimal("0.03")) == SyncDFA::kAccept);
}

TEST_CASE("DOT export") {
    // A one-state automaton exports as a three-line digraph with the state
    // count in the header comment.
    SyncDFA trivial;
    trivial.alphabet.tracks = {TrackAlphabet::digits(1, false)};
    trivial.labels = {SyncDFA::kAccept};
    trivial.next = {0, 0, 0};
    const std::string dot = export_dot(trivial);
    CHECK(dot.find("// states: 1") != std::string::npos);
    CHECK(std::count(dot.begin(), dot.end(), '\n') == 3);

    const std::string adder = export_dot(compile_school_adder(10));
    CHECK(adder.find("label=\"n : Accept\"") != std::string::npos);
    CHECK(adder.find("label=\"c : Reject\"") != std::string::npos);
    CHECK(adder.find("label=\"i : Reject\"") != std::string::npos);
    // Deterministic output.
    CHECK(adder == export_dot(compile_school_adder(10)));
}

TEST_CASE("minimized automata stay equivalent to themselves") {
    const GridSpec g = make_grid(Sqrt2Half{});
    const SyncDFA dfa = compile_sign_dfa(g, 2, 500000);
    const SyncDFA mini = dfa_minimize(dfa);
    CHECK(mini.state_count() <= dfa.state_count());
    CHECK_FALSE(dfa_equivalent(mini, dfa).has_value());
    // Minimization is idempotent up to state count.
    CHECK(dfa_minimize(mini).state_count() == mini.state_count());
}
