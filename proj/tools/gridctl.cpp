// gridctl: command-line surface over the semigrid library.  Line-oriented,
// deterministic output; exit 0 on success, 1 on domain errors, 2 on usage
// errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "semigrid/automata.hpp"
#include "semigrid/errors.hpp"
#include "semigrid/geometry.hpp"
#include "semigrid/grid.hpp"
#include "semigrid/mulconst.hpp"
#include "semigrid/normalize.hpp"
#include "semigrid/omega.hpp"
#include "semigrid/oracle.hpp"
#include "semigrid/selftest.hpp"
#include "semigrid/sign.hpp"

namespace {

using namespace semigrid;

GridSpec load_grid(const std::string& name_or_path) {
    if (name_or_path.size() > 5 &&
        name_or_path.compare(name_or_path.size() - 5, 5, ".json") == 0) {
        std::ifstream in(name_or_path);
        if (!in) throw ValidationError("cannot open grid file '" + name_or_path + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        GridSpec g = grid_from_json(buf.str());
        const ValidationReport r = validate_grid(g);
        if (!r.ok()) {
            for (const auto& c : r.checks)
                if (!c.passed)
                    throw ValidationError("grid file check '" + c.name + "' failed: " + c.detail);
            throw ValidationError("grid file failed termination fuzzing");
        }
        return g;
    }
    return grid_by_name(name_or_path);
}

// Numbers on the command line: digit strings in either format, integer
// literals, or decimal literals when the grid can represent them exactly.
LaurentDigits parse_number(const GridSpec& g, const std::string& text) {
    const auto is_plain = [&](bool allow_dot) {
        std::size_t i = 0;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
        if (i >= text.size()) return false;
        bool dot = false;
        bool digit_seen = false;
        for (; i < text.size(); ++i) {
            if (text[i] == '.' && allow_dot && !dot) {
                dot = true;
            } else if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
                return false;
            } else {
                digit_seen = true;
            }
        }
        return digit_seen;
    };
    if (!text.empty() && (text[0] == '{' || text[0] == '[')) {
        return normalize(g, parse_digits(text));
    }
    if (is_plain(false)) return normalize(g, LaurentDigits::integer(Int(text)));
    if (is_plain(true)) {
        const auto dot = text.find('.');
        const bool neg = text[0] == '-';
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        if (digits[0] == '+' || digits[0] == '-') digits = digits.substr(1);
        Int num(digits);
        if (neg) num = -num;
        Int den = 1;
        for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
        const Int common = gcd(abs(num), den);
        num /= common;
        den /= common;
        if (den == 1) return normalize(g, LaurentDigits::integer(num));
        if (!g.p1 || !g.base_b)
            throw NotDyadicRational("grid '" + g.name + "' has no 1/b to represent " + text);
        // num/den with den | b^t: digits of num * (b^t/den) * (1/b)^t.
        Int power = 1;
        LaurentDigits p1t = LaurentDigits::integer(1);
        for (int t = 1; t <= 64; ++t) {
            power *= *g.base_b;
            p1t = poly_mul_digits(p1t, *g.p1);
            if (power % den == 0)
                return normalize(g, scale_digits(p1t, num * (power / den)));
        }
        throw NotDyadicRational("denominator of " + text + " does not divide a power of b");
    }
    throw ParseError("unrecognized number '" + text + "'", 0);
}

// Splits "(x,y)" at the top-level comma, brace- and bracket-aware.
Point parse_point(const GridSpec& g, const std::string& text) {
    std::string s = text;
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '{' || c == '[') ++depth;
        if (c == '}' || c == ']') --depth;
        if (c == ',' && depth == 0)
            return make_point(g, parse_number(g, s.substr(0, i)),
                              parse_number(g, s.substr(i + 1)));
    }
    throw ParseError("expected \"(x,y)\" in '" + text + "'", 0);
}

std::vector<Point> parse_points(const GridSpec& g, const std::string& text) {
    std::vector<Point> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto semi = text.find(';', start);
        const std::string part =
            semi == std::string::npos ? text.substr(start) : text.substr(start, semi - start);
        if (!part.empty()) out.push_back(parse_point(g, part));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    return out;
}

std::string format_point(const Point& p) {
    return "(" + format_digits(p.x) + ", " + format_digits(p.y) + ")";
}

double to_double(const Rat& r) { return r.convert_to<double>(); }

double approx(const GridSpec& g, const LaurentDigits& d) {
    const RatInterval v = approx_value(g, d, Rat(1, 1000000));
    return to_double((v.lo + v.hi) / 2);
}

// Display-only rendering; approximate coordinates never feed back into any
// computation.
void write_svg(const GridSpec& g, const std::string& path,
               const std::vector<std::vector<Point>>& polygons,
               const std::vector<Point>& points) {
    double lo_x = 0, hi_x = 1, lo_y = 0, hi_y = 1;
    bool first = true;
    std::vector<std::vector<std::pair<double, double>>> polys;
    std::vector<std::pair<double, double>> dots;
    const auto track = [&](double x, double y) {
        if (first) {
            lo_x = hi_x = x;
            lo_y = hi_y = y;
            first = false;
        }
        lo_x = std::min(lo_x, x);
        hi_x = std::max(hi_x, x);
        lo_y = std::min(lo_y, y);
        hi_y = std::max(hi_y, y);
    };
    for (const auto& poly : polygons) {
        polys.emplace_back();
        for (const Point& p : poly) {
            const double x = approx(g, p.x), y = approx(g, p.y);
            track(x, y);
            polys.back().emplace_back(x, y);
        }
    }
    for (const Point& p : points) {
        const double x = approx(g, p.x), y = approx(g, p.y);
        track(x, y);
        dots.emplace_back(x, y);
    }
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-6});
    const double margin = 0.1 * span;
    const double scale = 400.0 / (span + 2 * margin);
    const auto sx = [&](double x) { return (x - lo_x + margin) * scale; };
    const auto sy = [&](double y) { return 400.0 - (y - lo_y + margin) * scale; };

    std::ofstream out(path);
    if (!out) throw Error("cannot write SVG file '" + path + "'");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\">\n";
    for (const auto& poly : polys) {
        out << "  <polygon points=\"";
        for (std::size_t i = 0; i < poly.size(); ++i) {
            if (i) out << ' ';
            out << sx(poly[i].first) << ',' << sy(poly[i].second);
        }
        out << "\" fill=\"#cfe8ff\" stroke=\"#1f6fb2\" stroke-width=\"1.5\"/>\n";
    }
    for (const auto& [x, y] : dots)
        out << "  <circle cx=\"" << sx(x) << "\" cy=\"" << sy(y)
            << "\" r=\"4\" fill=\"#d22\"/>\n";
    out << "</svg>\n";
}

OmegaStream parse_stream(const std::string& text) {
    return OmegaStream::from_digits(parse_digits(text));
}

Rat parse_rat(const std::string& text) {
    // Accepts "p/q", integers, decimals and scientific notation like 1e-12.
    const auto epos = text.find_first_of("eE");
    if (epos != std::string::npos) {
        const Rat mant = parse_rat(text.substr(0, epos));
        const int ex = std::stoi(text.substr(epos + 1));
        Rat scale = 1;
        for (int i = 0; i < std::abs(ex); ++i) scale *= 10;
        return ex >= 0 ? Rat(mant * scale) : Rat(mant / scale);
    }
    const auto slash = text.find('/');
    if (slash != std::string::npos)
        return Rat(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
        const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        Int den = 1;
        for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
        return Rat(Int(digits), den);
    }
    return Rat(Int(text));
}

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semiautomatic grid arithmetic"};
    app.require_subcommand(1);

    std::string grid_name, text_a, text_b, const_text, dot_path, svg_path;
    std::string relation, num_text = "{0:1}", den_text = "{0:1}", triangle_text, side_text;
    std::string rect_text, prec_text = "1e-12";
    int angle = 0, base_b = 2, area_k = 0;
    std::int64_t radius = 0, ell = 1, prime = 2;
    std::size_t cap = 1000000;
    double scale = 1.0;

    auto* grids = app.add_subcommand("grids", "list or validate grid instances");
    auto* grids_list = grids->add_subcommand("list", "list the shipped grids");
    auto* grids_validate = grids->add_subcommand("validate", "validate a grid");
    grids_validate->add_option("--grid", grid_name, "grid name or .json path")->required();
    grids->require_subcommand(1);

    auto* norm = app.add_subcommand("normalize", "reduce digits into the grid bound");
    norm->add_option("--grid", grid_name)->required();
    norm->add_option("digits", text_a)->required();

    auto* sign_cmd = app.add_subcommand("sign", "sign of a digit vector");
    sign_cmd->add_option("--grid", grid_name)->required();
    sign_cmd->add_option("digits", text_a)->required();

    auto* cmp_cmd = app.add_subcommand("cmp", "compare two numbers");
    cmp_cmd->add_option("--grid", grid_name)->required();
    cmp_cmd->add_option("p", text_a)->required();
    cmp_cmd->add_option("q", text_b)->required();

    auto* add_cmd = app.add_subcommand("add", "normalized sum");
    add_cmd->add_option("--grid", grid_name)->required();
    add_cmd->add_option("p", text_a)->required();
    add_cmd->add_option("q", text_b)->required();

    auto* mul_cmd = app.add_subcommand("mul", "multiply by a grid constant");
    mul_cmd->add_option("--grid", grid_name)->required();
    mul_cmd->add_option("--const", const_text, "constant digits")->required();
    mul_cmd->add_option("x", text_a)->required();

    auto* aut = app.add_subcommand("automaton", "compile a relation automaton");
    aut->add_option("--grid", grid_name)->required();
    aut->add_option("--relation", relation, "add|lt|eq|mulconst")->required();
    aut->add_option("--num", num_text, "numerator polynomial (mulconst)");
    aut->add_option("--den", den_text, "denominator polynomial (mulconst)");
    aut->add_option("--radius", radius, "digit radius per track");
    aut->add_option("--cap", cap, "state cap");
    aut->add_option("--dot", dot_path, "write DOT to this path");

    auto* geo = app.add_subcommand("geo", "geometry over the grid plane");
    auto* geo_rotate = geo->add_subcommand("rotate", "rotate a point");
    geo_rotate->add_option("--grid", grid_name)->required();
    geo_rotate->add_option("--angle", angle)->required();
    geo_rotate->add_option("point", text_a)->required();
    geo_rotate->add_option("--svg", svg_path);
    auto* geo_contains = geo->add_subcommand("contains", "triangle membership");
    geo_contains->add_option("--grid", grid_name)->required();
    geo_contains->add_option("--triangle", triangle_text, "\"(a);(b);(c)\"")->required();
    geo_contains->add_option("point", text_a)->required();
    geo_contains->add_option("--svg", svg_path);
    auto* geo_equi = geo->add_subcommand("equilateral", "third vertex over a base segment");
    geo_equi->add_option("--grid", grid_name)->required();
    geo_equi->add_option("--side", side_text, "plus|minus")->required();
    geo_equi->add_option("a", text_a)->required();
    geo_equi->add_option("b", text_b)->required();
    geo_equi->add_option("--svg", svg_path);
    auto* geo_rect = geo->add_subcommand("rect-area", "axis rectangle same-area check");
    geo_rect->add_option("--p", prime, "prime base")->required();
    geo_rect->add_option("--ell", ell, "area coefficient, coprime to p")->required();
    geo_rect->add_option("--k", area_k, "area exponent")->required();
    geo_rect->add_option("--rect", rect_text, "\"(ll);(ur)\"")->required();
    geo->require_subcommand(1);

    auto* omega = app.add_subcommand("omega", "omega-stream arithmetic");
    auto* omega_sign_cmd = omega->add_subcommand("sign", "sign of a truncated stream");
    omega_sign_cmd->add_option("--b", base_b)->required();
    omega_sign_cmd->add_option("stream", text_a)->required();
    auto* omega_cmp_cmd = omega->add_subcommand("cmp", "compare two streams");
    omega_cmp_cmd->add_option("--b", base_b)->required();
    omega_cmp_cmd->add_option("s1", text_a)->required();
    omega_cmp_cmd->add_option("s2", text_b)->required();
    omega->require_subcommand(1);

    auto* oracle_cmd = app.add_subcommand("oracle", "exact evaluation");
    auto* oracle_value = oracle_cmd->add_subcommand("value", "rational enclosure of a value");
    oracle_value->add_option("--grid", grid_name)->required();
    oracle_value->add_option("--prec", prec_text, "interval width, e.g. 1e-12");
    oracle_value->add_option("digits", text_a)->required();
    oracle_cmd->require_subcommand(1);

    auto* selftest_cmd = app.add_subcommand("selftest", "run the acceptance checks");
    selftest_cmd->add_option("--scale", scale, "sample-size scale (1 = full)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (grids_list->parsed()) {
            for (const GridSpec& g : shipped_grids()) {
                std::cout << g.name << "  u in [" << rat_str(g.u_lo) << ", " << rat_str(g.u_hi)
                          << "]  D=" << g.digit_bound << "  h=" << g.h() << "  constants:";
                if (g.p1) std::cout << " 1/" << *g.base_b;
                if (g.root)
                    std::cout << (g.root->power == 2 ? " sqrt(" : " cbrt(") << g.root->radicand
                              << ")";
                std::cout << "\n";
            }
        } else if (grids_validate->parsed()) {
            const GridSpec g = load_grid(grid_name);
            const ValidationReport r = validate_grid(g);
            for (const auto& c : r.checks)
                std::cout << (c.passed ? "ok   " : "FAIL ") << c.name
                          << (c.passed || c.detail.empty() ? "" : ": " + c.detail) << "\n";
            std::cout << "fuzz: " << r.fuzz_trials << " trials, " << r.fuzz_overshoots
                      << " overshoots, " << r.fuzz_failures << " failures\n";
            std::cout << (r.ok() ? "valid" : "INVALID") << "\n";
            return r.ok() ? 0 : 1;
        } else if (norm->parsed()) {
            const GridSpec g = load_grid(grid_name);
            std::cout << format_digits(normalize(g, parse_digits(text_a))) << "\n";
        } else if (sign_cmd->parsed()) {
            const GridSpec g = load_grid(grid_name);
            std::cout << to_string(sign_of(g, parse_number(g, text_a))) << "\n";
        } else if (cmp_cmd->parsed()) {
            const GridSpec g = load_grid(grid_name);
            std::cout << to_string(compare(g, parse_number(g, text_a), parse_number(g, text_b)))
                      << "\n";
        } else if (add_cmd->parsed()) {
            const GridSpec g = load_grid(grid_name);
            std::cout << format_digits(normalize(
                             g, add_digits(parse_number(g, text_a), parse_number(g, text_b))))
                      << "\n";
        } else if (mul_cmd->parsed()) {
            const GridSpec g = load_grid(grid_name);
            std::cout << format_digits(mul_by_grid_constant(g, parse_number(g, const_text),
                                                            parse_number(g, text_a)))
                      << "\n";
        } else if (aut->parsed()) {
            const GridSpec g = load_grid(grid_name);
            SyncDFA dfa;
            if (relation == "add") {
                std::vector<std::int64_t> radii;
                if (radius > 0) radii = {radius, radius, radius};
                dfa = compile_addition_checker(g, radii, cap);
            } else if (relation == "lt" || relation == "eq") {
                dfa = comparison_automaton(g, radius)->materialize(cap);
                // Collapse the sign classifier into an acceptor.
                dfa.kind = SyncDFA::LabelKind::Acceptor;
                for (auto& l : dfa.labels)
                    l = ((relation == "lt") ? l == -1 : l == 0) ? SyncDFA::kAccept
                                                                : SyncDFA::kReject;
            } else if (relation == "mulconst") {
                std::vector<std::int64_t> radii;
                if (radius > 0) radii = {radius, radius};
                dfa = compile_mulconst_checker(g, parse_digits(num_text),
                                               parse_digits(den_text), radii, cap);
            } else {
                std::cerr << "usage error: unknown relation '" << relation << "'\n";
                return 2;
            }
            dfa = dfa_minimize(dfa);
            std::cout << "states: " << dfa.state_count() << "\n";
            if (!dot_path.empty()) {
                std::ofstream out(dot_path);
                if (!out) throw Error("cannot write '" + dot_path + "'");
                out << export_dot(dfa);
                std::cout << "dot: " << dot_path << "\n";
            }
        } else if (geo_rotate->parsed()) {
            const GridSpec g = load_grid(grid_name);
            const Point p = parse_point(g, text_a);
            const Point r = rotate(g, p, angle);
            std::cout << format_point(r) << "\n";
            if (!svg_path.empty()) write_svg(g, svg_path, {}, {p, r});
        } else if (geo_contains->parsed()) {
            const GridSpec g = load_grid(grid_name);
            const std::vector<Point> vs = parse_points(g, triangle_text);
            if (vs.size() != 3) throw ParseError("expected three vertices", 0);
            const Point q = parse_point(g, text_a);
            const Triangle t{vs[0], vs[1], vs[2]};
            std::cout << (triangle_contains(g, t, q) ? "true" : "false") << "\n";
            if (!svg_path.empty()) write_svg(g, svg_path, {vs}, {q});
        } else if (geo_equi->parsed()) {
            const GridSpec g = load_grid(grid_name);
            const Point a = parse_point(g, text_a);
            const Point b = parse_point(g, text_b);
            const Point c = equilateral_third(
                g, a, b, side_text == "minus" ? EquilateralSide::Minus : EquilateralSide::Plus);
            std::cout << format_point(c) << "\n";
            if (!svg_path.empty()) write_svg(g, svg_path, {{a, b, c}}, {});
        } else if (geo_rect->parsed()) {
            const GridSpec g = make_grid(Db{static_cast<int>(prime)});
            const std::vector<Point> ps = parse_points(g, rect_text);
            if (ps.size() != 2) throw ParseError("expected \"(ll);(ur)\"", 0);
            const AxisRect r = make_axis_rect(g, ps[0], ps[1]);
            std::cout << (rect_same_area(g, r, ell, area_k) ? "true" : "false") << "\n";
        } else if (omega_sign_cmd->parsed()) {
            const OmegaSpec spec = make_omega_spec(base_b);
            std::cout << to_string(omega_sign(spec, parse_stream(text_a)).verdict) << "\n";
        } else if (omega_cmp_cmd->parsed()) {
            const OmegaSpec spec = make_omega_spec(base_b);
            const OmegaResult r = omega_compare(spec, parse_stream(text_a), parse_stream(text_b));
            switch (r.verdict) {
                case OmegaVerdict::DecidedNegative: std::cout << "Less\n"; break;
                case OmegaVerdict::DecidedZero: std::cout << "Equal\n"; break;
                case OmegaVerdict::DecidedPositive: std::cout << "Greater\n"; break;
                case OmegaVerdict::Undecided: std::cout << "UndecidedAtTruncation\n"; break;
            }
        } else if (oracle_value->parsed()) {
            const GridSpec g = load_grid(grid_name);
            const RatInterval v = approx_value(g, parse_number(g, text_a), parse_rat(prec_text));
            std::cout << "[" << rat_str(v.lo) << ", " << rat_str(v.hi) << "]\n";
        } else if (selftest_cmd->parsed()) {
            SelftestOptions opt;
            opt.scale = scale;
            opt.on_result = [](const CriterionResult& r) {
                std::cout << (r.passed ? "[PASS]" : "[FAIL]") << " criterion " << r.number << ": "
                          << r.name << (r.detail.empty() ? "" : " -- " + r.detail) << "\n"
                          << std::flush;
            };
            bool all = true;
            for (const auto& r : run_selftest(opt)) all = all && r.passed;
            std::cout << (all ? "selftest passed" : "selftest FAILED") << "\n";
            return all ? 0 : 1;
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
