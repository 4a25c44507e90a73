#include "semigrid/digits.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>
#include <vector>

#include "semigrid/errors.hpp"

namespace semigrid {

LaurentDigits::LaurentDigits(std::initializer_list<std::pair<const int, Int>> entries) {
    for (const auto& [k, v] : entries) set(k, v);
}

LaurentDigits LaurentDigits::integer(Int n) {
    LaurentDigits d;
    d.set(0, std::move(n));
    return d;
}

int LaurentDigits::lo() const { return coeffs_.begin()->first; }
int LaurentDigits::hi() const { return coeffs_.rbegin()->first; }

const Int& LaurentDigits::at(int k) const {
    static const Int kZero = 0;
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? kZero : it->second;
}

void LaurentDigits::set(int k, Int v) {
    if (v == 0) {
        coeffs_.erase(k);
    } else {
        coeffs_[k] = std::move(v);
    }
}

void LaurentDigits::add_at(int k, const Int& v) {
    if (v == 0) return;
    auto [it, inserted] = coeffs_.try_emplace(k, v);
    if (!inserted) {
        it->second += v;
        if (it->second == 0) coeffs_.erase(it);
    }
}

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    void skip_ws() {
        while (!done() && std::isspace(static_cast<unsigned char>(peek()))) ++pos;
    }
    void expect(char c, const char* what) {
        skip_ws();
        if (done() || peek() != c) throw ParseError(std::string("expected ") + what, pos);
        ++pos;
    }
    bool try_consume(char c) {
        skip_ws();
        if (!done() && peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    Int parse_int(const char* what) {
        skip_ws();
        std::size_t start = pos;
        if (!done() && (peek() == '+' || peek() == '-')) ++pos;
        std::size_t digits_start = pos;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
        if (pos == digits_start) throw ParseError(std::string("expected ") + what, start);
        return Int(std::string(text.substr(start, pos - start)));
    }

    int parse_exponent() {
        Int v = parse_int("exponent");
        return static_cast<int>(to_int64_checked(v, "exponent"));
    }
};

LaurentDigits parse_compact(Cursor& c) {
    LaurentDigits out;
    c.expect('{', "'{'");
    if (c.try_consume('}')) return out;
    while (true) {
        std::size_t entry_pos = c.pos;
        int k = c.parse_exponent();
        c.expect(':', "':'");
        Int a = c.parse_int("coefficient");
        if (out.coeffs().count(k) != 0) throw ParseError("duplicate exponent", entry_pos);
        out.set(k, std::move(a));
        if (c.try_consume('}')) return out;
        c.expect(',', "',' or '}'");
    }
}

LaurentDigits parse_pretty(Cursor& c) {
    std::vector<Int> before;  // most significant first, ending at exponent 0
    std::vector<Int> after;   // exponent -1 downward
    bool seen_dot = false;
    while (true) {
        c.skip_ws();
        if (c.done()) break;
        if (c.peek() == '[') {
            ++c.pos;
            Int a = c.parse_int("digit");
            c.expect(']', "']'");
            (seen_dot ? after : before).push_back(std::move(a));
        } else if (c.peek() == '.') {
            if (seen_dot) throw ParseError("second radix dot", c.pos);
            seen_dot = true;
            ++c.pos;
        } else {
            throw ParseError("expected '[' or '.'", c.pos);
        }
    }
    if (before.empty() && after.empty()) throw ParseError("empty digit string", c.pos);
    if (seen_dot && after.empty()) throw ParseError("digits required after radix dot", c.pos);
    LaurentDigits out;
    int k = static_cast<int>(before.size()) - 1;
    for (auto& a : before) out.set(k--, std::move(a));
    k = -1;
    for (auto& a : after) out.set(k--, std::move(a));
    return out;
}

}  // namespace

LaurentDigits parse_digits(std::string_view text) {
    Cursor c{text};
    c.skip_ws();
    if (c.done()) throw ParseError("empty input", 0);
    LaurentDigits out = c.peek() == '{' ? parse_compact(c) : parse_pretty(c);
    c.skip_ws();
    if (!c.done()) throw ParseError("trailing characters", c.pos);
    return out;
}

std::string format_digits(const LaurentDigits& p, DigitStyle style) {
    std::ostringstream os;
    if (style == DigitStyle::Compact) {
        os << '{';
        bool first = true;
        // Exponents descending.
        for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
            if (!first) os << ',';
            first = false;
            os << it->first << ':' << it->second;
        }
        os << '}';
        return os.str();
    }
    if (p.is_zero()) return "[0]";
    int hi = std::max(p.hi(), 0);
    int lo = std::min(p.lo(), 0);
    for (int k = hi; k >= lo; --k) {
        if (k == -1) os << '.';
        os << '[' << p.at(k) << ']';
    }
    return os.str();
}

LaurentDigits add_digits(const LaurentDigits& p, const LaurentDigits& q) {
    LaurentDigits out = p;
    for (const auto& [k, a] : q.coeffs()) out.add_at(k, a);
    return out;
}

LaurentDigits sub_digits(const LaurentDigits& p, const LaurentDigits& q) {
    return add_digits(p, negate_digits(q));
}

LaurentDigits negate_digits(const LaurentDigits& p) {
    LaurentDigits out;
    for (const auto& [k, a] : p.coeffs()) out.set(k, -a);
    return out;
}

LaurentDigits shift_digits(const LaurentDigits& p, int h) {
    LaurentDigits out;
    for (const auto& [k, a] : p.coeffs()) out.set(k + h, a);
    return out;
}

LaurentDigits scale_digits(const LaurentDigits& p, const Int& m) {
    LaurentDigits out;
    if (m == 0) return out;
    for (const auto& [k, a] : p.coeffs()) out.set(k, a * m);
    return out;
}

LaurentDigits poly_mul_digits(const LaurentDigits& p, const LaurentDigits& q) {
    LaurentDigits out;
    for (const auto& [i, a] : p.coeffs())
        for (const auto& [j, b] : q.coeffs()) out.add_at(i + j, a * b);
    return out;
}

Int one_norm(const LaurentDigits& p) {
    Int n = 0;
    for (const auto& [k, a] : p.coeffs()) n += abs(a);
    return n;
}

Int max_abs_digit(const LaurentDigits& p) {
    Int n = 0;
    for (const auto& [k, a] : p.coeffs()) {
        Int v = abs(a);
        if (v > n) n = v;
    }
    return n;
}

LaurentDigits transcribe_decimal(std::string_view text, int base) {
    if (base < 2 || base > 10) throw ParseError("base must be between 2 and 10", 0);
    std::vector<int> before;
    std::vector<int> after;
    bool seen_dot = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (ch == '.') {
            if (seen_dot) throw ParseError("second radix dot", i);
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            int d = ch - '0';
            if (d >= base) throw ParseError("digit out of range for base", i);
            (seen_dot ? after : before).push_back(d);
        } else {
            throw ParseError("expected digit or '.'", i);
        }
    }
    if (before.empty() && after.empty()) throw ParseError("empty literal", 0);
    LaurentDigits out;
    int k = static_cast<int>(before.size()) - 1;
    for (int d : before) out.set(k--, d);
    k = -1;
    for (int d : after) out.set(k--, d);
    return out;
}

}  // namespace semigrid
