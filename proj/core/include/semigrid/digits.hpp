// Finite-support integer digit vectors: values of the form sum a_k u^k for an
// unspecified base u.  This is the universal number representation of the
// library; everything here is plain coefficient bookkeeping with no knowledge
// of the base.

#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "semigrid/numeric.hpp"

namespace semigrid {

class LaurentDigits {
  public:
    using Coeffs = std::map<int, Int>;

    LaurentDigits() = default;
    LaurentDigits(std::initializer_list<std::pair<const int, Int>> entries);

    static LaurentDigits integer(Int n);

    bool is_zero() const { return coeffs_.empty(); }
    // Smallest/largest exponent with nonzero coefficient; only valid when nonzero.
    int lo() const;
    int hi() const;

    // Coefficient at exponent k; zero when absent.
    const Int& at(int k) const;
    // Sets a coefficient, erasing the entry when v == 0 so that no stored
    // coefficient is ever zero and structural equality is meaningful.
    void set(int k, Int v);
    void add_at(int k, const Int& v);

    const Coeffs& coeffs() const { return coeffs_; }
    std::size_t support_size() const { return coeffs_.size(); }

    bool operator==(const LaurentDigits&) const = default;

  private:
    Coeffs coeffs_;
};

enum class DigitStyle { Compact, Pretty };

// Accepts both external formats: compact "{k:a,k':a'}" and pretty
// "[a][b].[c]" with a literal dot between exponents 0 and -1.
LaurentDigits parse_digits(std::string_view text);
std::string format_digits(const LaurentDigits& p, DigitStyle style = DigitStyle::Compact);

LaurentDigits add_digits(const LaurentDigits& p, const LaurentDigits& q);
LaurentDigits sub_digits(const LaurentDigits& p, const LaurentDigits& q);
LaurentDigits negate_digits(const LaurentDigits& p);
// Multiplication by u^h: moves a_k to position k+h.
LaurentDigits shift_digits(const LaurentDigits& p, int h);
LaurentDigits scale_digits(const LaurentDigits& p, const Int& m);
// Exact convolution, i.e. the product of p and q as Laurent polynomials in u.
LaurentDigits poly_mul_digits(const LaurentDigits& p, const LaurentDigits& q);

// Sum of absolute coefficient values.
Int one_norm(const LaurentDigits& p);
Int max_abs_digit(const LaurentDigits& p);

// Transcribes a nonnegative literal like "2358.225" digit by digit (one digit
// per position, most significant first).  Base must be <= 10.
LaurentDigits transcribe_decimal(std::string_view text, int base = 10);

}  // namespace semigrid
