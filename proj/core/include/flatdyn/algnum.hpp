#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace flatdyn {

using Integer = mpz_class;
using Rational = mpq_class;

/**
 * The radicands generating a real multi-quadratic field Q(sqrt(d_1), ..., sqrt(d_k)).
 *
 * Radicands are square-free, pairwise coprime and ascending, so the
 * products over subsets form a Q-basis of dimension 2^k. An empty list is Q.
 */
struct FieldSpec {
    std::vector<std::uint64_t> radicands;

    bool is_rational() const { return radicands.empty(); }
    std::size_t degree() const { return std::size_t{1} << radicands.size(); }

    // Smallest spec whose field contains both arguments.
    static FieldSpec join(const FieldSpec& a, const FieldSpec& b);

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Enclosure [lo, hi] of a real number with decimal endpoints at a fixed digit count.
struct DecimalInterval {
    Rational lo;
    Rational hi;
    int digits = 0;

    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    Rational width() const { return hi - lo; }
    std::string lo_string() const;
    std::string hi_string() const;
    std::string to_string() const;  // "[lo, hi]"
};

/**
 * Exact element of a real multi-quadratic field.
 *
 * Stored as sum_k q_k * sqrt(k) over distinct square-free keys k (k = 1 is the
 * rational part). The set {sqrt(k)} over square-free k is linearly independent
 * over Q, so the sparse term list is a canonical form: equality of values is
 * equality of term lists. Values are immutable after construction.
 */
class AlgNum {
public:
    struct Term {
        std::uint64_t radicand;  // square-free, 1 for the rational part
        Rational coeff;          // never zero

        friend bool operator==(const Term&, const Term&) = default;
    };

    AlgNum() = default;
    AlgNum(long value);  // NOLINT(google-explicit-constructor)
    AlgNum(const Integer& value);  // NOLINT(google-explicit-constructor)
    AlgNum(const Rational& value);  // NOLINT(google-explicit-constructor)

    // sqrt(m) for m >= 0, with square factors pulled out (sqrt(8) = 2*sqrt(2)).
    static AlgNum sqrt(const Integer& m);
    static AlgNum from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    Rational rational_part() const { return coefficient(1); }
    Rational coefficient(std::uint64_t radicand) const;

    // Minimal field containing the value.
    FieldSpec field() const;

    AlgNum operator-() const;
    friend AlgNum operator+(const AlgNum& a, const AlgNum& b);
    friend AlgNum operator-(const AlgNum& a, const AlgNum& b);
    friend AlgNum operator*(const AlgNum& a, const AlgNum& b);
    friend AlgNum operator/(const AlgNum& a, const AlgNum& b);
    AlgNum& operator+=(const AlgNum& b) { return *this = *this + b; }
    AlgNum& operator-=(const AlgNum& b) { return *this = *this - b; }
    AlgNum& operator*=(const AlgNum& b) { return *this = *this * b; }
    AlgNum& operator/=(const AlgNum& b) { return *this = *this / b; }

    // Throws DomainError on zero.
    AlgNum inverse() const;

    // Image under the automorphism sqrt(d) -> -sqrt(d); d must be an element
    // of a coprime radicand basis of the value's field.
    AlgNum conjugate(std::uint64_t d) const;

    int sign() const;
    DecimalInterval approx(int digits) const;
    double to_double() const;

    // Re-parseable text in the expression grammar, e.g. "1 - 3/2*sqrt(6)".
    std::string to_string() const;

    friend bool operator==(const AlgNum&, const AlgNum&) = default;

private:
    std::vector<Term> terms_;  // ascending radicand, no zero coefficients
};

/// Interval with exact rational endpoints from sqrt bounds at 2^-bits resolution.
struct RationalInterval {
    Rational lo;
    Rational hi;
};
RationalInterval enclose(const AlgNum& a, unsigned bits);

inline int sign(const AlgNum& a) { return a.sign(); }
inline AlgNum inv(const AlgNum& a) { return a.inverse(); }
inline int compare(const AlgNum& a, const AlgNum& b) { return (a - b).sign(); }

inline bool operator<(const AlgNum& a, const AlgNum& b) { return compare(a, b) < 0; }
inline bool operator>(const AlgNum& a, const AlgNum& b) { return compare(a, b) > 0; }
inline bool operator<=(const AlgNum& a, const AlgNum& b) { return compare(a, b) <= 0; }
inline bool operator>=(const AlgNum& a, const AlgNum& b) { return compare(a, b) >= 0; }

AlgNum abs(const AlgNum& a);

std::ostream& operator<<(std::ostream& os, const AlgNum& a);

// Split m >= 0 as root^2 * core with core square-free. Requires m < 2^63.
struct SquareFreeSplit {
    Integer root;
    std::uint64_t core;
};
SquareFreeSplit square_free_split(const Integer& m);

std::string rational_to_string(const Rational& q);

}  // namespace flatdyn
