#include "flatdyn/algnum.hpp"

#include "flatdyn/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace flatdyn {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t p = 0;
    if (__builtin_mul_overflow(a, b, &p))
        throw DomainError("radicand product exceeds 64 bits");
    return p;
}

// Coprime refinement of a set of square-free integers: every input is a
// product of distinct output elements.
std::vector<std::uint64_t> coprime_basis(std::vector<std::uint64_t> xs) {
    xs.erase(std::remove(xs.begin(), xs.end(), 1u), xs.end());
    bool changed = true;
    while (changed) {
        changed = false;
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        for (std::size_t i = 0; i < xs.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < xs.size() && !changed; ++j) {
                std::uint64_t g = std::gcd(xs[i], xs[j]);
                if (g == 1)
                    continue;
                std::uint64_t a = xs[i] / g;
                std::uint64_t b = xs[j] / g;
                xs.erase(xs.begin() + static_cast<std::ptrdiff_t>(j));
                xs.erase(xs.begin() + static_cast<std::ptrdiff_t>(i));
                for (std::uint64_t v : {a, b, g})
                    if (v != 1)
                        xs.push_back(v);
                changed = true;
            }
        }
    }
    return xs;
}

Integer to_integer(std::uint64_t v) {
    Integer z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return z;
}

Rational pow10(int digits) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    return Rational(p);
}

Integer floor_q(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil_q(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

std::string decimal_string(const Rational& q, int digits) {
    // q is an exact multiple of 10^-digits here.
    Rational scaled = q * pow10(digits);
    scaled.canonicalize();
    Integer n = scaled.get_num();
    bool negative = n < 0;
    if (negative)
        n = -n;
    std::string s = n.get_str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits))
            s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), 1, '.');
    }
    return negative ? "-" + s : s;
}

}  // namespace

FieldSpec FieldSpec::join(const FieldSpec& a, const FieldSpec& b) {
    std::vector<std::uint64_t> all = a.radicands;
    all.insert(all.end(), b.radicands.begin(), b.radicands.end());
    return FieldSpec{coprime_basis(std::move(all))};
}

std::string DecimalInterval::lo_string() const { return decimal_string(lo, digits); }
std::string DecimalInterval::hi_string() const { return decimal_string(hi, digits); }
std::string DecimalInterval::to_string() const { return "[" + lo_string() + ", " + hi_string() + "]"; }

std::string rational_to_string(const Rational& q) {
    return q.get_str();
}

SquareFreeSplit square_free_split(const Integer& m) {
    if (m < 0)
        throw DomainError("square root of a negative integer");
    if (m == 0)
        return {Integer(0), 1};
    if (mpz_sizeinbase(m.get_mpz_t(), 2) > 63)
        throw DomainError("square root argument exceeds 2^63");
    static_assert(sizeof(unsigned long) >= sizeof(std::uint64_t));
    std::uint64_t rest = m.get_ui();
    std::uint64_t root = 1;
    std::uint64_t core = 1;
    // Trial division up to the cube root leaves at most two prime factors.
    for (std::uint64_t p = 2; p * p * p <= rest; p += (p == 2 ? 1 : 2)) {
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        for (int i = 0; i + 1 < e; i += 2)
            root *= p;
        if (e % 2 == 1)
            core *= p;
    }
    if (rest > 1) {
        Integer r = to_integer(rest);
        if (mpz_perfect_square_p(r.get_mpz_t())) {
            Integer s;
            mpz_sqrt(s.get_mpz_t(), r.get_mpz_t());
            return {to_integer(root) * s, core};
        }
        core = checked_mul(core, rest);
    }
    return {to_integer(root), core};
}

AlgNum::AlgNum(long value) : AlgNum(Rational(value)) {}
AlgNum::AlgNum(const Integer& value) : AlgNum(Rational(value)) {}
AlgNum::AlgNum(const Rational& value) {
    if (value != 0)
        terms_.push_back({1, value});
}

AlgNum AlgNum::sqrt(const Integer& m) {
    SquareFreeSplit s = square_free_split(m);
    if (s.root == 0)
        return {};
    return from_terms({{s.core, Rational(s.root)}});
}

AlgNum AlgNum::from_terms(std::vector<Term> terms) {
    std::map<std::uint64_t, Rational> acc;
    for (auto& t : terms)
        acc[t.radicand] += t.coeff;
    AlgNum out;
    for (auto& [k, q] : acc) {
        if (q != 0) {
            q.canonicalize();
            out.terms_.push_back({k, q});
        }
    }
    return out;
}

bool AlgNum::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].radicand == 1);
}

Rational AlgNum::coefficient(std::uint64_t radicand) const {
    for (const auto& t : terms_)
        if (t.radicand == radicand)
            return t.coeff;
    return Rational(0);
}

FieldSpec AlgNum::field() const {
    std::vector<std::uint64_t> keys;
    keys.reserve(terms_.size());
    for (const auto& t : terms_)
        keys.push_back(t.radicand);
    return FieldSpec{coprime_basis(std::move(keys))};
}

AlgNum AlgNum::operator-() const {
    AlgNum out = *this;
    for (auto& t : out.terms_)
        t.coeff = -t.coeff;
    return out;
}

AlgNum operator+(const AlgNum& a, const AlgNum& b) {
    AlgNum out;
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
        if (j == b.terms_.end() || (i != a.terms_.end() && i->radicand < j->radicand)) {
            out.terms_.push_back(*i++);
        } else if (i == a.terms_.end() || j->radicand < i->radicand) {
            out.terms_.push_back(*j++);
        } else {
            Rational q = i->coeff + j->coeff;
            if (q != 0)
                out.terms_.push_back({i->radicand, q});
            ++i;
            ++j;
        }
    }
    return out;
}

AlgNum operator-(const AlgNum& a, const AlgNum& b) { return a + (-b); }

AlgNum operator*(const AlgNum& a, const AlgNum& b) {
    if (a.is_zero() || b.is_zero())
        return {};
    if (a.terms_.size() == 1 && a.terms_[0].radicand == 1) {
        AlgNum out = b;
        for (auto& t : out.terms_)
            t.coeff *= a.terms_[0].coeff;
        return out;
    }
    if (b.terms_.size() == 1 && b.terms_[0].radicand == 1)
        return b * a;
    std::map<std::uint64_t, Rational> acc;
    for (const auto& s : a.terms_) {
        for (const auto& t : b.terms_) {
            // sqrt(gx) * sqrt(gy) = g * sqrt(xy) with g = gcd.
            std::uint64_t g = std::gcd(s.radicand, t.radicand);
            std::uint64_t key = checked_mul(s.radicand / g, t.radicand / g);
            Rational q = s.coeff * t.coeff;
            if (g != 1)
                q *= Rational(to_integer(g));
            acc[key] += q;
        }
    }
    AlgNum out;
    for (auto& [k, q] : acc)
        if (q != 0)
            out.terms_.push_back({k, q});
    return out;
}

AlgNum operator/(const AlgNum& a, const AlgNum& b) { return a * b.inverse(); }

AlgNum AlgNum::conjugate(std::uint64_t d) const {
    AlgNum out = *this;
    for (auto& t : out.terms_)
        if (t.radicand % d == 0)
            t.coeff = -t.coeff;
    return out;
}

AlgNum AlgNum::inverse() const {
    if (is_zero())
        throw DomainError("inverse of zero");
    // Multiply through by the conjugate over each generator in turn; every
    // step removes one radicand from the denominator.
    AlgNum denom = *this;
    AlgNum numer(1L);
    for (std::uint64_t d : field().radicands) {
        AlgNum c = denom.conjugate(d);
        numer *= c;
        denom *= c;
    }
    if (!denom.is_rational() || denom.is_zero())
        throw DomainError("conjugation tower did not rationalize the denominator");
    return numer * AlgNum(Rational(1) / denom.rational_part());
}

RationalInterval enclose(const AlgNum& a, unsigned bits) {
    RationalInterval out{Rational(0), Rational(0)};
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
    Rational ulp(Integer(1), scale);
    for (const auto& t : a.terms()) {
        if (t.radicand == 1) {
            out.lo += t.coeff;
            out.hi += t.coeff;
            continue;
        }
        Integer k = to_integer(t.radicand) * scale * scale;
        Integer r;
        mpz_sqrt(r.get_mpz_t(), k.get_mpz_t());
        Rational lo(r, scale);
        lo.canonicalize();
        Rational hi = lo + ulp;
        if (t.coeff > 0) {
            out.lo += t.coeff * lo;
            out.hi += t.coeff * hi;
        } else {
            out.lo += t.coeff * hi;
            out.hi += t.coeff * lo;
        }
    }
    return out;
}

int AlgNum::sign() const {
    // Exact zero is decided by the canonical form before any refinement.
    if (is_zero())
        return 0;
    if (is_rational())
        return sgn(terms_[0].coeff);
    for (unsigned bits = 32;; bits *= 2) {
        RationalInterval iv = enclose(*this, bits);
        if (iv.lo > 0)
            return 1;
        if (iv.hi < 0)
            return -1;
    }
}

DecimalInterval AlgNum::approx(int digits) const {
    if (digits < 1)
        throw DomainError("approx requires digits >= 1");
    Rational p = pow10(digits);
    if (is_rational()) {
        Rational v = rational_part();
        Rational lo(floor_q(v * p), p.get_num());
        Rational hi(ceil_q(v * p), p.get_num());
        lo.canonicalize();
        hi.canonicalize();
        return {lo, hi, digits};
    }
    // Irrational values never sit on the decimal grid, so refinement ends
    // once both endpoints fall in the same grid cell.
    for (unsigned bits = static_cast<unsigned>(digits) * 4 + 16;; bits *= 2) {
        RationalInterval iv = enclose(*this, bits);
        Integer fl = floor_q(iv.lo * p);
        Integer fh = floor_q(iv.hi * p);
        if (fl == fh) {
            Rational lo(fl, p.get_num());
            Rational hi(fl + 1, p.get_num());
            lo.canonicalize();
            hi.canonicalize();
            return {lo, hi, digits};
        }
    }
}

double AlgNum::to_double() const {
    if (is_rational())
        return rational_part().get_d();
    RationalInterval iv = enclose(*this, 80);
    return Rational((iv.lo + iv.hi) / 2).get_d();
}

std::string AlgNum::to_string() const {
    if (is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        Rational q = t.coeff;
        if (!first) {
            out += q < 0 ? " - " : " + ";
            if (q < 0)
                q = -q;
        }
        first = false;
        if (t.radicand == 1) {
            out += q.get_str();
            continue;
        }
        std::string root = "sqrt(" + std::to_string(t.radicand) + ")";
        if (q == 1)
            out += root;
        else if (q == -1)
            out += "-" + root;
        else
            out += q.get_str() + "*" + root;
    }
    return out;
}

AlgNum abs(const AlgNum& a) { return a.sign() < 0 ? -a : a; }

std::ostream& operator<<(std::ostream& os, const AlgNum& a) { return os << a.to_string(); }

}  // namespace flatdyn
