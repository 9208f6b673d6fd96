#include "flatdyn/parser.hpp"

#include "flatdyn/errors.hpp"

#include <cctype>
#include <string>

namespace flatdyn {

namespace {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    AlgNum parse() {
        AlgNum v = expr();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return v;
    }

private:
    AlgNum expr() {
        AlgNum v = term();
        for (;;) {
            skip_ws();
            if (accept('+'))
                v += term();
            else if (accept('-'))
                v -= term();
            else
                return v;
        }
    }

    AlgNum term() {
        AlgNum v = factor();
        for (;;) {
            skip_ws();
            if (accept('*')) {
                v *= factor();
            } else if (peek() == '/') {
                std::size_t at = pos_++;
                AlgNum d = factor();
                if (d.is_zero())
                    fail_at(at, "division by zero");
                v /= d;
            } else {
                return v;
            }
        }
    }

    AlgNum factor() {
        skip_ws();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (c == '(') {
            ++pos_;
            AlgNum v = expr();
            skip_ws();
            expect(')');
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return AlgNum(integer());
        if (text_.substr(pos_, 4) == "sqrt") {
            pos_ += 4;
            skip_ws();
            expect('(');
            skip_ws();
            std::size_t at = pos_;
            if (accept('-')) {
                skip_ws();
                if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    Integer m = integer();
                    if (m != 0)
                        fail_at(at, "square root of negative integer");
                }
                else
                    fail("expected integer");
                skip_ws();
                expect(')');
                return {};
            }
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                fail("expected integer inside sqrt");
            Integer m = integer();
            skip_ws();
            expect(')');
            try {
                return AlgNum::sqrt(m);
            } catch (const DomainError& e) {
                fail_at(at, e.what());
            }
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    Integer integer() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    bool accept(char c) {
        if (peek() != c)
            return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= text_.size())
                fail(std::string("expected '") + c + "' before end of input");
            fail(std::string("expected '") + c + "'");
        }
    }

    [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }
    [[noreturn]] void fail_at(std::size_t at, const std::string& what) const {
        throw ParseError(what, at + 1);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

AlgNum parse_algnum(std::string_view text) { return ExprParser(text).parse(); }

}  // namespace flatdyn
