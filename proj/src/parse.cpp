#include "rforge/parse.hpp"

#include "rforge/errors.hpp"

#include <cctype>

namespace rforge {
namespace {

class Parser {
public:
    Parser(std::string_view text, const VarSetPtr& vars) : text_(text), vars_(vars) {}

    MultiPoly run() {
        MultiPoly p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("expected '+', '-', '*', '^' or end of input");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
        throw ParseError(pos_, what + ", found " + found);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool at_digit() const { return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])); }

    std::string digits() {
        const std::size_t start = pos_;
        while (at_digit()) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    MultiPoly expr() {
        MultiPoly acc = term();
        for (;;) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    MultiPoly term() {
        const bool negate = accept('-');
        MultiPoly acc = factor();
        while (accept('*')) acc *= factor();
        return negate ? -acc : acc;
    }

    MultiPoly factor() {
        MultiPoly b = base();
        if (accept('^')) {
            skip_ws();
            if (!at_digit()) fail("expected a non-negative integer exponent");
            const std::size_t at = pos_;
            const std::string e = digits();
            if (e.size() > 6) throw ParseError(at, "exponent too large");
            b = b.pow(static_cast<unsigned>(std::stoul(e)));
        }
        return b;
    }

    MultiPoly base() {
        skip_ws();
        if (pos_ >= text_.size()) fail("expected a number, identifier or '('");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rational q{Integer(digits())};
            const std::size_t save = pos_;
            if (accept('/')) {
                skip_ws();
                if (!at_digit()) fail("expected a positive integer denominator");
                const std::size_t at = pos_;
                Integer den(digits());
                if (den == 0) throw ParseError(at, "zero denominator");
                q /= Rational(den);
            } else {
                pos_ = save;
            }
            return MultiPoly::constant(vars_, q);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string name(text_.substr(start, pos_ - start));
            auto idx = vars_->find(name);
            if (!idx) throw ParseError(start, "unknown identifier '" + name + "'");
            return MultiPoly::variable(vars_, *idx);
        }
        fail("expected a number, identifier or '('");
    }

    std::string_view text_;
    const VarSetPtr& vars_;
    std::size_t pos_ = 0;
};

} // namespace

MultiPoly parse_poly(std::string_view text, const VarSetPtr& vars) {
    if (!vars) throw UsageError("parse_poly needs a VarSet");
    return Parser(text, vars).run();
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        if (comma == std::string_view::npos) comma = text.size();
        std::string_view item = text.substr(start, comma - start);
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
        while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
        if (!item.empty()) out.emplace_back(item);
        start = comma + 1;
    }
    return out;
}

} // namespace rforge
