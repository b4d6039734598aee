// Recursive-descent parser for mobility expressions and model spec files.

#include "blflux/error.hpp"
#include "blflux/models.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <system_error>

namespace blflux::models {

namespace {

class Parser {
public:
    Parser(std::string_view text, std::size_t offset) : text_(text), offset_(offset) {}

    ModelExpr parse_all() {
        ModelExpr e = expr();
        skip_space();
        if (pos_ < text_.size()) {
            fail(std::string("unexpected '") + text_[pos_] + "'");
        }
        return e;
    }

private:
    std::string_view text_;
    std::size_t offset_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("syntax error: " + what, offset_ + pos_);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' before end of input");
            fail(std::string("expected '") + c + "', found '" + text_[pos_] + "'");
        }
    }

    ModelExpr expr() {
        std::vector<ModelExpr::Term> terms;
        const bool leading_minus = accept('-');
        terms.push_back({leading_minus, term()});
        for (;;) {
            if (accept('+')) {
                terms.push_back({false, term()});
            } else if (accept('-')) {
                terms.push_back({true, term()});
            } else {
                break;
            }
        }
        if (terms.size() == 1 && !leading_minus) return terms.front().expr;
        return ModelExpr::sum(std::move(terms));
    }

    ModelExpr term() {
        ModelExpr cur = factor();
        std::vector<ModelExpr> factors;  // open product chain
        for (;;) {
            if (accept('*')) {
                if (factors.empty()) factors.push_back(cur);
                factors.push_back(factor());
                cur = ModelExpr::product(factors);
            } else if (accept('/')) {
                ModelExpr den = factor();
                cur = ModelExpr::quotient(cur, den);
                factors.clear();
            } else {
                break;
            }
        }
        return cur;
    }

    ModelExpr factor() {
        ModelExpr b = base();
        if (accept('^')) {
            skip_space();
            const double p = number();
            return ModelExpr::power(b, p);
        }
        return b;
    }

    ModelExpr base() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return ModelExpr::constant(number());
        }
        if (c == '(') {
            ++pos_;
            ModelExpr e = expr();
            expect(')');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            const std::string_view ident = text_.substr(start, pos_ - start);
            if (ident == "s") return ModelExpr::variable();
            if (ident == "exp") return call_exp(start);
            pos_ = start;
            throw ParseError("unknown identifier '" + std::string(ident) + "'", offset_ + start);
        }
        fail(std::string("unexpected '") + c + "'");
    }

    ModelExpr call_exp(std::size_t name_pos) {
        expect('(');
        if (accept(')')) {
            throw ParseError("arity mismatch: exp expects 1 argument, got 0", offset_ + name_pos);
        }
        ModelExpr arg = expr();
        if (accept(',')) {
            throw ParseError("arity mismatch: exp expects 1 argument", offset_ + name_pos);
        }
        expect(')');
        return ModelExpr::exponential(arg);
    }

    double number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        };
        digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ == start || (pos_ == start + 1 && text_[start] == '.')) {
            pos_ = start;
            fail("expected a number");
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t save = pos_++;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            const std::size_t exp_start = pos_;
            digits();
            if (pos_ == exp_start) pos_ = save;  // 'e' was not an exponent
        }
        double value = 0.0;
        const char* first = text_.data() + start;
        const char* last = text_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
            pos_ = start;
            fail("invalid number '" + std::string(first, last) + "'");
        }
        return value;
    }
};

}  // namespace

ModelExpr parse(std::string_view text) { return Parser(text, 0).parse_all(); }

ModelSpec parse_spec(std::string_view text) {
    ModelSpec spec;
    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) line_end = text.size();
        std::string_view line = text.substr(line_start, line_end - line_start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        std::size_t first = 0;
        while (first < line.size() && std::isspace(static_cast<unsigned char>(line[first]))) ++first;
        if (first < line.size() && line[first] != '#') {
            const std::size_t eq = line.find('=');
            if (eq == std::string_view::npos) {
                throw ParseError("expected '<name> = <expression>'", line_start + first);
            }
            std::string_view key = line.substr(first, eq - first);
            while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) {
                key.remove_suffix(1);
            }
            const ModelExpr e = Parser(line.substr(eq + 1), line_start + eq + 1).parse_all();
            if (key == "m_a") {
                spec.m_a = e;
            } else if (key == "m_b") {
                spec.m_b = e;
            } else {
                throw ParseError("unknown key '" + std::string(key) + "'", line_start + first);
            }
        }
        if (line_end == text.size()) break;
        line_start = line_end + 1;
    }
    return spec;
}

}  // namespace blflux::models
