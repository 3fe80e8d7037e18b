#include "lf/poly.hpp"

#include <cctype>

namespace lf {

SeriesPoly series_poly(const FiniteField* F, const std::vector<Series>& coeffs) { return SeriesPoly(F, coeffs); }

SeriesPoly capped(const SeriesPoly& f, int M) {
    std::vector<Series> c;
    c.reserve(f.coeffs().size());
    for (const auto& a : f.coeffs()) c.push_back(a.capped(M));
    return SeriesPoly(f.ctx(), std::move(c));
}

bool is_monic(const SeriesPoly& f) {
    return !f.is_zero() && f.lead().is_exact() && f.lead() == Series::one(f.ctx());
}

bool is_exact(const SeriesPoly& f) {
    for (const auto& a : f.coeffs())
        if (!a.is_exact()) return false;
    return true;
}

namespace {

bool single_monomial(const Series& s) {
    return s.is_exact() && s.raw().size() == 1;
}

std::string power(const std::string& var, int k) {
    if (k == 0) return "";
    return k == 1 ? var : var + "^" + std::to_string(k);
}

}  // namespace

std::string to_string(const SeriesPoly& f, const std::string& var) {
    if (f.is_zero()) return "0";
    std::string out;
    for (int k = f.degree(); k >= 0; --k) {
        const Series& c = f.coeffs()[k];
        if (c.is_exact_zero()) continue;
        std::string term;
        if (k > 0 && c.is_exact() && c == Series::one(f.ctx())) {
            term = power(var, k);
        } else {
            std::string cs = c.to_string();
            if (!single_monomial(c)) cs = "(" + cs + ")";
            term = k == 0 ? cs : cs + "*" + power(var, k);
        }
        if (!out.empty()) out += " + ";
        out += term;
    }
    return out;
}

std::string to_list_string(const SeriesPoly& f) {
    std::string out = "[";
    for (int k = 0; k <= f.degree(); ++k) {
        if (k) out += ", ";
        out += f.coeffs()[k].to_string();
    }
    return out + "]";
}

namespace {

class PolyParser {
public:
    PolyParser(const FiniteField* F, std::string_view text) : F_(F), s_(text) {}

    SeriesPoly run() {
        skip();
        if (peek() == '[') return parse_list();
        SeriesPoly acc(F_);
        int prec = kExact;
        bool first = true;
        while (true) {
            skip();
            if (pos_ >= s_.size()) break;
            bool negative = false;
            if (peek() == '+' || peek() == '-') {
                negative = peek() == '-';
                ++pos_;
                skip();
            } else if (!first) {
                error("expected '+' or '-'");
            }
            first = false;
            if (peek() == 'O') {
                std::size_t start = pos_;
                while (pos_ < s_.size() && s_[pos_] != ')') ++pos_;
                if (pos_ >= s_.size()) error("unterminated O(...)");
                ++pos_;
                Series o = parse_series(F_, s_.substr(start, pos_ - start));
                prec = std::min(prec, o.precision());
                continue;
            }
            SeriesPoly t = parse_term();
            acc = negative ? acc - t : acc + t;
        }
        if (first) error("empty polynomial");
        if (prec < kExact) {
            std::vector<Series> c = acc.coeffs();
            c.resize(std::max<std::size_t>(c.size(), 1), Series::zero(F_));
            for (auto& a : c) a = a.capped(prec);
            return SeriesPoly(F_, std::move(c));
        }
        return acc;
    }

private:
    [[noreturn]] void error(const std::string& msg) const {
        fail(ErrorKind::Parse, "polynomial parse error at offset " + std::to_string(pos_) + ": " + msg);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    // Scans to the matching close bracket; returns the inner text.
    std::string_view balanced(char open, char close) {
        int depth = 0;
        std::size_t start = pos_;
        for (; pos_ < s_.size(); ++pos_) {
            if (s_[pos_] == open) ++depth;
            if (s_[pos_] == close && --depth == 0) {
                ++pos_;
                return s_.substr(start + 1, pos_ - start - 2);
            }
        }
        error("unbalanced brackets");
    }

    SeriesPoly parse_list() {
        std::string_view inner = balanced('[', ']');
        skip();
        if (pos_ != s_.size()) error("trailing characters after list");
        std::vector<Series> c;
        int depth = 0;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= inner.size(); ++i) {
            if (i == inner.size() || (inner[i] == ',' && depth == 0)) {
                std::string_view item = inner.substr(start, i - start);
                if (item.find_first_not_of(" \t\n") != std::string_view::npos) c.push_back(parse_series(F_, item));
                start = i + 1;
                continue;
            }
            if (inner[i] == '[' || inner[i] == '(') ++depth;
            if (inner[i] == ']' || inner[i] == ')') --depth;
        }
        return SeriesPoly(F_, std::move(c));
    }

    int parse_exponent() {
        skip();
        if (peek() != '^') return 1;
        ++pos_;
        skip();
        bool paren = peek() == '(';
        if (paren) ++pos_;
        skip();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) error("expected exponent");
        int v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + (s_[pos_++] - '0');
        skip();
        if (paren) {
            if (peek() != ')') error("expected ')'");
            ++pos_;
        }
        return neg ? -v : v;
    }

    SeriesPoly parse_term() {
        SeriesPoly acc = SeriesPoly::constant(F_, Series::one(F_));
        bool any = false;
        while (true) {
            skip();
            char c = peek();
            if (c == '(') {
                acc = acc * PolyParser(F_, balanced('(', ')')).run();
            } else if (c == '[' || std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t start = pos_;
                if (c == '[') {
                    balanced('[', ']');
                } else {
                    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
                }
                acc = parse_series(F_, s_.substr(start, pos_ - start)) * acc;
            } else if (c == 'T') {
                ++pos_;
                acc = Series::monomial(F_, 1, parse_exponent()) * acc;
            } else if (c == 'x') {
                ++pos_;
                int e = parse_exponent();
                if (e < 0) error("negative power of x");
                acc = acc.shifted(e);
            } else {
                break;
            }
            any = true;
            skip();
            if (peek() == '*') ++pos_;
        }
        if (!any) error("expected a term");
        return acc;
    }

    const FiniteField* F_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

SeriesPoly parse_poly(const FiniteField* F, std::string_view text) { return PolyParser(F, text).run(); }

}  // namespace lf
