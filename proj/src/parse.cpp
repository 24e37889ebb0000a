#include "keller/parse.hpp"

#include <cctype>
#include <sstream>

namespace keller {

namespace {

class Parser {
public:
    Parser(std::string_view text, const VarsPtr& vars, const Ring& ring)
        : text_(text), vars_(vars), ring_(ring) {}

    Polynomial parse() {
        Polynomial p = parse_poly();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool eof() { return pos_ >= text_.size(); }
    char peek() { return text_[pos_]; }
    [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, pos_); }

    Polynomial parse_poly() {
        Polynomial acc(ring_, vars_);
        bool neg = false;
        skip_ws();
        if (!eof() && (peek() == '+' || peek() == '-')) {
            neg = peek() == '-';
            ++pos_;
        }
        acc = acc + parse_term(neg);
        while (true) {
            skip_ws();
            if (eof() || (peek() != '+' && peek() != '-')) break;
            neg = peek() == '-';
            ++pos_;
            acc = acc + parse_term(neg);
        }
        return acc;
    }

    Polynomial parse_term(bool negate) {
        skip_ws();
        if (eof()) fail("expected term");
        Scalar coeff = Scalar::one(ring_);
        bool have_coeff = false;
        std::vector<std::uint32_t> exps(vars_->size(), 0);

        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = parse_coeff();
            have_coeff = true;
        } else if (!is_ident_start(peek())) {
            fail("expected coefficient or variable");
        }

        bool first_var = true;
        while (true) {
            skip_ws();
            std::size_t save = pos_;
            bool star = false;
            if (!eof() && peek() == '*') {
                star = true;
                ++pos_;
                skip_ws();
            }
            if (eof() || !is_ident_start(peek())) {
                if (star) fail("expected variable after '*'");
                pos_ = save;
                break;
            }
            // without a coefficient, later varpows need an explicit '*'
            if (!star && !first_var && !have_coeff) {
                pos_ = save;
                break;
            }
            parse_varpow(exps);
            first_var = false;
        }
        Scalar c = negate ? -coeff : coeff;
        Polynomial p(ring_, vars_);
        p.add_term(Monomial(std::move(exps)), c);
        return p;
    }

    bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
    bool is_ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    Scalar parse_coeff() {
        Integer num = parse_nat();
        skip_ws();
        if (!eof() && peek() == '/') {
            std::size_t slash = pos_;
            ++pos_;
            skip_ws();
            if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) {
                pos_ = slash + 1;
                fail("expected denominator");
            }
            Integer den = parse_nat();
            if (den == 0) fail("zero denominator");
            switch (ring_.kind()) {
                case RingKind::Integers:
                    throw error("coefficient not in ring: rational over Z");
                case RingKind::Rationals:
                    return Scalar::rational(Rational(num, den));
                case RingKind::PrimeField:
                    return project_mod_p(Rational(num, den), ring_);
            }
        }
        switch (ring_.kind()) {
            case RingKind::Integers: return Scalar::integer(num);
            case RingKind::Rationals: return Scalar::rational(Rational(num));
            case RingKind::PrimeField: return Scalar::residue(num, ring_);
        }
        throw error("unreachable");
    }

    Integer parse_nat() {
        std::size_t start = pos_;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return Integer(std::string(text_.substr(start, pos_ - start)), 10);
    }

    void parse_varpow(std::vector<std::uint32_t>& exps) {
        std::size_t start = pos_;
        ++pos_;
        while (!eof() && is_ident_char(peek())) ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        auto idx = vars_->index_of(name);
        if (!idx) {
            pos_ = start;
            fail("unknown variable '" + name + "'");
        }
        std::uint32_t e = 1;
        skip_ws();
        if (!eof() && peek() == '^') {
            ++pos_;
            skip_ws();
            if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
            Integer n = parse_nat();
            if (n > 1000000) fail("exponent too large");
            e = static_cast<std::uint32_t>(n.get_ui());
        }
        exps[*idx] += e;
    }

    std::string_view text_;
    const VarsPtr& vars_;
    Ring ring_;
    std::size_t pos_ = 0;
};

bool scalar_is_negative(const Scalar& c) {
    if (c.ring().kind() == RingKind::PrimeField) return false;
    return c.rational_value() < 0;
}

std::string scalar_abs_string(const Scalar& c) {
    if (c.ring().kind() == RingKind::PrimeField) return c.to_string();
    Rational q = c.rational_value();
    if (q < 0) q = -q;
    return q.get_str();
}

} // namespace

Polynomial parse_polynomial(std::string_view text, const VarsPtr& vars, const Ring& ring) {
    return Parser(text, vars, ring).parse();
}

std::string format_monomial(const Monomial& m, const VariableSet& vars) {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < m.nvars(); ++i) {
        if (m.exponent(i) == 0) continue;
        if (!first) out << "*";
        out << vars.name(i);
        if (m.exponent(i) > 1) out << "^" << m.exponent(i);
        first = false;
    }
    if (first) out << "1";
    return out.str();
}

std::string format_polynomial(const Polynomial& f, std::span<const std::string> names) {
    if (f.is_zero()) return "0";
    if (!names.empty() && names.size() != f.nvars())
        throw error("format_polynomial: alias name count mismatch");
    std::ostringstream out;
    bool first = true;
    // iterate grevlex descending
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        bool neg = scalar_is_negative(c);
        if (first) {
            if (neg) out << "-";
        } else {
            out << (neg ? " - " : " + ");
        }
        std::string cs = scalar_abs_string(c);
        if (m.is_constant()) {
            out << cs;
        } else {
            bool unit = (cs == "1");
            if (!unit) out << cs << "*";
            bool firstvar = true;
            for (std::size_t i = 0; i < m.nvars(); ++i) {
                if (m.exponent(i) == 0) continue;
                if (!firstvar) out << "*";
                out << (names.empty() ? f.vars()->name(i) : names[i]);
                if (m.exponent(i) > 1) out << "^" << m.exponent(i);
                firstvar = false;
            }
        }
        first = false;
    }
    return out.str();
}

std::vector<Polynomial> parse_map_components(std::string_view text, const VarsPtr& vars,
                                             const Ring& ring) {
    std::size_t begin = text.find('[');
    std::size_t end = text.rfind(']');
    if (begin == std::string_view::npos || end == std::string_view::npos || end <= begin)
        throw parse_error("expected map of the form [p1; p2; ...]", 0);
    std::string_view body = text.substr(begin + 1, end - begin - 1);
    std::vector<Polynomial> comps;
    std::size_t pos = 0;
    while (true) {
        std::size_t sep = body.find(';', pos);
        std::string_view piece = body.substr(pos, sep == std::string_view::npos ? sep : sep - pos);
        comps.push_back(parse_polynomial(piece, vars, ring));
        if (sep == std::string_view::npos) break;
        pos = sep + 1;
    }
    return comps;
}

std::string format_map_components(std::span<const Polynomial> comps,
                                  std::span<const std::string> names) {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (i) out << "; ";
        out << format_polynomial(comps[i], names);
    }
    out << "]";
    return out.str();
}

} // namespace keller
