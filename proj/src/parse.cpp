#include "dspec/parse.hpp"

#include <cctype>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "dspec/error.hpp"

namespace dspec {

namespace {

struct Token {
    enum Kind { Num, SymD, SymS, SymO, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Kind kind;
    Int value; // Num only
    size_t pos;
};

[[noreturn]] void fail(const std::string& what, size_t pos) {
    std::ostringstream out;
    out << what << " at position " << pos;
    throw ParseError(out.str());
}

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < text.size() &&
                   std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            out.push_back({Token::Num, Int(text.substr(i, j - i)), i});
            i = j;
            continue;
        }
        Token::Kind k;
        switch (c) {
        case 'D': k = Token::SymD; break;
        case 'S': k = Token::SymS; break;
        case 'O': k = Token::SymO; break;
        case '+': k = Token::Plus; break;
        case '-': k = Token::Minus; break;
        case '*': k = Token::Star; break;
        case '/': k = Token::Slash; break;
        case '^': k = Token::Caret; break;
        case '(': k = Token::LParen; break;
        case ')': k = Token::RParen; break;
        default: fail(std::string("unexpected character '") + c + "'", i);
        }
        out.push_back({k, Int(0), i});
        ++i;
    }
    out.push_back({Token::End, Int(0), text.size()});
    return out;
}

constexpr long long kMaxPower = 200;

struct Parser {
    std::vector<Token> toks;
    size_t at = 0;
    long long steps;

    const Token& peek() const { return toks[at]; }
    Token take() { return toks[at++]; }
    bool eat(Token::Kind k) {
        if (toks[at].kind != k) return false;
        ++at;
        return true;
    }
    void expect(Token::Kind k, const std::string& what) {
        if (!eat(k)) fail("expected " + what, peek().pos);
    }

    // exponent := integer | '(' ['-'] integer ['/' integer] ')'
    Rat exponent() {
        if (peek().kind == Token::Num) return Rat(take().value);
        if (eat(Token::LParen)) {
            bool neg = eat(Token::Minus);
            if (peek().kind != Token::Num) fail("expected a number", peek().pos);
            Int num = take().value;
            Int den(1);
            if (eat(Token::Slash)) {
                if (peek().kind != Token::Num)
                    fail("expected a denominator", peek().pos);
                size_t dpos = peek().pos;
                den = take().value;
                if (den == 0) fail("zero denominator", dpos);
            }
            expect(Token::RParen, "')'");
            Rat q = Rat(num) / Rat(den);
            return neg ? -q : q;
        }
        fail("expected an exponent", peek().pos);
    }

    DiffOp atom() {
        const Token& t = peek();
        switch (t.kind) {
        case Token::SymD: take(); return DiffOp::d();
        case Token::SymS: take(); return DiffOp(Series::monomial(Rat(1), Rat(1)));
        case Token::Num: return DiffOp(Series::constant(Rat(take().value)));
        case Token::SymO: {
            take();
            expect(Token::LParen, "'(' after O");
            expect(Token::SymS, "S inside O(...)");
            Rat q(1);
            if (eat(Token::Caret)) q = exponent();
            expect(Token::RParen, "')'");
            return DiffOp(Series::unknown_below(q));
        }
        case Token::LParen: {
            take();
            DiffOp inner = expr();
            expect(Token::RParen, "')'");
            return inner;
        }
        default: fail("expected D, S, a number, O(...) or '('", t.pos);
        }
    }

    DiffOp power(const DiffOp& base, const Rat& e, size_t pos) {
        Int den = rat_den(e);
        if (den == 1) {
            Int num = rat_num(e);
            if (num > kMaxPower || num < -kMaxPower)
                fail("exponent too large", pos);
            long long k = ll_of_int(num);
            if (k >= 0) {
                DiffOp acc{Series::one()};
                for (long long i = 0; i < k; ++i) acc = acc * base;
                return acc;
            }
            if (base.order() > 0)
                fail("negative power of a differential operator", pos);
            Series inv = base.coeff(0).inverted(steps);
            DiffOp acc{Series::one()};
            for (long long i = 0; i < -k; ++i) acc = acc * DiffOp(inv);
            return acc;
        }
        if (base.order() > 0) fail("fractional power of D", pos);
        Series f = base.coeff(0);
        if (!f.is_exact() || f.ticks().size() != 1)
            fail("fractional power needs an exact monomial base", pos);
        const auto& [tick, c] = *f.ticks().begin();
        Rat q = Rat(tick) / Rat(f.ram());
        std::optional<Rat> scaled;
        if (c == 1) {
            scaled = Rat(1);
        } else {
            // c^(p/den) when the root is exact.
            Int p = rat_num(e);
            if (p > kMaxPower || p < -kMaxPower) fail("exponent too large", pos);
            Rat cp = rat_pow(c, ll_of_int(p));
            scaled = rat_nth_root_exact(
                cp, static_cast<unsigned>(ll_of_int(den)));
        }
        if (!scaled) fail("fractional power has no exact rational value", pos);
        return DiffOp(Series::monomial(*scaled, q * e));
    }

    DiffOp factor() {
        DiffOp base = atom();
        if (peek().kind == Token::Caret) {
            size_t pos = take().pos;
            Rat e = exponent();
            return power(base, e, pos);
        }
        return base;
    }

    DiffOp term() {
        DiffOp acc = factor();
        while (true) {
            if (eat(Token::Star)) {
                acc = acc * factor();
            } else if (peek().kind == Token::Slash) {
                size_t pos = take().pos;
                DiffOp rhs = factor();
                if (rhs.order() > 0)
                    fail("cannot divide by a differential operator", pos);
                try {
                    acc = acc * DiffOp(rhs.coeff(0).inverted(steps));
                } catch (const PreconditionError&) {
                    fail("division by a non-invertible expression", pos);
                }
            } else {
                return acc;
            }
        }
    }

    DiffOp expr() {
        bool neg = false;
        if (peek().kind == Token::Minus) {
            take();
            neg = true;
        } else {
            eat(Token::Plus);
        }
        DiffOp acc = term();
        if (neg) acc = acc.scaled(Rat(-1));
        while (true) {
            if (eat(Token::Plus)) acc = acc + term();
            else if (eat(Token::Minus)) acc = acc - term();
            else return acc;
        }
    }
};

// One c*S^q term; q must be nonzero.
std::string monomial_text(const Rat& c, const Rat& q) {
    std::string spow;
    if (q == 1) {
        spow = "S";
    } else if (rat_den(q) == 1 && q > 0) {
        spow = "S^" + rat_str(q);
    } else {
        spow = "S^(" + rat_str(q) + ")";
    }
    if (c == 1) return spow;
    if (c == -1) return "-" + spow;
    return rat_str(c) + "*" + spow;
}

std::string order_tail_text(const Rat& q) {
    if (q == 1) return "O(S)";
    if (rat_den(q) == 1 && q >= 0) return "O(S^" + rat_str(q) + ")";
    return "O(S^(" + rat_str(q) + "))";
}

} // namespace

DiffOp parse_operator(const std::string& text, long long steps) {
    Parser p{lex(text), 0, steps};
    DiffOp result = p.expr();
    if (p.peek().kind != Token::End) fail("unexpected trailing input", p.peek().pos);
    return result;
}

Series parse_series(const std::string& text, long long steps) {
    DiffOp p = parse_operator(text, steps);
    if (p.order() > 0)
        throw ParseError("expected a series, found a differential operator");
    return p.coeff(0);
}

std::string series_text(const Series& f) {
    std::ostringstream out;
    bool any = false;
    const auto& terms = f.ticks();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const auto& [t, c] = *it;
        Rat q = Rat(t) / Rat(f.ram());
        std::string piece = (q == 0) ? rat_str(c) : monomial_text(c, q);
        if (!any) {
            out << piece;
        } else if (piece[0] == '-') {
            out << " - " << piece.substr(1);
        } else {
            out << " + " << piece;
        }
        any = true;
    }
    if (auto q = f.prec_exponent()) {
        if (any) out << " + ";
        out << order_tail_text(*q);
        any = true;
    }
    if (!any) return "0";
    return out.str();
}

std::string print_operator(const DiffOp& p) {
    std::vector<Series> gs = p.coeffs();
    std::ostringstream out;
    bool any = false;
    for (size_t i = 0; i < gs.size(); ++i) {
        const Series& g = gs[i];
        if (g.is_exact_zero()) continue;
        std::string dpart =
            i == 0 ? "" : (i == 1 ? "D" : "D^" + std::to_string(i));
        std::string chunk;
        if (i == 0) {
            chunk = series_text(g);
        } else if (g == Series::one()) {
            chunk = dpart;
        } else {
            std::string t = series_text(g);
            bool wrap = t.find(' ') != std::string::npos || t[0] == '-';
            chunk = (wrap ? "(" + t + ")" : t) + "*" + dpart;
        }
        out << (any ? " + " : "") << chunk;
        any = true;
    }
    if (!any) return "0";
    return out.str();
}

SeriesMat parse_matrix_json(const std::string& text, long long steps) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("matrix document: ") + e.what());
    }
    long long n = 0, ram = 1;
    std::vector<std::vector<std::string>> texts;
    try {
        if (!doc.is_object() || !doc.contains("n") || !doc.contains("entries"))
            throw ParseError("matrix document needs \"n\" and \"entries\"");
        n = doc.at("n").get<long long>();
        if (doc.contains("ram")) ram = doc.at("ram").get<long long>();
        texts = doc.at("entries")
                    .get<std::vector<std::vector<std::string>>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("matrix document: ") + e.what());
    }
    if (n < 1) throw ParseError("matrix rank must be positive");
    if (ram < 1) throw ParseError("matrix ram must be positive");
    if (texts.size() != static_cast<size_t>(n))
        throw ParseError("matrix entry rows do not match \"n\"");
    SeriesMat g;
    for (const auto& row : texts) {
        if (row.size() != static_cast<size_t>(n))
            throw ParseError("matrix entry row length does not match \"n\"");
        std::vector<Series> out_row;
        for (const std::string& cell : row) {
            Series f = parse_series(cell, steps);
            if (ram % f.ram() != 0)
                throw ParseError("entry '" + cell +
                                 "' needs a finer grid than the declared ram");
            out_row.push_back(f.lifted(ram));
        }
        g.push_back(std::move(out_row));
    }
    return g;
}

std::string print_matrix_json(const SeriesMat& g) {
    nlohmann::json doc;
    doc["n"] = g.size();
    doc["ram"] = mat_ram(g);
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : g) {
        std::vector<std::string> cells;
        for (const Series& f : row) cells.push_back(series_text(f));
        rows.push_back(std::move(cells));
    }
    doc["entries"] = rows;
    return doc.dump(2);
}

} // namespace dspec
