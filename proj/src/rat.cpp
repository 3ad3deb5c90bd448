#include "dspec/rat.hpp"

#include "dspec/error.hpp"

#include <cctype>
#include <limits>

namespace dspec {

Int rat_floor(const Rat& q) {
    Int n = rat_num(q);
    Int d = rat_den(q);
    Int t = n / d;
    if (n < 0 && t * d != n) --t;
    return t;
}

std::string rat_str(const Rat& q) {
    Int d = rat_den(q);
    if (d == 1) return rat_num(q).str();
    return rat_num(q).str() + "/" + d.str();
}

Rat rat_from_text(const std::string& text) {
    size_t at = 0;
    auto digits = [&](const char* what) {
        size_t start = at;
        while (at < text.size() && std::isdigit(static_cast<unsigned char>(text[at]))) ++at;
        if (at == start) throw ParseError(std::string("expected ") + what + " in rational '" + text + "'");
        return Int(text.substr(start, at - start));
    };
    bool neg = false;
    if (at < text.size() && (text[at] == '-' || text[at] == '+')) {
        neg = text[at] == '-';
        ++at;
    }
    Int num = digits("an integer");
    Int den = 1;
    if (at < text.size() && text[at] == '/') {
        ++at;
        den = digits("a denominator");
        if (den == 0) throw ParseError("zero denominator in rational '" + text + "'");
    }
    if (at != text.size()) throw ParseError("trailing characters in rational '" + text + "'");
    Rat q(num, den);
    return neg ? Rat(-q) : q;
}

std::optional<long long> rat_to_ll(const Rat& q) {
    if (rat_den(q) != 1) return std::nullopt;
    Int n = rat_num(q);
    if (n < std::numeric_limits<long long>::min() || n > std::numeric_limits<long long>::max())
        return std::nullopt;
    return static_cast<long long>(n);
}

long long ll_of_int(const Int& a) {
    if (a < std::numeric_limits<long long>::min() ||
        a > std::numeric_limits<long long>::max())
        throw PreconditionError("integer exponent out of machine range");
    return static_cast<long long>(a);
}

Rat rat_pow(const Rat& q, long long e) {
    if (e == 0) return Rat(1);
    bool inv = e < 0;
    unsigned long long k = inv ? static_cast<unsigned long long>(-(e + 1)) + 1ULL
                               : static_cast<unsigned long long>(e);
    Rat base = q;
    Rat acc(1);
    while (k) {
        if (k & 1ULL) acc *= base;
        base *= base;
        k >>= 1;
    }
    if (inv) acc = Rat(1) / acc;
    return acc;
}

std::optional<Int> int_nth_root_exact(const Int& a, unsigned n) {
    if (a < 0 || n == 0) return std::nullopt;
    if (a == 0) return Int(0);
    if (n == 1) return a;
    // Binary search for floor root, then verify exactness.
    Int lo = 0, hi = 1;
    while (boost::multiprecision::pow(hi, n) < a) hi <<= 1;
    while (lo < hi) {
        Int mid = (lo + hi + 1) >> 1;
        if (boost::multiprecision::pow(mid, n) <= a)
            lo = mid;
        else
            hi = mid - 1;
    }
    if (boost::multiprecision::pow(lo, n) == a) return lo;
    return std::nullopt;
}

std::optional<Rat> rat_nth_root_exact(const Rat& q, unsigned n) {
    if (q <= 0) return std::nullopt;
    auto rn = int_nth_root_exact(rat_num(q), n);
    if (!rn) return std::nullopt;
    auto rd = int_nth_root_exact(rat_den(q), n);
    if (!rd) return std::nullopt;
    return Rat(*rn, *rd);
}

} // namespace dspec
