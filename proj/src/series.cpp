#include "dspec/series.hpp"

#include "dspec/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dspec {

std::string Valuation::to_string() const {
    switch (kind) {
    case Kind::Finite: return rat_str(value);
    case Kind::PlusInfinity: return "+inf";
    default: return "unknown";
    }
}

std::string AbsValue::to_string() const {
    if (v.is_plus_infinity()) return "0";
    if (v.is_unknown()) return "unknown";
    return "r^(" + rat_str(v.value) + ")";
}

AbsValue abs_value(const Series& f) { return AbsValue{f.valuation()}; }

void Series::normalize() {
    if (ram_ < 1) throw PreconditionError("series ramification must be positive");
    for (auto it = c_.begin(); it != c_.end();) {
        bool drop = (it->second == 0) || (prec_ && it->first >= *prec_);
        it = drop ? c_.erase(it) : std::next(it);
    }
}

Series Series::zero(long long ram) { return from_ticks(ram, {}); }

Series Series::one(long long ram) { return from_ticks(ram, {{0, Rat(1)}}); }

Series Series::constant(const Rat& c, long long ram) {
    return from_ticks(ram, {{0, c}});
}

Series Series::monomial(const Rat& c, const Rat& q, long long ram_hint) {
    long long den = ll_of_int(rat_den(q));
    long long ram = ll_lcm(den, ram_hint);
    Tick t = ll_of_int(rat_num(q)) * (ram / den);
    return from_ticks(ram, {{t, c}});
}

Series Series::unknown_below(const Rat& q, long long ram_hint) {
    long long den = ll_of_int(rat_den(q));
    long long ram = ll_lcm(den, ram_hint);
    Tick t = ll_of_int(rat_num(q)) * (ram / den);
    return from_ticks(ram, {}, t);
}

Series Series::from_ticks(long long ram, std::map<Tick, Rat> coeffs,
                          std::optional<Tick> prec) {
    Series f;
    f.ram_ = ram;
    f.c_ = std::move(coeffs);
    f.prec_ = prec;
    f.normalize();
    return f;
}

std::optional<Rat> Series::prec_exponent() const {
    if (!prec_) return std::nullopt;
    return Rat(*prec_) / ram_;
}

Valuation Series::valuation() const {
    if (!c_.empty()) return Valuation::finite(Rat(c_.begin()->first) / ram_);
    return prec_ ? Valuation::unknown() : Valuation::plus_infinity();
}

Rat Series::coeff(const Rat& q) const {
    if (prec_ && q * ram_ >= *prec_)
        throw PrecisionError("coefficient of S^" + rat_str(q) +
                             " lies beyond the known precision O(S^" +
                             rat_str(*prec_exponent()) + ")");
    Rat scaled_q = q * ram_;
    if (rat_den(scaled_q) != 1) return Rat(0); // off the exponent grid
    return coeff_tick(ll_of_int(rat_num(scaled_q)));
}

Rat Series::coeff_tick(Tick t) const {
    if (prec_ && t >= *prec_)
        throw PrecisionError("coefficient tick beyond known precision");
    auto it = c_.find(t);
    return it == c_.end() ? Rat(0) : it->second;
}

Series Series::lifted(long long new_ram) const {
    if (new_ram % ram_ != 0)
        throw PreconditionError("cannot lift series to non-multiple ramification");
    long long mult = new_ram / ram_;
    if (mult == 1) return *this;
    std::map<Tick, Rat> m;
    for (const auto& [t, v] : c_) m.emplace(t * mult, v);
    std::optional<Tick> p;
    if (prec_) p = *prec_ * mult;
    return from_ticks(new_ram, std::move(m), p);
}

Series Series::reduced() const {
    long long g = ram_;
    auto fold = [&g](Tick t) { g = std::gcd(g, t < 0 ? -t : t); };
    for (const auto& [t, v] : c_) { (void)v; fold(t); }
    if (prec_) fold(*prec_);
    if (c_.empty() && !prec_) g = ram_; // exact zero: collapse to ram 1
    if (g == 0) g = ram_;
    std::map<Tick, Rat> m;
    for (const auto& [t, v] : c_) m.emplace(t / g, v);
    std::optional<Tick> p;
    if (prec_) p = *prec_ / g;
    return from_ticks(c_.empty() && !prec_ ? 1 : ram_ / g, std::move(m), p);
}

Series Series::operator+(const Series& o) const {
    long long ram = ll_lcm(ram_, o.ram_);
    Series a = lifted(ram), b = o.lifted(ram);
    std::optional<Tick> p;
    if (a.prec_ && b.prec_) p = std::min(*a.prec_, *b.prec_);
    else if (a.prec_) p = a.prec_;
    else if (b.prec_) p = b.prec_;
    std::map<Tick, Rat> m = std::move(a.c_);
    for (const auto& [t, v] : b.c_) {
        auto [it, fresh] = m.emplace(t, v);
        if (!fresh) it->second += v;
    }
    return from_ticks(ram, std::move(m), p);
}

Series Series::operator-() const {
    std::map<Tick, Rat> m;
    for (const auto& [t, v] : c_) m.emplace(t, -v);
    return from_ticks(ram_, std::move(m), prec_);
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator*(const Series& o) const {
    long long ram = ll_lcm(ram_, o.ram_);
    Series a = lifted(ram), b = o.lifted(ram);
    if (a.is_exact_zero() || b.is_exact_zero()) return zero(ram);
    // Lower bound on each factor's valuation: leading stored tick, or the
    // precision bound when no coefficient is known to be nonzero.
    Tick la = a.c_.empty() ? *a.prec_ : a.c_.begin()->first;
    Tick lb = b.c_.empty() ? *b.prec_ : b.c_.begin()->first;
    std::optional<Tick> p;
    if (a.prec_) p = *a.prec_ + lb;
    if (b.prec_) {
        Tick q = *b.prec_ + la;
        p = p ? std::min(*p, q) : q;
    }
    std::map<Tick, Rat> m;
    for (const auto& [ta, va] : a.c_)
        for (const auto& [tb, vb] : b.c_) {
            if (p && ta + tb >= *p) continue;
            auto [it, fresh] = m.emplace(ta + tb, va * vb);
            if (!fresh) it->second += va * vb;
        }
    return from_ticks(ram, std::move(m), p);
}

Series Series::scaled(const Rat& c) const {
    if (c == 0) return zero(ram_); // exact: 0 * f = 0 regardless of precision
    std::map<Tick, Rat> m;
    for (const auto& [t, v] : c_) m.emplace(t, v * c);
    return from_ticks(ram_, std::move(m), prec_);
}

Series Series::shifted(const Rat& q) const {
    long long den = ll_of_int(rat_den(q));
    long long ram = ll_lcm(den, ram_);
    Series a = lifted(ram);
    Tick dt = ll_of_int(rat_num(q)) * (ram / den);
    std::map<Tick, Rat> m;
    for (const auto& [t, v] : a.c_) m.emplace(t + dt, v);
    std::optional<Tick> p;
    if (a.prec_) p = *a.prec_ + dt;
    return from_ticks(ram, std::move(m), p);
}

Series Series::truncated(const Rat& q) const {
    long long den = ll_of_int(rat_den(q));
    long long ram = ll_lcm(den, ram_);
    Series a = lifted(ram);
    Tick t = ll_of_int(rat_num(q)) * (ram / den);
    if (a.prec_ && *a.prec_ <= t) return a;
    return from_ticks(ram, std::move(a.c_), t);
}

Series Series::delta() const {
    std::map<Tick, Rat> m;
    for (const auto& [t, v] : c_) m.emplace(t, v * Rat(t) / ram_);
    return from_ticks(ram_, std::move(m), prec_);
}

Series Series::inverted(long long steps) const {
    if (is_exact_zero()) throw PreconditionError("cannot invert the zero series");
    if (c_.empty())
        throw PrecisionError("cannot invert a series with unknown valuation");
    Tick v = c_.begin()->first;
    Rat lead = c_.begin()->second;
    // Solve (f / lead*S^v) * h = 1 coefficient by coefficient; the reduced
    // factor u has tick-0 coefficient 1 and everything else at positive ticks.
    std::map<Tick, Rat> u;
    for (const auto& [t, cv] : c_) u.emplace(t - v, cv / lead);
    bool exact_out = is_exact() && u.size() == 1;
    Tick T; // number of known ticks of the normalized inverse, counted from 0
    if (prec_) T = *prec_ - v; // u is known below prec - v
    else T = exact_out ? 1 : steps;
    if (T < 1)
        throw PrecisionError("series known to too few terms to invert");
    std::map<Tick, Rat> h;
    h.emplace(0, Rat(1));
    for (Tick t = 1; t < T; ++t) {
        Rat s(0);
        for (const auto& [j, uj] : u) {
            if (j < 1 || j > t) continue;
            auto it = h.find(t - j);
            if (it != h.end()) s += uj * it->second;
        }
        if (s != 0) h.emplace(t, -s);
    }
    std::map<Tick, Rat> m;
    for (const auto& [t, hv] : h) m.emplace(t - v, hv / lead);
    std::optional<Tick> p;
    if (!exact_out) p = T - v;
    return from_ticks(ram_, std::move(m), p);
}

bool Series::operator==(const Series& o) const {
    Series a = reduced(), b = o.reduced();
    return a.ram_ == b.ram_ && a.prec_ == b.prec_ && a.c_ == b.c_;
}

namespace {

std::string exp_str(const Rat& q) {
    if (q >= 0 && rat_den(q) == 1) return rat_str(q);
    return "(" + rat_str(q) + ")";
}

std::string term_str(const Rat& c, const Rat& q) {
    if (q == 0) return rat_str(c);
    std::string spow = (q == 1) ? "S" : "S^" + exp_str(q);
    if (c == 1) return spow;
    if (c == -1) return "-" + spow;
    return rat_str(c) + "*" + spow;
}

} // namespace

std::string Series::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [t, v] : c_) {
        std::string s = term_str(v, Rat(t) / ram_);
        if (first) out << s;
        else if (!s.empty() && s[0] == '-') out << " - " << s.substr(1);
        else out << " + " << s;
        first = false;
    }
    if (prec_) {
        if (!first) out << " + ";
        Rat pe = *prec_exponent();
        if (pe == 1) out << "O(S)";
        else out << "O(S^" << exp_str(pe) << ")";
        first = false;
    }
    if (first) out << "0";
    return out.str();
}

Series gauge_solve(const Series& f, Tick target_ticks) {
    if (f.is_exact_zero()) return Series::one(f.ram());
    for (const auto& [t, v] : f.ticks()) {
        (void)v;
        if (t <= 0)
            throw PreconditionError(
                "gauge unit needs a series with positive valuation");
    }
    long long m = f.ram();
    Tick T = target_ticks;
    if (f.prec_ticks()) T = std::min(T, *f.prec_ticks());
    if (T < 1) throw PrecisionError("no known terms to solve the gauge unit");
    // delta(g) = f*g termwise: (q/m) c_q = sum_{0<l<=q} f_l c_{q-l}, c_0 = 1.
    std::map<Tick, Rat> c;
    c.emplace(0, Rat(1));
    for (Tick q = 1; q < T; ++q) {
        Rat s(0);
        for (const auto& [l, fl] : f.ticks()) {
            if (l < 1 || l > q) continue;
            auto it = c.find(q - l);
            if (it != c.end()) s += fl * it->second;
        }
        if (s != 0) c.emplace(q, s * Rat(m) / q);
    }
    return Series::from_ticks(m, std::move(c), T);
}

} // namespace dspec
