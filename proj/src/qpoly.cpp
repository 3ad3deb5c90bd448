#include "dspec/qpoly.hpp"

#include "dspec/error.hpp"

#include <sstream>

namespace dspec {

QPoly::QPoly(const Rat& c) {
    if (c != 0) c_.push_back(c);
}

QPoly::QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly QPoly::x() { return QPoly(std::vector<Rat>{Rat(0), Rat(1)}); }

QPoly QPoly::monomial(const Rat& c, size_t k) {
    if (c == 0) return QPoly();
    std::vector<Rat> v(k + 1, Rat(0));
    v[k] = c;
    return QPoly(std::move(v));
}

void QPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rat QPoly::coeff(size_t k) const {
    if (k >= c_.size()) return Rat(0);
    return c_[k];
}

Rat QPoly::lead() const {
    if (c_.empty()) return Rat(0);
    return c_.back();
}

QPoly QPoly::operator+(const QPoly& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return QPoly(std::move(r));
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator-() const {
    std::vector<Rat> r(c_);
    for (auto& v : r) v = -v;
    return QPoly(std::move(r));
}

QPoly QPoly::operator*(const QPoly& o) const {
    if (c_.empty() || o.c_.empty()) return QPoly();
    std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return QPoly(std::move(r));
}

QPoly QPoly::scaled(const Rat& c) const {
    if (c == 0) return QPoly();
    std::vector<Rat> r(c_);
    for (auto& v : r) v *= c;
    return QPoly(std::move(r));
}

bool QPoly::operator<(const QPoly& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    }
    return false;
}

QPoly QPoly::derivative() const {
    if (c_.size() <= 1) return QPoly();
    std::vector<Rat> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return QPoly(std::move(r));
}

Rat QPoly::eval(const Rat& a) const {
    Rat acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * a + c_[i];
    return acc;
}

QPoly QPoly::monic() const {
    if (c_.empty()) return QPoly();
    return scaled(Rat(1) / c_.back());
}

QPoly QPoly::taylor_shift(const Rat& a) const {
    // Horner in (x + a): result = sum c_k (x + a)^k.
    QPoly res;
    QPoly xa(std::vector<Rat>{a, Rat(1)});
    for (size_t i = c_.size(); i-- > 0;) res = res * xa + QPoly(c_[i]);
    return res;
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& d) const {
    if (d.is_zero()) throw PreconditionError("polynomial division by zero");
    QPoly rem = *this;
    int dd = d.degree();
    if (rem.degree() < dd) return {QPoly(), rem};
    std::vector<Rat> q(rem.degree() - dd + 1, Rat(0));
    Rat dl = d.lead();
    while (rem.degree() >= dd) {
        int k = rem.degree() - dd;
        Rat c = rem.lead() / dl;
        q[k] = c;
        rem = rem - (d * QPoly::monomial(c, k));
    }
    return {QPoly(std::move(q)), rem};
}

QPoly QPoly::div_exact(const QPoly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw InternalMismatchError("expected exact polynomial division");
    return q;
}

std::string QPoly::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        Rat c = c_[i];
        if (c == 0) continue;
        bool neg = c < 0;
        Rat a = neg ? Rat(-c) : c;
        if (first) {
            if (neg) out << "-";
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        bool unit = (a == 1);
        if (i == 0) {
            out << rat_str(a);
        } else {
            if (!unit) out << rat_str(a) << "*";
            out << var;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

QPoly qpoly_gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
        if (!b.is_zero()) b = b.monic();
    }
    if (a.is_zero()) return a;
    return a.monic();
}

QPoly squarefree_part(const QPoly& f) {
    if (f.degree() <= 0) return f.monic();
    QPoly g = qpoly_gcd(f, f.derivative());
    return f.div_exact(g).monic();
}

std::vector<std::pair<QPoly, int>> yun_squarefree(const QPoly& f) {
    std::vector<std::pair<QPoly, int>> out;
    if (f.degree() <= 0) return out;
    QPoly fm = f.monic();
    QPoly g = qpoly_gcd(fm, fm.derivative());
    if (g.degree() == 0) {
        out.emplace_back(fm, 1);
        return out;
    }
    QPoly w = fm.div_exact(g);
    QPoly y = fm.derivative().div_exact(g);
    QPoly z = y - w.derivative();
    int i = 1;
    while (w.degree() > 0) {
        QPoly d = qpoly_gcd(w, z);
        if (d.degree() > 0) out.emplace_back(d, i);
        w = w.div_exact(d);
        y = z.div_exact(d);
        z = y - w.derivative();
        ++i;
    }
    return out;
}

Rat resultant(const QPoly& f, const QPoly& g) {
    if (f.is_zero() || g.is_zero()) return Rat(0);
    if (f.degree() == 0) return rat_pow(f.lead(), g.degree());
    if (g.degree() == 0) return rat_pow(g.lead(), f.degree());
    QPoly r = f.divmod(g).second;
    int df = f.degree(), dg = g.degree();
    if (r.is_zero()) return Rat(0);
    int dr = r.degree();
    Rat sign = (static_cast<long long>(df) * dg) % 2 == 0 ? Rat(1) : Rat(-1);
    return sign * rat_pow(g.lead(), df - dr) * resultant(g, r);
}

Rat cauchy_root_bound(const QPoly& f) {
    if (f.degree() <= 0) return Rat(0);
    Rat m(0);
    Rat lead = f.lead();
    for (int i = 0; i < f.degree(); ++i) {
        Rat a = f.coeff(i) / lead;
        if (a < 0) a = -a;
        if (a > m) m = a;
    }
    return Rat(1) + m;
}

} // namespace dspec
