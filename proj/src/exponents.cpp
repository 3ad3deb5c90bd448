#include "dspec/exponents.hpp"

#include "dspec/error.hpp"
#include "dspec/factor_q.hpp"

#include <algorithm>

namespace dspec {

bool ExponentCoset::operator<(const ExponentCoset& o) const {
    if (den != o.den) return den < o.den;
    return poly < o.poly;
}

Rat ExponentCoset::root_mean() const {
    int d = poly.degree();
    return -poly.coeff(static_cast<size_t>(d - 1)) / d;
}

std::string ExponentCoset::to_string() const {
    std::string lattice =
        den == 1 ? "Z" : "(1/" + std::to_string(den) + ")Z";
    if (poly.degree() == 1) {
        Rat a = -poly.coeff(0);
        if (a == 0) return lattice;
        return rat_str(a) + " + " + lattice;
    }
    return "roots(" + poly.to_string("x") + ") + " + lattice;
}

namespace {

void require_lattice(long long den) {
    if (den < 1) throw PreconditionError("coset lattice denominator must be positive");
}

// Shift an already-irreducible monic polynomial into the cell [0, 1/den).
ExponentCoset normalized(const QPoly& p, long long den) {
    int d = p.degree();
    Rat mean = -p.coeff(static_cast<size_t>(d - 1)) / d;
    Rat l = Rat(rat_floor(mean * den)) / den;
    return ExponentCoset{den, l == 0 ? p : p.taylor_shift(l)};
}

} // namespace

ExponentCoset make_coset(const QPoly& p, long long den) {
    require_lattice(den);
    if (p.degree() < 1) throw PreconditionError("coset polynomial must be nonconstant");
    if (p.lead() != 1) throw PreconditionError("coset polynomial must be monic");
    if (p.degree() > 1) {
        auto factors = factor_rational(p);
        if (factors.size() != 1 || factors[0].second != 1)
            throw PreconditionError("coset polynomial must be irreducible: " +
                                    p.to_string("x"));
    }
    return normalized(p, den);
}

ExponentCoset coset_of_value(const Rat& a, long long den) {
    return make_coset(QPoly(std::vector<Rat>{-a, Rat(1)}), den);
}

std::vector<ExponentCoset> cosets_from_poly(const QPoly& p0, long long den) {
    require_lattice(den);
    if (p0.degree() < 1)
        throw PreconditionError("exponent polynomial must be nonconstant");
    std::vector<ExponentCoset> out;
    for (const auto& [factor, mult] : factor_rational(p0)) {
        (void)mult;
        out.push_back(normalized(factor, den));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool coset_eq(const ExponentCoset& a, const ExponentCoset& b) {
    if (a.den != b.den)
        throw PreconditionError("coset comparison across different lattices");
    return a == b;
}

ExponentCoset translate_coset(const ExponentCoset& c, const Rat& t) {
    require_lattice(c.den);
    return normalized(t == 0 ? c.poly : c.poly.taylor_shift(-t), c.den);
}

ExponentCoset project_coset(const ExponentCoset& c, long long new_den) {
    require_lattice(new_den);
    if (new_den % c.den != 0)
        throw PreconditionError("coset projection requires a finer lattice");
    return normalized(c.poly, new_den);
}

bool coset_eq_bruteforce(const ExponentCoset& a, const ExponentCoset& b) {
    if (a.den != b.den)
        throw PreconditionError("coset comparison across different lattices");
    if (a.poly.degree() != b.poly.degree()) return false;
    Rat bound = cauchy_root_bound(a.poly) + cauchy_root_bound(b.poly);
    long long reach = ll_of_int(rat_floor(bound * a.den)) + 1;
    for (long long k = -reach; k <= reach; ++k) {
        Rat t = Rat(k) / a.den;
        if (a.poly == b.poly.taylor_shift(-t)) return true;
    }
    return false;
}

} // namespace dspec
