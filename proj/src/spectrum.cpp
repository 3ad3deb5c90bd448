#include "dspec/spectrum.hpp"

#include <algorithm>
#include <sstream>

#include "dspec/error.hpp"
#include "dspec/newton.hpp"
#include "dspec/slope_factor.hpp"

namespace dspec {

bool Spectrum::operator==(const Spectrum& o) const {
    return ram == o.ram && gauss == o.gauss && cosets == o.cosets;
}

std::string Spectrum::to_string() const {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const GaussPoint& g : gauss) {
        if (!first) out << ", ";
        first = false;
        if (g.gamma == 0)
            out << "x_{0,1}";
        else
            out << "x_{0,r^" << rat_str(-g.gamma) << "}";
    }
    out << "}";
    for (const ExponentCoset& c : cosets) out << " u (" << c.to_string() << ")";
    return out.str();
}

Spectrum make_spectrum(std::vector<GaussPoint> gauss,
                       std::vector<ExponentCoset> cosets, long long ram) {
    if (ram < 1) throw PreconditionError("spectrum ram must be positive");
    for (const GaussPoint& g : gauss)
        if (g.gamma < 0)
            throw PreconditionError("Gauss point exponent must be nonnegative");
    for (const ExponentCoset& c : cosets)
        if (c.den != ram)
            throw PreconditionError(
                "coset lattice does not match the spectrum ram");
    std::sort(gauss.begin(), gauss.end());
    gauss.erase(std::unique(gauss.begin(), gauss.end()), gauss.end());
    std::sort(cosets.begin(), cosets.end());
    cosets.erase(std::unique(cosets.begin(), cosets.end()), cosets.end());
    if (!cosets.empty() &&
        (gauss.empty() || gauss.front().gamma != 0))
        throw PreconditionError(
            "exponent cosets require the radius-1 Gauss point");
    return Spectrum{std::move(gauss), std::move(cosets), ram};
}

Spectrum spectrum_of_operator(const DiffOp& p, bool verify,
                              std::optional<long long> steps) {
    if (p.order() < 1)
        throw PreconditionError("spectrum needs an operator of order >= 1");
    DiffOp q = p.is_monic() ? p : p.monic();
    NewtonPolygon np = newton_polygon(q);
    std::vector<GaussPoint> gauss;
    for (const PolygonEdge& e : np.edges) gauss.push_back(GaussPoint{e.slope});
    std::vector<ExponentCoset> cosets;
    if (const PolygonEdge* flat = np.edge_of_slope(Rat(0)))
        cosets = cosets_from_poly(flat->poly, q.ram());
    Spectrum s = make_spectrum(std::move(gauss), std::move(cosets), q.ram());

    if (verify) {
        auto [reg, irr] = decompose_reg_irr(q, steps);
        std::vector<ExponentCoset> again;
        if (reg.order() > 0)
            again = cosets_from_poly(regular_reduce(reg), q.ram());
        if (again != s.cosets)
            throw InternalMismatchError(
                "edge-polynomial and factorization exponents disagree");
        std::vector<GaussPoint> slopes;
        if (reg.order() > 0) slopes.push_back(GaussPoint{Rat(0)});
        if (irr.order() > 0)
            for (const PolygonEdge& e : newton_polygon(irr).edges)
                slopes.push_back(GaussPoint{e.slope});
        std::sort(slopes.begin(), slopes.end());
        if (slopes != s.gauss)
            throw InternalMismatchError(
                "factor slopes disagree with the polygon");
    }
    return s;
}

Spectrum spectrum_of_matrix(const SeriesMat& g, bool verify,
                            std::optional<long long> steps) {
    CyclicData cd =
        cyclic_vector(g, steps ? *steps : Series::kDefaultSteps);
    return spectrum_of_operator(cd.op, verify, steps);
}

Spectrum spectrum_rank1(const Series& f) {
    long long m = f.ram();
    Valuation v = f.valuation();
    if (v.is_unknown())
        throw PrecisionError("rank-one spectrum needs a known valuation");
    if (v.is_finite() && v.value < 0) {
        return make_spectrum({GaussPoint{-v.value}}, {}, m);
    }
    // Regular: a gauge unit removes the positive-exponent tail, leaving the
    // constant part f(0).
    Rat a = v.is_plus_infinity() ? Rat(0) : f.coeff(Rat(0));
    return make_spectrum({GaussPoint{Rat(0)}}, {coset_of_value(a, m)}, m);
}

QPoly char_poly(const std::vector<std::vector<Rat>>& g) {
    size_t n = g.size();
    for (const auto& row : g)
        if (row.size() != n)
            throw PreconditionError("characteristic polynomial needs a square matrix");
    // Faddeev-LeVerrier: M_{k+1} = G(M_k + c_{n-k} I), c_{n-k-1} = -tr(G M_k
    // + c_{n-k} G)/(k+1).
    std::vector<Rat> c(n + 1, Rat(0));
    c[n] = Rat(1);
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) m[i][i] = Rat(1);
    for (size_t k = 1; k <= n; ++k) {
        std::vector<std::vector<Rat>> gm(n, std::vector<Rat>(n, Rat(0)));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                for (size_t l = 0; l < n; ++l) gm[i][j] += g[i][l] * m[l][j];
        Rat tr(0);
        for (size_t i = 0; i < n; ++i) tr += gm[i][i];
        c[n - k] = -tr / Rat(static_cast<long long>(k));
        m = gm;
        for (size_t i = 0; i < n; ++i) m[i][i] += c[n - k];
    }
    return QPoly(std::move(c));
}

Spectrum spectrum_constant_matrix(const std::vector<std::vector<Rat>>& g) {
    if (g.empty())
        throw PreconditionError("constant-matrix spectrum needs rank >= 1");
    return make_spectrum({GaussPoint{Rat(0)}}, cosets_from_poly(char_poly(g), 1),
                         1);
}

Spectrum translate_spectrum(const Spectrum& s, const Rat& c) {
    std::vector<ExponentCoset> moved;
    moved.reserve(s.cosets.size());
    for (const ExponentCoset& e : s.cosets) moved.push_back(translate_coset(e, c));
    return make_spectrum(s.gauss, std::move(moved), s.ram);
}

bool spectrum_eq(const Spectrum& a, const Spectrum& b) {
    if (a.ram != b.ram)
        throw PreconditionError("spectra live over different lattices");
    return a == b;
}

Spectrum spectrum_union(const Spectrum& a, const Spectrum& b) {
    if (a.ram != b.ram)
        throw PreconditionError("spectra live over different lattices");
    std::vector<GaussPoint> gauss = a.gauss;
    gauss.insert(gauss.end(), b.gauss.begin(), b.gauss.end());
    std::vector<ExponentCoset> cosets = a.cosets;
    cosets.insert(cosets.end(), b.cosets.begin(), b.cosets.end());
    return make_spectrum(std::move(gauss), std::move(cosets), a.ram);
}

Spectrum spectrum_to_ram(const Spectrum& s, long long m) {
    if (m < 1 || m % s.ram != 0)
        throw PreconditionError("target lattice must refine the current one");
    std::vector<ExponentCoset> fine;
    fine.reserve(s.cosets.size());
    for (const ExponentCoset& c : s.cosets) fine.push_back(project_coset(c, m));
    return make_spectrum(s.gauss, std::move(fine), m);
}

std::string radius_string(const Rat& gamma, const Rat& r) {
    if (gamma == 0) return "1";
    Int num = rat_num(gamma), den = rat_den(gamma);
    if (den == 1) return rat_str(rat_pow(r, -ll_of_int(num)));
    Rat base = rat_pow(r, -ll_of_int(num));
    if (auto root = rat_nth_root_exact(
            base, static_cast<unsigned>(ll_of_int(den))))
        return rat_str(*root);
    return "(" + rat_str(r) + ")^(" + rat_str(-gamma) + ")";
}

std::vector<std::pair<Rat, std::string>> numeric_radii(const Spectrum& s,
                                                       const Rat& r) {
    if (!(Rat(0) < r && r < Rat(1)))
        throw PreconditionError("numeric radius must lie in (0,1)");
    std::vector<std::pair<Rat, std::string>> out;
    out.reserve(s.gauss.size());
    for (const GaussPoint& g : s.gauss)
        out.push_back({g.gamma, radius_string(g.gamma, r)});
    return out;
}

} // namespace dspec
