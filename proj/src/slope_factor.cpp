#include "dspec/slope_factor.hpp"

#include "dspec/error.hpp"
#include "dspec/newton.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace dspec {

namespace {

// 1/b mod x^k for b with b(0) != 0.
QPoly poly_inv_mod(const QPoly& b, long long k) {
    Rat lead_inv = 1 / b.coeff(0);
    std::vector<Rat> inv(static_cast<size_t>(k));
    inv[0] = lead_inv;
    for (long long t = 1; t < k; ++t) {
        Rat acc(0);
        for (long long j = 1; j <= t; ++j)
            acc += b.coeff(static_cast<size_t>(j)) * inv[static_cast<size_t>(t - j)];
        inv[static_cast<size_t>(t)] = -acc * lead_inv;
    }
    return QPoly(std::move(inv));
}

QPoly poly_mod(const QPoly& a, long long k) {
    std::vector<Rat> c;
    for (long long j = 0; j < k && j <= a.degree(); ++j)
        c.push_back(a.coeff(static_cast<size_t>(j)));
    return QPoly(std::move(c));
}

QPoly poly_shift_down(const QPoly& a, long long k) {
    std::vector<Rat> c;
    for (long long j = k; j <= a.degree(); ++j)
        c.push_back(a.coeff(static_cast<size_t>(j)));
    return QPoly(std::move(c));
}

// Weight bookkeeping for one lifting run. All weights are integer ticks on
// the (1/mstar)Z grid: the monomial S^{t/mstar} D^i has weight t - gt*i.
struct Scan {
    std::optional<long long> known; // bottom weight over certified coefficients
    std::optional<long long> cap;   // weight from which truncation hides terms
};

void merge_min(std::optional<long long>& slot, long long v) {
    if (!slot || v < *slot) slot = v;
}

Scan scan_defect(const DiffOp& d, long long mstar, long long gt) {
    Scan s;
    for (size_t i = 0; i < d.coeffs().size(); ++i) {
        const Series& c = d.coeffs()[i];
        long long shift = gt * static_cast<long long>(i);
        if (auto prec = c.prec_exponent())
            merge_min(s.cap, ll_of_int(rat_num(*prec * mstar)) - shift);
        Valuation v = c.valuation();
        if (v.is_finite())
            merge_min(s.known, ll_of_int(rat_num(v.value * mstar)) - shift);
    }
    return s;
}

// The defect layer at weight `lam`: sum of [S^{(lam + gt*i)/mstar}] d_i * x^i.
QPoly defect_layer(const DiffOp& d, long long mstar, long long gt, long long lam) {
    std::vector<Rat> c(d.coeffs().size(), Rat(0));
    for (size_t i = 0; i < d.coeffs().size(); ++i) {
        const Series& coeff = d.coeffs()[i].lifted(ll_lcm(d.coeffs()[i].ram(), mstar));
        long long t = lam + gt * static_cast<long long>(i);
        long long scale = coeff.ram() / mstar;
        c[i] = coeff.coeff_tick(t * scale);
    }
    return QPoly(std::move(c));
}

void add_layer(std::vector<Series>& coeffs, const QPoly& layer, long long mstar,
               long long gt, long long weight) {
    for (long long k = 0; k <= layer.degree(); ++k) {
        Rat c = layer.coeff(static_cast<size_t>(k));
        if (c == 0) continue;
        Rat q = Rat(weight + gt * k) / mstar;
        coeffs[static_cast<size_t>(k)] =
            coeffs[static_cast<size_t>(k)] + Series::monomial(c, q, mstar);
    }
}

std::vector<std::pair<Rat, long long>> edge_shape(const NewtonPolygon& np) {
    std::vector<std::pair<Rat, long long>> out;
    for (const auto& e : np.edges) out.push_back({e.slope, e.i1 - e.i0});
    return out;
}

void verify_split(const NewtonPolygon& np, const Rat& gamma, long long nu,
                  const DiffOp& r, const DiffOp& q) {
    auto shape_r = edge_shape(newton_polygon(r));
    if (shape_r.size() != 1 || shape_r[0].first != gamma || shape_r[0].second != nu)
        throw InternalMismatchError(
            "slope factorization produced an impure extracted factor");
    auto expected = edge_shape(np);
    auto it = std::find(expected.begin(), expected.end(),
                        std::make_pair(gamma, nu));
    if (it == expected.end())
        throw InternalMismatchError("extracted edge vanished from the polygon");
    expected.erase(it);
    if (edge_shape(newton_polygon(q)) != expected)
        throw InternalMismatchError(
            "slope factorization failed to split the polygon edges");
}

} // namespace

SlopeFactorization slope_factor(const DiffOp& p, const Rat& gamma,
                                std::optional<long long> steps) {
    if (p.is_zero() || !p.is_monic())
        throw PreconditionError("slope factorization requires a monic operator");
    if (gamma < 0)
        throw PreconditionError("slopes are nonnegative");
    NewtonPolygon np = newton_polygon(p);
    const PolygonEdge* edge = np.edge_of_slope(gamma);
    if (!edge)
        throw PreconditionError("not a slope of the polygon: " + rat_str(gamma));
    const long long n = np.order;
    const long long nu = edge->i1 - edge->i0;
    if (nu >= n)
        throw PreconditionError("single-slope operator: nothing to split");

    const long long mstar = ll_lcm(p.ram(), ll_of_int(rat_den(gamma)));
    const long long gt = ll_of_int(rat_num(gamma * mstar)); // slope in ticks
    const QPoly& e_poly = edge->poly;
    if (e_poly.degree() != nu)
        throw InternalMismatchError("edge polynomial degree disagrees with the edge width");

    // Weight of the supporting line and of the factor bottoms.
    const long long t0 = ll_of_int(rat_num(edge->v0 * mstar)) - gt * edge->i0;
    const long long mu_r = -gt * nu;
    const long long mu_q = t0 - mu_r;
    const long long span = -ll_of_int(rat_num(np.vmin * mstar));
    const long long stop = t0 + (steps ? *steps : 2 * span + 10);

    // Seed both factors from the graded bottom: R gets the monicized edge
    // polynomial laid along its slope line, Q gets the contact monomial of
    // the complementary hull.
    std::vector<Series> rc(static_cast<size_t>(nu) + 1, Series::zero(mstar));
    std::vector<Series> qc(static_cast<size_t>(n - nu) + 1, Series::zero(mstar));
    rc[static_cast<size_t>(nu)] = Series::one(mstar);
    qc[static_cast<size_t>(n - nu)] = Series::one(mstar);

    const Rat u = e_poly.lead();
    QPoly base; // for gamma = 0 the indicial seed, otherwise the monic edge
    if (gt == 0) {
        // Bottom layers: P_w(D) = R_0(D + w) * c_nu with w = vmin < 0.
        base = e_poly.taylor_shift(-np.vmin).scaled(1 / u);
        add_layer(rc, base - QPoly::monomial(Rat(1), static_cast<size_t>(nu)),
                  mstar, gt, 0);
        add_layer(qc, QPoly(u), mstar, gt, mu_q);
    } else {
        if (e_poly.coeff(0) == 0)
            throw InternalMismatchError("positive-slope edge polynomial lost its constant term");
        base = e_poly.monic();
        add_layer(rc, base - QPoly::monomial(Rat(1), static_cast<size_t>(nu)),
                  mstar, gt, mu_r);
        if (edge->i0 < n - nu)
            add_layer(qc, QPoly::monomial(u, static_cast<size_t>(edge->i0)),
                      mstar, gt, mu_q);
        else if (u != 1)
            throw InternalMismatchError("edge touching the leading vertex must be monic");
    }

    bool exact = false;
    long long guard = stop - t0 + 8;
    while (true) {
        DiffOp defect = p - DiffOp(rc) * DiffOp(qc);
        Scan s = scan_defect(defect, mstar, gt);
        if (!s.known && !s.cap) {
            exact = true;
            break;
        }
        if (s.cap && (!s.known || *s.cap <= *s.known)) {
            if (*s.cap >= stop) break;
            throw PrecisionError(
                "input precision exhausted while lifting the slope factorization");
        }
        long long lam = *s.known;
        if (lam <= t0)
            throw InternalMismatchError("slope lifting defect fell below the polygon");
        if (lam >= stop) break;
        if (--guard < 0)
            throw InternalMismatchError("slope lifting stopped advancing");

        QPoly c = defect_layer(defect, mstar, gt, lam);
        if (c.degree() >= n)
            throw InternalMismatchError("slope lifting defect reached the leading term");

        QPoly w_layer, r_layer;
        if (gt == 0) {
            // c_nu * A(D + vmin) + R_0(D + lam) * W(D) = C(D)
            auto [quo, rem] = c.divmod(base.taylor_shift(Rat(lam) / mstar));
            w_layer = quo;
            r_layer = rem.taylor_shift(-np.vmin).scaled(1 / u);
        } else {
            // B(x) * W(x) + u * A(x) * x^{i0} = C(x) in the graded algebra
            long long i0 = edge->i0;
            QPoly w_low;
            if (i0 > 0)
                w_low = poly_mod(poly_mod(c, i0) * poly_inv_mod(base, i0), i0);
            QPoly reduced = c - base * w_low;
            if (poly_mod(reduced, i0) != QPoly())
                throw InternalMismatchError("graded solve failed to clear the contact column");
            auto [quo, rem] = poly_shift_down(reduced, i0).divmod(base);
            w_layer = w_low + QPoly::monomial(Rat(1), static_cast<size_t>(i0)) * quo;
            r_layer = rem.scaled(1 / u);
        }
        if (r_layer.degree() >= nu || w_layer.degree() >= n - nu)
            throw InternalMismatchError("slope lifting layer escaped its degree bound");
        add_layer(rc, r_layer, mstar, gt, lam - mu_q);
        add_layer(qc, w_layer, mstar, gt, lam - mu_r);
    }

    SlopeFactorization out;
    out.gamma = gamma;
    if (!exact) {
        out.achieved = Rat(stop) / mstar;
        for (long long k = 0; k < nu; ++k)
            rc[static_cast<size_t>(k)] =
                rc[static_cast<size_t>(k)].truncated(Rat(stop - mu_q + gt * k) / mstar);
        for (long long j = 0; j < n - nu; ++j)
            qc[static_cast<size_t>(j)] =
                qc[static_cast<size_t>(j)].truncated(Rat(stop - mu_r + gt * j) / mstar);
    }
    for (auto& c : rc) c = c.reduced();
    for (auto& c : qc) c = c.reduced();
    out.r = DiffOp(rc);
    out.q = DiffOp(qc);
    verify_split(np, gamma, nu, out.r, out.q);
    return out;
}

QPoly regular_reduce(const DiffOp& p) {
    if (p.is_zero() || !p.is_monic())
        throw PreconditionError("indicial reduction requires a monic operator");
    std::vector<Rat> c;
    for (int i = 0; i <= p.order(); ++i) {
        const Series& g = p.coeff(static_cast<size_t>(i));
        Valuation v = g.valuation();
        if (v.is_finite() && v.value < 0)
            throw PreconditionError("coefficient of D^" + std::to_string(i) +
                                    " has negative valuation");
        c.push_back(g.is_exact_zero() ? Rat(0) : g.constant_term());
    }
    return QPoly(std::move(c));
}

std::pair<DiffOp, DiffOp> decompose_reg_irr(const DiffOp& p,
                                            std::optional<long long> steps) {
    NewtonPolygon np = newton_polygon(p);
    DiffOp unit(Series::one());
    if (!np.edge_of_slope(Rat(0)))
        return {unit, p};
    if (np.edges.size() == 1)
        return {p, unit};
    SlopeFactorization sf = slope_factor(p, Rat(0), steps);
    return {sf.r, sf.q};
}

} // namespace dspec
