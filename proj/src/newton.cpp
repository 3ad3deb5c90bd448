#include "dspec/newton.hpp"

#include "dspec/error.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace dspec {

const PolygonEdge* NewtonPolygon::edge_of_slope(const Rat& s) const {
    for (const PolygonEdge& e : edges)
        if (e.slope == s) return &e;
    return nullptr;
}

long long NewtonPolygon::irregular_width() const {
    long long w = 0;
    for (const PolygonEdge& e : edges)
        if (e.slope > 0) w += e.i1 - e.i0;
    return w;
}

namespace {

struct HullPt {
    long long x;
    Rat y;
};

// Cross product sign for the turn a -> b -> c; lower hull keeps strict right
// turns, so collinear middle points are dropped.
Rat cross(const HullPt& a, const HullPt& b, const HullPt& c) {
    return Rat(b.x - a.x) * (c.y - a.y) - (b.y - a.y) * Rat(c.x - a.x);
}

} // namespace

NewtonPolygon newton_polygon(const DiffOp& p) {
    if (p.is_zero()) throw PreconditionError("zero operator has no polygon");
    if (!p.is_monic())
        throw PreconditionError("newton polygon requires a monic operator");
    long long n = p.order();
    NewtonPolygon np;
    np.order = n;
    std::vector<std::pair<long long, Rat>> uncertified; // (i, precision bound)
    for (long long i = 0; i <= n; ++i) {
        Series g = p.coeff(static_cast<size_t>(i));
        Valuation v = g.valuation();
        if (v.is_finite()) np.points.push_back({i, v.value});
        else if (v.is_unknown()) uncertified.emplace_back(i, *g.prec_exponent());
    }
    np.vmin = np.points.front().v;
    for (const PolygonPoint& pt : np.points) np.vmin = std::min(np.vmin, pt.v);

    // Best height per abscissa, with the artificial anchor (0, vmin).
    std::map<long long, Rat> best;
    best[0] = np.vmin;
    for (const PolygonPoint& pt : np.points) {
        auto [it, fresh] = best.emplace(pt.i, pt.v);
        if (!fresh) it->second = std::min(it->second, pt.v);
    }
    std::vector<HullPt> hull;
    for (const auto& [x, y] : best) {
        HullPt c{x, y};
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), c) <= 0)
            hull.pop_back();
        hull.push_back(c);
    }
    if (hull.back().x != n || hull.back().y != 0)
        throw InternalMismatchError("polygon does not end at the monic corner");

    // A truncated coefficient certifies the hull only if its bound cannot dip
    // below it.
    for (const auto& [i, bound] : uncertified) {
        Rat h;
        for (size_t k = 0; k + 1 < hull.size(); ++k) {
            if (hull[k].x <= i && i <= hull[k + 1].x) {
                Rat t = Rat(i - hull[k].x) / Rat(hull[k + 1].x - hull[k].x);
                h = hull[k].y + t * (hull[k + 1].y - hull[k].y);
                break;
            }
        }
        if (bound < h)
            throw PrecisionError(
                "coefficient of D^" + std::to_string(i) +
                " is truncated above the polygon; its valuation could lower the hull");
    }

    Rat prev_slope(-1);
    for (size_t k = 0; k + 1 < hull.size(); ++k) {
        PolygonEdge e;
        e.i0 = hull[k].x;
        e.i1 = hull[k + 1].x;
        e.v0 = hull[k].y;
        e.slope = (hull[k + 1].y - hull[k].y) / Rat(e.i1 - e.i0);
        if (e.slope < 0 || e.slope <= prev_slope)
            throw InternalMismatchError("polygon slopes must increase from zero");
        prev_slope = e.slope;
        std::vector<Rat> c(static_cast<size_t>(e.i1 - e.i0) + 1, Rat(0));
        for (long long j = 0; j <= e.i1 - e.i0; ++j) {
            Rat exp = e.v0 + e.slope * j;
            c[static_cast<size_t>(j)] = p.coeff(static_cast<size_t>(e.i0 + j)).coeff(exp);
        }
        e.poly = QPoly(std::move(c));
        if (e.poly.degree() != e.i1 - e.i0)
            throw InternalMismatchError("edge polynomial lost its right endpoint");
        // The left endpoint of a positive-slope edge is a real vertex; only
        // the slope-zero edge may start at the artificial anchor.
        if (e.slope > 0 && e.poly.coeff(0) == 0)
            throw InternalMismatchError("edge polynomial lost its left endpoint");
        np.edges.push_back(std::move(e));
    }
    return np;
}

std::string polygon_sketch(const NewtonPolygon& np) {
    std::ostringstream out;
    // Grid sketch when the exponent grid is coarse enough to draw.
    long long den = 1;
    Rat vmax = np.vmin;
    for (const PolygonPoint& pt : np.points) {
        den = ll_lcm(den, ll_of_int(rat_den(pt.v)));
        vmax = std::max(vmax, pt.v);
    }
    Rat span = (vmax - np.vmin) * den;
    long long rows = ll_of_int(rat_num(span)) + 1;
    if (np.order <= 24 && rows <= 20) {
        std::set<std::pair<long long, long long>> pts, verts; // (i, y*den)
        for (const PolygonPoint& pt : np.points)
            pts.emplace(pt.i, ll_of_int(rat_num(pt.v * den)));
        for (const PolygonEdge& e : np.edges) {
            verts.emplace(e.i0, ll_of_int(rat_num(e.v0 * den)));
            verts.emplace(e.i1, ll_of_int(rat_num((e.v0 + e.slope * (e.i1 - e.i0)) * den)));
        }
        verts.emplace(0, ll_of_int(rat_num(np.vmin * den)));
        for (long long r = rows - 1; r >= 0; --r) {
            long long yt = ll_of_int(rat_num(np.vmin * den)) + r;
            std::string label = rat_str(Rat(yt) / den);
            out << std::string(label.size() < 7 ? 7 - label.size() : 0, ' ')
                << label << " |";
            for (long long i = 0; i <= np.order; ++i) {
                bool v = verts.count({i, yt}) > 0;
                bool q = pts.count({i, yt}) > 0;
                out << ' ' << (v ? 'o' : (q ? '*' : ' ')) << ' ';
            }
            out << '\n';
        }
        out << std::string(8, ' ') << '+' << std::string(3 * (np.order + 1), '-')
            << '\n' << std::string(8, ' ') << ' ';
        for (long long i = 0; i <= np.order; ++i) {
            std::string s = std::to_string(i);
            out << ' ' << s << std::string(s.size() < 2 ? 2 - s.size() : 0, ' ');
        }
        out << '\n';
    }
    if (np.edges.empty()) {
        out << "no edges (order zero)\n";
        return out.str();
    }
    for (const PolygonEdge& e : np.edges) {
        out << "slope " << rat_str(e.slope) << " over [" << e.i0 << ", " << e.i1
            << "]: E(x) = " << e.poly.to_string("x") << '\n';
    }
    return out.str();
}

} // namespace dspec
