#pragma once

#include "dspec/diffop.hpp"
#include "dspec/qpoly.hpp"

#include <optional>
#include <vector>

namespace dspec {

struct PolygonPoint {
    long long i; // power of D
    Rat v;       // valuation of that coefficient
};

struct PolygonEdge {
    Rat slope;         // >= 0, strictly increasing across the polygon
    long long i0, i1;  // horizontal span; width = i1 - i0 >= 1
    Rat v0;            // height of the left endpoint
    // Offset form of the edge polynomial: coefficient k is the series
    // coefficient of g_{i0+k} at exponent v0 + slope*k. Both endpoints lie on
    // the hull, so the constant and leading coefficients are nonzero.
    QPoly poly;
};

struct NewtonPolygon {
    Rat vmin;                        // lowest coefficient valuation
    std::vector<PolygonPoint> points; // finite points, ascending in i
    std::vector<PolygonEdge> edges;   // lower hull, ascending slope
    long long order = 0;

    const PolygonEdge* edge_of_slope(const Rat& s) const;
    // Sum of widths of edges with positive slope.
    long long irregular_width() const;
};

// Lower Newton polygon of a monic operator, anchored on the left at
// (0, vmin): the artificial point there makes every slope nonnegative and
// forces a slope-zero edge to start at zero whenever one exists. Throws
// PrecisionError when a truncated coefficient leaves the hull uncertified.
NewtonPolygon newton_polygon(const DiffOp& p);

// ASCII sketch of the polygon for terminal reports.
std::string polygon_sketch(const NewtonPolygon& np);

} // namespace dspec
