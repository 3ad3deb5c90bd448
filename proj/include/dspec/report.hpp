#pragma once

#include "dspec/newton.hpp"
#include "dspec/spectrum.hpp"

#include <optional>
#include <string>

namespace dspec {

// Everything one analysis run learned about a module, gathered for output.
struct Report {
    std::string kind;          // "operator" or "matrix"
    std::string operator_text; // canonical text of the monic operator analyzed
    long long rank = 0;
    NewtonPolygon polygon;
    Spectrum spectrum;
    std::optional<Rat> radius;    // numeric ground radius, when requested
    std::optional<bool> verified; // factorization cross-check outcome, when run
};

// Full pipeline on an operator (monicized first) or on a matrix module via a
// cyclic vector. With verify set, the spectrum is recomputed through the slope
// factorization; disagreement throws, so a returned report records success.
Report analyze_operator(const DiffOp& p, bool verify = false,
                        std::optional<long long> steps = std::nullopt,
                        std::optional<Rat> radius = std::nullopt);
Report analyze_matrix(const SeriesMat& g, bool verify = false,
                      std::optional<long long> steps = std::nullopt,
                      std::optional<Rat> radius = std::nullopt);

// JSON document with every rational rendered as a "p/q" string: input echo,
// polygon vertices/edges, slopes with multiplicities, the slope-zero edge
// polynomial, exponent cosets, the spectrum, optional numeric radii, and the
// verification verdict when the cross-check ran.
std::string report_json(const Report& r);

// Human-readable summary with the ASCII polygon sketch.
std::string report_text(const Report& r);

// Spectrum <-> JSON: {"ram": int, "gauss": ["p/q", ...],
// "cosets": [{"min_poly": text, "lattice_den": int}, ...]}.
// spectrum_from_json(spectrum_json(s)) == s.
std::string spectrum_json(const Spectrum& s);
Spectrum spectrum_from_json(const std::string& text);

// Standalone polygon document: {"polygon": {...}, "slopes": [...],
// "edge_polynomial": ...} with the same layout as the full report.
std::string polygon_json(const NewtonPolygon& np);

// Inverse of QPoly::to_string for polynomials in x.
QPoly qpoly_from_text(const std::string& text);

} // namespace dspec
