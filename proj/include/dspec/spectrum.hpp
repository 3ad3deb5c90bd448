#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dspec/diffop.hpp"
#include "dspec/exponents.hpp"

namespace dspec {

// The point x_{0, r^{-gamma}} of the analytic line: center 0, radius r^{-gamma}
// for the symbolic ground radius r in (0,1).
struct GaussPoint {
    Rat gamma;

    bool operator==(const GaussPoint& o) const { return gamma == o.gamma; }
    bool operator!=(const GaussPoint& o) const { return !(*this == o); }
    bool operator<(const GaussPoint& o) const { return gamma < o.gamma; }
};

// A spectrum: finitely many Gauss points plus exponent cosets modulo the
// lattice (1/ram)Z of the ground field. Both lists are sorted and deduplicated;
// cosets are nonempty only when the Gauss point at radius 1 is present.
struct Spectrum {
    std::vector<GaussPoint> gauss;
    std::vector<ExponentCoset> cosets;
    long long ram = 1;

    bool operator==(const Spectrum& o) const;
    bool operator!=(const Spectrum& o) const { return !(*this == o); }
    std::string to_string() const;
};

// Canonicalizes (sort, dedup) and validates: gamma >= 0, coset lattice
// denominators equal ram, and cosets couple with the radius-1 Gauss point.
Spectrum make_spectrum(std::vector<GaussPoint> gauss,
                       std::vector<ExponentCoset> cosets, long long ram);

// Spectrum of the module defined by a monic operator: one Gauss point per
// polygon slope, and for the slope-zero edge the cosets of its edge-polynomial
// roots. With verify set, the result is recomputed through the slope
// factorization and the indicial polynomial of the regular part; disagreement
// is an internal inconsistency.
Spectrum spectrum_of_operator(const DiffOp& p, bool verify = false,
                              std::optional<long long> steps = std::nullopt);

// Spectrum of a matrix module via a cyclic vector.
Spectrum spectrum_of_matrix(const SeriesMat& g, bool verify = false,
                            std::optional<long long> steps = std::nullopt);

// Spectrum of the rank-one module with connection delta + f.
Spectrum spectrum_rank1(const Series& f);

// Spectrum of the module with constant matrix G: eigenvalue cosets plus the
// radius-1 Gauss point.
Spectrum spectrum_constant_matrix(const std::vector<std::vector<Rat>>& g);

// Characteristic polynomial det(x I - G), monic.
QPoly char_poly(const std::vector<std::vector<Rat>>& g);

// Spectrum of the translated module delta + (f + c): Gauss points absorb the
// shift, cosets translate.
Spectrum translate_spectrum(const Spectrum& s, const Rat& c);

// Set equality / union. Both require matching lattice denominators.
bool spectrum_eq(const Spectrum& a, const Spectrum& b);
Spectrum spectrum_union(const Spectrum& a, const Spectrum& b);

// Reinterprets a spectrum over the finer lattice (1/m)Z; m must be a multiple
// of the current ram. Cosets may merge.
Spectrum spectrum_to_ram(const Spectrum& s, long long m);

// Radius r^{-gamma} rendered exactly: a rational when the root is exact,
// otherwise a power expression.
std::string radius_string(const Rat& gamma, const Rat& r);

// All Gauss radii of the spectrum evaluated at a numeric radius r in (0,1).
std::vector<std::pair<Rat, std::string>> numeric_radii(const Spectrum& s,
                                                       const Rat& r);

} // namespace dspec
