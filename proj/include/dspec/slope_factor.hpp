#pragma once

#include "dspec/diffop.hpp"
#include "dspec/qpoly.hpp"

#include <optional>
#include <utility>

namespace dspec {

// Result of splitting a monic operator as P = R * Q along one polygon slope.
// R is the left factor and carries exactly the chosen edge; Q carries the
// remaining edges. When the defect vanishes during lifting both factors are
// exact and `achieved` is empty. Otherwise the factors carry precision marks
// and `achieved` is the weight bound: the product agrees with P on every
// monomial S^q D^i with q - gamma*i below it.
struct SlopeFactorization {
    DiffOp r;
    DiffOp q;
    Rat gamma;
    std::optional<Rat> achieved;
};

// Split the monic operator along `gamma`, which must be a polygon slope of
// multiplicity smaller than the order. `steps` is the number of weight grid
// ticks to lift past the bottom of the polygon (default: twice the polygon
// height span plus ten ticks). Fractional slopes produce factors on the
// finer grid lcm(ram, den gamma).
SlopeFactorization slope_factor(const DiffOp& p, const Rat& gamma,
                                std::optional<long long> steps = std::nullopt);

// Indicial polynomial of a regular-singular operator: x stands for D and
// every coefficient is replaced by its constant term. Requires monic input
// with no negative-valuation coefficient; the roots are the exponents.
QPoly regular_reduce(const DiffOp& p);

// Split into (regular part, irregular part): the left factor carries the
// slope-zero edge (trivial when there is none), the right factor all
// positive slopes (trivial when the operator is regular singular).
std::pair<DiffOp, DiffOp> decompose_reg_irr(const DiffOp& p,
                                            std::optional<long long> steps = std::nullopt);

} // namespace dspec
