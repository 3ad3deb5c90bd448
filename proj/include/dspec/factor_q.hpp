#pragma once

#include "dspec/qpoly.hpp"

#include <utility>
#include <vector>

namespace dspec {

// Complete factorization over Q: returns the monic irreducible factors of f
// with multiplicities (the rational leading constant is dropped). f must be
// nonzero. Factors are sorted for deterministic output.
std::vector<std::pair<QPoly, int>> factor_rational(const QPoly& f);

// Factorization of a squarefree primitive integer polynomial handed over as
// monic rational factors. Internal building block, exposed for tests.
std::vector<QPoly> factor_squarefree_q(const QPoly& f);

} // namespace dspec
