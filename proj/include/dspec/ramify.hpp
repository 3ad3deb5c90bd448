#pragma once

#include <optional>

#include "dspec/diffop.hpp"
#include "dspec/spectrum.hpp"

namespace dspec {

// Ground field extension k((S^{1/ram})) -> k((S^{1/(ram*m)})). The valuation
// stays normalized by v(S) = 1, so the pullback of a module is the same data
// reinterpreted on a grid refined m-fold; coefficients do not change as
// functions of S.
Series pullback(const Series& f, long long m);
SeriesMat pullback(const SeriesMat& g, long long m);
DiffOp pullback(const DiffOp& p, long long m);

// Restriction of scalars from k((S^{1/m})) down to k((S)): a rank-n module
// becomes rank n*m in the basis {e_j S^{i/m}} (flat index i*n + j). Entries of
// the result live on the integer grid. The input matrix must live on a grid
// dividing m.
SeriesMat pushforward(const SeriesMat& h, long long m);

// Block-diagonal reference matrix: the direct sum of the twists G + (i/m)I
// for i = 0..m-1, the normal form of pushforward(pullback(G, m)).
SeriesMat ramified_block_sum(const SeriesMat& g, long long m);

// Pushing a pullback back down yields exactly the block sum of twists
// (integer-grid input required).
bool pushforward_blocks_equivalent(const SeriesMat& g, long long m);

// The spectrum law for ground field extension: the spectrum of the pullback
// equals the union of the translates by i/(ram*m), i = 0..m-1, of the base
// spectrum reinterpreted over the finer lattice.
bool check_pullback_union_law(const DiffOp& p, long long m,
                              std::optional<long long> steps = std::nullopt);
bool check_pullback_union_law(const SeriesMat& g, long long m,
                              std::optional<long long> steps = std::nullopt);

// Restriction of scalars preserves the spectrum: the pullback's spectrum
// equals the spectrum of its pushforward, compared over the finer lattice.
bool check_pushforward_roundtrip(const SeriesMat& g, long long m,
                                 std::optional<long long> steps = std::nullopt);

} // namespace dspec
