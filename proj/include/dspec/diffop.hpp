#pragma once

#include "dspec/series.hpp"

#include <string>
#include <vector>

namespace dspec {

// Differential operator sum a_i(S) D^i over the Puiseux series field, where
// D f = f D + delta(f) and delta = S d/dS. Value type, little-endian in D.
class DiffOp {
public:
    DiffOp() = default;
    explicit DiffOp(Series a0) { c_.push_back(std::move(a0)); normalize(); }
    explicit DiffOp(std::vector<Series> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static DiffOp d(); // the bare operator D
    static DiffOp d_power(size_t k);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Series coeff(size_t i) const;
    const std::vector<Series>& coeffs() const { return c_; }
    // Smallest common exponent grid of all coefficients.
    long long ram() const;

    DiffOp operator+(const DiffOp& o) const;
    DiffOp operator-(const DiffOp& o) const;
    DiffOp operator-() const;
    // Noncommutative composition: (A*B).apply(f) = A.apply(B.apply(f)).
    DiffOp operator*(const DiffOp& o) const;
    bool operator==(const DiffOp& o) const;
    bool operator!=(const DiffOp& o) const { return !(*this == o); }

    // Left multiplication by a function (order-zero operator).
    DiffOp scaled(const Series& f) const;
    DiffOp scaled(const Rat& c) const;
    // Divide on the left by the leading coefficient; requires its valuation
    // to be known. Exact when the leading coefficient is a monomial.
    DiffOp monic() const;
    bool is_monic() const;

    Series apply(const Series& f) const;

    std::string to_string() const;

private:
    void normalize();
    std::vector<Series> c_;
};

// ---- rank-n modules: nabla = delta + G, columns of G are the images of the
// basis vectors ----

using SeriesVec = std::vector<Series>;
using SeriesMat = std::vector<std::vector<Series>>;

SeriesMat mat_zero(size_t n);
SeriesMat mat_identity(size_t n);
SeriesMat mat_scalar(const Rat& c, size_t n);
SeriesMat mat_add(const SeriesMat& a, const SeriesMat& b);
SeriesMat mat_sub(const SeriesMat& a, const SeriesMat& b);
SeriesMat mat_mul(const SeriesMat& a, const SeriesMat& b);
SeriesMat mat_scaled(const SeriesMat& a, const Series& f);
SeriesMat mat_delta(const SeriesMat& a);
SeriesVec mat_apply(const SeriesMat& a, const SeriesVec& v);
// Division-free determinant (subset dynamic programming over columns).
Series mat_det(const SeriesMat& a);
// Adjugate-based inverse; throws PreconditionError when det is zero and
// PrecisionError when the determinant's valuation is unknown.
SeriesMat mat_inverse(const SeriesMat& a, long long steps = Series::kDefaultSteps);
long long mat_ram(const SeriesMat& a);

// nabla(v) = delta(v) + G v.
SeriesVec nabla_apply(const SeriesMat& g, const SeriesVec& v);

// Block-diagonal join of two modules.
SeriesMat direct_sum(const SeriesMat& a, const SeriesMat& b);

// Base change to the basis given by the columns of H:
// G' = H^{-1} (G H + delta(H)).
SeriesMat gauge_transform(const SeriesMat& g, const SeriesMat& h,
                          long long steps = Series::kDefaultSteps);

// Module of the monic operator P: subdiagonal ones, last column -g_0..-g_{n-1}
// for P = D^n + sum g_i D^i.
SeriesMat companion(const DiffOp& p);

struct CyclicData {
    SeriesVec v;    // cyclic vector
    DiffOp op;      // monic operator annihilating it, order = rank
};

// Deterministic cyclic vector search: v, nabla v, ..., nabla^{n-1} v must be a
// basis; returns the vector and the monic operator with nabla^n v expressed in
// that basis. `steps` is the working precision (in grid ticks) used whenever a
// series inverse is not exact.
CyclicData cyclic_vector(const SeriesMat& g, long long steps = Series::kDefaultSteps);

// Test-only fault injection: while on, composition uses the wrong commutation
// rule D*f = f*D + delta(f) + f, so products stop agreeing with nested
// application. Thread-local; the selftest's negative control.
void debug_corrupt_commutation(bool on);

} // namespace dspec
