#pragma once

#include "dspec/rat.hpp"

#include <map>
#include <optional>
#include <string>

namespace dspec {

// Valuation of a series: the least exponent with nonzero coefficient.
struct Valuation {
    enum class Kind { Finite, PlusInfinity, Unknown };
    Kind kind = Kind::PlusInfinity;
    Rat value; // meaningful only when Finite

    static Valuation finite(const Rat& v) { return {Kind::Finite, v}; }
    static Valuation plus_infinity() { return {Kind::PlusInfinity, Rat(0)}; }
    static Valuation unknown() { return {Kind::Unknown, Rat(0)}; }

    bool is_finite() const { return kind == Kind::Finite; }
    bool is_plus_infinity() const { return kind == Kind::PlusInfinity; }
    bool is_unknown() const { return kind == Kind::Unknown; }
    std::string to_string() const;
};

// Formal Puiseux series over Q with exponents on the grid (1/ram)Z.
// Internally a term with exponent q is stored under the tick q*ram.
// Precision: either EXACT (the series is a finite sum, all further
// coefficients are zero) or "known below P": coefficients with tick < P are
// stored, everything from P on is unknown. Zero coefficients are never stored.
class Series {
public:
    Series() : ram_(1) {} // exact zero over ram 1

    static Series zero(long long ram = 1);
    static Series one(long long ram = 1);
    static Series constant(const Rat& c, long long ram = 1);
    // c * S^q; the grid is the denominator of q joined with ram_hint.
    static Series monomial(const Rat& c, const Rat& q, long long ram_hint = 1);
    // Zero known below exponent q (an O(S^q) placeholder).
    static Series unknown_below(const Rat& q, long long ram_hint = 1);
    static Series from_ticks(long long ram, std::map<Tick, Rat> coeffs,
                             std::optional<Tick> prec = std::nullopt);

    long long ram() const { return ram_; }
    const std::map<Tick, Rat>& ticks() const { return c_; }
    bool is_exact() const { return !prec_.has_value(); }
    std::optional<Tick> prec_ticks() const { return prec_; }
    std::optional<Rat> prec_exponent() const;
    bool is_exact_zero() const { return is_exact() && c_.empty(); }
    // True when no coefficient is known to be nonzero but the tail is unknown.
    bool is_unknown_zero() const { return !is_exact() && c_.empty(); }

    Valuation valuation() const;
    // Coefficient of S^q; throws PrecisionError if q is at or beyond the
    // known precision, or if q is off the grid (off-grid known region gives 0).
    Rat coeff(const Rat& q) const;
    Rat coeff_tick(Tick t) const;
    // Constant term f(0) (coefficient of S^0).
    Rat constant_term() const { return coeff(Rat(0)); }

    // Same series on a coarser-to-finer grid; new_ram must be a multiple of ram.
    Series lifted(long long new_ram) const;
    // Smallest grid that holds all stored data exactly.
    Series reduced() const;

    Series operator+(const Series& o) const;
    Series operator-(const Series& o) const;
    Series operator-() const;
    Series operator*(const Series& o) const;

    Series scaled(const Rat& c) const;
    // f * S^q.
    Series shifted(const Rat& q) const;
    // Truncate (tighten) precision to exponent q if that is tighter.
    Series truncated(const Rat& q) const;

    // The derivation S d/dS: acts on S^q by multiplication with q.
    Series delta() const;

    // Multiplicative inverse. The valuation must be known. If the inverse is
    // an infinite expansion the result is computed up to `steps` grid ticks
    // past its valuation (or to the precision forced by the input).
    Series inverted(long long steps = kDefaultSteps) const;

    bool operator==(const Series& o) const;
    bool operator!=(const Series& o) const { return !(*this == o); }

    std::string to_string() const;

    static constexpr long long kDefaultSteps = 50;

private:
    void normalize();
    long long ram_;
    std::map<Tick, Rat> c_;
    std::optional<Tick> prec_;
};

// |f| = r^{v(f)} for the family of absolute values parametrized by the radius
// r in (0,1); stored symbolically through the valuation.
struct AbsValue {
    Valuation v;
    bool is_zero() const { return v.is_plus_infinity(); }
    std::string to_string() const;
};

AbsValue abs_value(const Series& f);

// Solves S d/dS (g) = f * g with g(0) = 1 for v(f) > 0; g is returned with
// precision `target_ticks` on f's grid. This is the unit making a regular
// rank-one equation constant: f - delta(g)/g = f(0) when f has v(f) >= 0
// (apply to f minus its constant term).
Series gauge_solve(const Series& f, Tick target_ticks);

} // namespace dspec
