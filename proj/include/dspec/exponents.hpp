#pragma once

#include "dspec/qpoly.hpp"

#include <string>
#include <vector>

namespace dspec {

// Coset of algebraic exponents modulo the lattice (1/den)Z: the roots of a
// monic irreducible polynomial, translated so that the root mean lies in
// [0, 1/den). Equality of normal forms decides equality of cosets: an
// irreducible polynomial never shares a root with a nontrivial rational
// translate of itself, so the cell representative is unique.
struct ExponentCoset {
    long long den = 1; // lattice (1/den)Z
    QPoly poly;        // monic irreducible, root mean in [0, 1/den)

    bool operator==(const ExponentCoset& o) const {
        return den == o.den && poly == o.poly;
    }
    bool operator!=(const ExponentCoset& o) const { return !(*this == o); }
    bool operator<(const ExponentCoset& o) const;

    Rat root_mean() const;
    std::string to_string() const;
};

// Normal form of roots(p) + (1/den)Z. p must be monic irreducible, den >= 1.
ExponentCoset make_coset(const QPoly& p, long long den);

// Coset of the single rational exponent a.
ExponentCoset coset_of_value(const Rat& a, long long den);

// All exponent cosets of a nonconstant polynomial: factor over Q, normalize
// each irreducible factor, merge duplicates (multiplicities are dropped,
// spectra are sets). Sorted.
std::vector<ExponentCoset> cosets_from_poly(const QPoly& p0, long long den);

// Structural equality with the lattice check the callers rely on.
bool coset_eq(const ExponentCoset& a, const ExponentCoset& b);

// Coset of (roots + t).
ExponentCoset translate_coset(const ExponentCoset& c, const Rat& t);

// Reinterpret modulo the finer lattice (1/new_den)Z; den must divide new_den
// (the canonical surjection of quotient groups).
ExponentCoset project_coset(const ExponentCoset& c, long long new_den);

// Equality by shift enumeration over all lattice translates within the
// Cauchy root bounds. Independent oracle for the normal-form comparison.
bool coset_eq_bruteforce(const ExponentCoset& a, const ExponentCoset& b);

} // namespace dspec
