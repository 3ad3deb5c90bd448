#pragma once

#include "dspec/rat.hpp"

#include <string>
#include <utility>
#include <vector>

namespace dspec {

// Dense univariate polynomial over Q, little-endian coefficients, trailing
// zeros trimmed. The zero polynomial has degree -1.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(const Rat& c);
    explicit QPoly(std::vector<Rat> coeffs);

    static QPoly x();
    static QPoly monomial(const Rat& c, size_t k);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    // Coefficient of x^k; zero beyond the stored degree.
    Rat coeff(size_t k) const;
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat lead() const;

    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator-() const;
    QPoly operator*(const QPoly& o) const;
    QPoly scaled(const Rat& c) const;

    bool operator==(const QPoly& o) const { return c_ == o.c_; }
    bool operator!=(const QPoly& o) const { return !(*this == o); }
    // Lexicographic on (degree, coefficient list); a total order for set use.
    bool operator<(const QPoly& o) const;

    QPoly derivative() const;
    Rat eval(const Rat& a) const;
    QPoly monic() const;

    // p(x + a).
    QPoly taylor_shift(const Rat& a) const;

    // Quotient and remainder by a nonzero divisor.
    std::pair<QPoly, QPoly> divmod(const QPoly& d) const;
    // Exact division; throws InternalMismatchError if the remainder is nonzero.
    QPoly div_exact(const QPoly& d) const;

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rat> c_;
};

// Monic gcd (gcd of zero polynomials is zero).
QPoly qpoly_gcd(QPoly a, QPoly b);

// Product of the distinct irreducible factors, monic.
QPoly squarefree_part(const QPoly& f);

// Yun decomposition: list of (monic squarefree factor, multiplicity) with
// pairwise coprime factors; the product with multiplicities is f up to a
// constant.
std::vector<std::pair<QPoly, int>> yun_squarefree(const QPoly& f);

// Resultant of two polynomials over Q.
Rat resultant(const QPoly& f, const QPoly& g);

// Upper bound on the absolute value of any root (Cauchy bound).
Rat cauchy_root_bound(const QPoly& f);

} // namespace dspec
