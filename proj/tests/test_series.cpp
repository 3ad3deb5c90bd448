#include "doctest.h"

#include "dspec/error.hpp"
#include "dspec/series.hpp"

using namespace dspec;

TEST_CASE("monomials, grids, and coefficient access") {
    Series f = Series::monomial(Rat(2), Rat(1, 2)) - Series::monomial(Rat(3), Rat(2));
    CHECK(f.ram() == 2);
    CHECK(f.is_exact());
    CHECK(f.valuation().is_finite());
    CHECK(f.valuation().value == Rat(1, 2));
    CHECK(f.coeff(Rat(1, 2)) == 2);
    CHECK(f.coeff(Rat(1)) == 0);
    CHECK(f.coeff(Rat(17)) == 0); // exact series: every tail coefficient known
    CHECK(f.coeff(Rat(1, 3)) == 0); // off the grid but inside known range
    CHECK(f.to_string() == "2*S^(1/2) - 3*S^2");
}

TEST_CASE("zero forms") {
    CHECK(Series::zero().is_exact_zero());
    CHECK(Series::zero().valuation().is_plus_infinity());
    CHECK(Series::zero().to_string() == "0");
    Series oz = Series::unknown_below(Rat(3, 2));
    CHECK(oz.is_unknown_zero());
    CHECK(oz.valuation().is_unknown());
    CHECK(oz.to_string() == "O(S^(3/2))");
    CHECK_THROWS_AS(oz.coeff(Rat(2)), PrecisionError);
    CHECK(oz.coeff(Rat(1)) == 0);
}

TEST_CASE("addition tracks the weaker precision") {
    Series a = Series::one() + Series::unknown_below(Rat(2));
    Series b = Series::monomial(Rat(1), Rat(3));
    Series s = a + b;
    CHECK(s.prec_exponent() == Rat(2)); // the S^3 term is below the noise floor
    CHECK(s.coeff(Rat(0)) == 1);
    CHECK(s.coeff(Rat(1)) == 0);
    CHECK_THROWS_AS(s.coeff(Rat(2)), PrecisionError);
    CHECK(s.to_string() == "1 + O(S^2)");

    Series exact_sum = Series::one() + Series::monomial(Rat(1), Rat(-1));
    CHECK(exact_sum.is_exact());
    CHECK(exact_sum.to_string() == "S^(-1) + 1");
}

TEST_CASE("cancellation is exact") {
    Series f = Series::monomial(Rat(5), Rat(1, 3)) + Series::one();
    CHECK((f - f).is_exact_zero());
}

TEST_CASE("multiplication shifts precision by the other valuation") {
    Series a = Series::one() + Series::monomial(Rat(1), Rat(1)) +
               Series::unknown_below(Rat(2));
    Series b = Series::monomial(Rat(1), Rat(-1));
    Series p = a * b;
    CHECK(p.prec_exponent() == Rat(1));
    CHECK(p.coeff(Rat(-1)) == 1);
    CHECK(p.coeff(Rat(0)) == 1);
    CHECK(p.to_string() == "S^(-1) + 1 + O(S)");

    Series t = (Series::one() + Series::unknown_below(Rat(1))) *
               (Series::one() + Series::unknown_below(Rat(1)));
    CHECK(t.prec_exponent() == Rat(1));
    CHECK(t.coeff(Rat(0)) == 1);

    Series e = (Series::one() - Series::monomial(Rat(1), Rat(1))) *
               (Series::one() + Series::monomial(Rat(1), Rat(1)));
    CHECK(e.is_exact());
    CHECK(e.to_string() == "1 - S^2");
}

TEST_CASE("unknown zero times exact keeps the bound additive") {
    Series oz = Series::unknown_below(Rat(2));
    Series m = Series::monomial(Rat(3), Rat(-1, 2));
    Series p = oz * m;
    CHECK(p.is_unknown_zero());
    CHECK(p.prec_exponent() == Rat(3, 2));
    Series q = oz * Series::unknown_below(Rat(1, 2));
    CHECK(q.prec_exponent() == Rat(5, 2));
}

TEST_CASE("scaling by zero is exact annihilation") {
    Series a = Series::one() + Series::unknown_below(Rat(2));
    CHECK(a.scaled(Rat(0)).is_exact_zero());
    CHECK(a.scaled(Rat(2)).coeff(Rat(0)) == 2);
}

TEST_CASE("derivation multiplies by the exponent") {
    Series f = Series::constant(Rat(2)) + Series::monomial(Rat(3), Rat(1, 2));
    Series d = f.delta();
    CHECK(d.to_string() == "3/2*S^(1/2)");
    // delta respects Leibniz on series.
    Series g = Series::monomial(Rat(1), Rat(-1)) + Series::one();
    CHECK((f * g).delta() == f.delta() * g + f * g.delta());
}

TEST_CASE("shift and truncate") {
    Series f = Series::one() + Series::monomial(Rat(1), Rat(1));
    Series s = f.shifted(Rat(-1, 2));
    CHECK(s.ram() == 2);
    CHECK(s.to_string() == "S^(-1/2) + S^(1/2)");
    Series t = f.truncated(Rat(1));
    CHECK(t.to_string() == "1 + O(S)");
    CHECK(t.truncated(Rat(5)) == t); // never loosens
}

TEST_CASE("grid lift and reduction round-trip") {
    Series f = Series::monomial(Rat(1), Rat(1, 2)) + Series::one();
    Series lifted = f.lifted(6);
    CHECK(lifted.ram() == 6);
    CHECK(lifted == f); // equality compares reduced forms
    CHECK(lifted.reduced().ram() == 2);
    CHECK_THROWS_AS(f.lifted(3), PreconditionError);
}

TEST_CASE("inversion of a monomial is exact") {
    Series f = Series::monomial(Rat(2), Rat(-3));
    Series g = f.inverted();
    CHECK(g.is_exact());
    CHECK(g.to_string() == "1/2*S^3");
    CHECK((f * g).to_string() == "1");
}

TEST_CASE("inversion expands a geometric tail") {
    Series f = Series::one() - Series::monomial(Rat(1), Rat(1));
    Series g = f.inverted(4);
    CHECK(g.to_string() == "1 + S + S^2 + S^3 + O(S^4)");
    Series prod = f * g;
    CHECK(prod.coeff(Rat(0)) == 1);
    CHECK(prod.coeff(Rat(3)) == 0);
}

TEST_CASE("inversion respects input precision") {
    Series f = Series::one() + Series::monomial(Rat(1), Rat(1)) +
               Series::unknown_below(Rat(2));
    CHECK(f.inverted().to_string() == "1 - S + O(S^2)");
    Series g = Series::monomial(Rat(1), Rat(-1)) + Series::one() +
               Series::unknown_below(Rat(1));
    CHECK(g.inverted().to_string() == "S - S^2 + O(S^3)");
    CHECK_THROWS_AS(Series::unknown_below(Rat(1)).inverted(), PrecisionError);
    CHECK_THROWS_AS(Series::zero().inverted(), PreconditionError);
}

TEST_CASE("gauge unit solves the rank one regular equation") {
    // delta(g) = f*g for f = S^(1/2).
    Series f = Series::monomial(Rat(1), Rat(1, 2));
    Series g = gauge_solve(f, 5);
    CHECK(g.to_string() ==
          "1 + 2*S^(1/2) + 2*S + 4/3*S^(3/2) + 2/3*S^2 + O(S^(5/2))");
    CHECK(g.delta() == (f * g).truncated(Rat(5, 2)));
}

TEST_CASE("gauge unit on an integer-grid input") {
    Series f = Series::monomial(Rat(1), Rat(1)); // delta(g) = S g
    Series g = gauge_solve(f, 4);
    // c_q = c_{q-1}/q: exp(S) pattern.
    CHECK(g.coeff(Rat(0)) == 1);
    CHECK(g.coeff(Rat(1)) == 1);
    CHECK(g.coeff(Rat(2)) == Rat(1, 2));
    CHECK(g.coeff(Rat(3)) == Rat(1, 6));
    CHECK(g.prec_exponent() == Rat(4));
    CHECK(gauge_solve(Series::zero(), 9) == Series::one());
    CHECK_THROWS_AS(gauge_solve(Series::one(), 4), PreconditionError);
}

TEST_CASE("gauge unit caps at the input precision") {
    Series f = Series::monomial(Rat(1), Rat(1)) + Series::unknown_below(Rat(3));
    Series g = gauge_solve(f, 100);
    CHECK(g.prec_exponent() == Rat(3));
}
