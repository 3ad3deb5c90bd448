#include "doctest.h"

#include "dspec/error.hpp"
#include "dspec/qpoly.hpp"

using namespace dspec;

namespace {
QPoly P(std::vector<Rat> c) { return QPoly(std::move(c)); }
} // namespace

TEST_CASE("construction trims and degrees") {
    CHECK(QPoly().degree() == -1);
    CHECK(QPoly(Rat(0)).is_zero());
    CHECK(P({Rat(1), Rat(0), Rat(0)}).degree() == 0);
    CHECK(QPoly::x().degree() == 1);
    CHECK(QPoly::monomial(Rat(3), 4).degree() == 4);
    CHECK(QPoly::monomial(Rat(0), 4).is_zero());
    CHECK(P({Rat(2), Rat(5)}).coeff(0) == 2);
    CHECK(P({Rat(2), Rat(5)}).coeff(7) == 0);
}

TEST_CASE("ring arithmetic") {
    QPoly x = QPoly::x();
    QPoly f = (x + QPoly(Rat(1))) * (x - QPoly(Rat(1)));
    CHECK(f == x * x - QPoly(Rat(1)));
    CHECK(f.eval(Rat(3)) == 8);
    CHECK((f - f).is_zero());
    CHECK((-f).lead() == -1);
    CHECK(f.scaled(Rat(1, 2)).lead() == Rat(1, 2));
}

TEST_CASE("evaluation and derivative") {
    QPoly f = P({Rat(5), Rat(-2), Rat(0), Rat(1)}); // x^3 - 2x + 5
    CHECK(f.eval(Rat(2)) == 9);
    CHECK(f.derivative() == P({Rat(-2), Rat(0), Rat(3)}));
    CHECK(QPoly(Rat(7)).derivative().is_zero());
}

TEST_CASE("taylor shift composes with evaluation") {
    QPoly f = P({Rat(-2), Rat(0), Rat(1)}); // x^2 - 2
    QPoly g = f.taylor_shift(Rat(3));       // (x+3)^2 - 2 = x^2 + 6x + 7
    CHECK(g == P({Rat(7), Rat(6), Rat(1)}));
    CHECK(g.eval(Rat(-1)) == f.eval(Rat(2)));
    CHECK(f.taylor_shift(Rat(1, 2)).taylor_shift(Rat(-1, 2)) == f);
}

TEST_CASE("division with remainder") {
    QPoly f = P({Rat(5), Rat(-2), Rat(0), Rat(1)}); // x^3 - 2x + 5
    QPoly d = P({Rat(1), Rat(0), Rat(1)});          // x^2 + 1
    auto [q, r] = f.divmod(d);
    CHECK(q == QPoly::x());
    CHECK(r == P({Rat(5), Rat(-3)}));
    CHECK(q * d + r == f);
    CHECK_THROWS_AS(f.divmod(QPoly()), PreconditionError);
    CHECK_THROWS_AS(f.div_exact(d), InternalMismatchError);
    CHECK((f * d).div_exact(d) == f);
}

TEST_CASE("ordering is by degree then leading coefficients") {
    QPoly a = P({Rat(-1, 2), Rat(1)});
    QPoly b = P({Rat(-1, 3), Rat(1)});
    CHECK(a < b);
    CHECK(b < QPoly::x() * QPoly::x());
    CHECK(!(a < a));
}

TEST_CASE("printing") {
    CHECK(P({Rat(-2), Rat(0), Rat(1)}).to_string("x") == "x^2 - 2");
    CHECK(P({Rat(1, 2), Rat(-1)}).to_string("x") == "-x + 1/2");
    CHECK(QPoly().to_string("x") == "0");
    CHECK(P({Rat(0), Rat(0), Rat(3, 4)}).to_string("T") == "3/4*T^2");
}

TEST_CASE("monic gcd") {
    QPoly x = QPoly::x();
    QPoly f = (x - QPoly(Rat(1))) * (x + QPoly(Rat(1)));
    QPoly g = (x - QPoly(Rat(1))) * (x - QPoly(Rat(1)));
    CHECK(qpoly_gcd(f, g) == x - QPoly(Rat(1)));
    CHECK(qpoly_gcd(f, QPoly()) == f.monic());
    CHECK(qpoly_gcd(f.scaled(Rat(6)), g.scaled(Rat(-2, 3))) == x - QPoly(Rat(1)));
}

TEST_CASE("squarefree structure") {
    QPoly x = QPoly::x();
    QPoly a = x - QPoly(Rat(1));
    QPoly b = x + QPoly(Rat(2));
    QPoly f = a * a * b;
    CHECK(squarefree_part(f) == a * b);
    auto parts = yun_squarefree(f);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].first == b);
    CHECK(parts[0].second == 1);
    CHECK(parts[1].first == a);
    CHECK(parts[1].second == 2);

    auto sq = yun_squarefree(a * b);
    REQUIRE(sq.size() == 1);
    CHECK(sq[0].first == (a * b).monic());
    CHECK(sq[0].second == 1);

    auto cube = yun_squarefree(b * b * b);
    REQUIRE(cube.size() == 1);
    CHECK(cube[0].second == 3);
}

TEST_CASE("resultant identities") {
    QPoly x = QPoly::x();
    QPoly f = x * x - QPoly(Rat(2));
    QPoly g = x * x - QPoly(Rat(3));
    CHECK(resultant(f, g) == 1);
    // res(x - a, g) = g(a) for monic linear first argument.
    QPoly lin = x - QPoly(Rat(2));
    QPoly h = x * x + QPoly(Rat(1));
    CHECK(resultant(h, lin) == h.eval(Rat(2)));
    // Multiplicativity in the second argument.
    CHECK(resultant(f, g * h) == resultant(f, g) * resultant(f, h));
    // Shared root makes the resultant vanish.
    CHECK(resultant(f, f * h) == 0);
    // Swapping arguments only changes the sign by (-1)^(deg f * deg g).
    CHECK(resultant(f, lin) == resultant(lin, f));
}

TEST_CASE("root bound dominates the actual roots") {
    QPoly x = QPoly::x();
    QPoly f = (x - QPoly(Rat(1))) * (x - QPoly(Rat(2)));
    CHECK(cauchy_root_bound(f) == 4); // roots 1 and 2
    CHECK(cauchy_root_bound(f.scaled(Rat(5))) == 4);
}
