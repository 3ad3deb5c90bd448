#include "doctest.h"

#include "dspec/factor_q.hpp"
#include "dspec/qpoly.hpp"

using namespace dspec;

namespace {
QPoly P(std::vector<Rat> c) { return QPoly(std::move(c)); }
QPoly lin(const Rat& root) { return P({-root, Rat(1)}); } // x - root
} // namespace

TEST_CASE("splitting a cubic with a quadratic irreducible part") {
    QPoly f = (P({Rat(-2), Rat(0), Rat(1)})) * lin(Rat(1, 2));
    auto fac = factor_rational(f);
    REQUIRE(fac.size() == 2);
    CHECK(fac[0].first == lin(Rat(1, 2)));
    CHECK(fac[0].second == 1);
    CHECK(fac[1].first == P({Rat(-2), Rat(0), Rat(1)}));
    CHECK(fac[1].second == 1);
}

TEST_CASE("rational roots with denominators") {
    QPoly f = P({Rat(1), Rat(-5), Rat(6)}); // 6x^2 - 5x + 1
    auto fac = factor_rational(f);
    REQUIRE(fac.size() == 2);
    CHECK(fac[0].first == lin(Rat(1, 2)));
    CHECK(fac[1].first == lin(Rat(1, 3)));
}

TEST_CASE("irreducibles survive intact") {
    QPoly x4p1 = P({Rat(1), Rat(0), Rat(0), Rat(0), Rat(1)});
    auto fac = factor_rational(x4p1); // reducible mod every prime, not over Q
    REQUIRE(fac.size() == 1);
    CHECK(fac[0].first == x4p1);
    CHECK(fac[0].second == 1);

    QPoly phi12 = P({Rat(1), Rat(0), Rat(-1), Rat(0), Rat(1)});
    auto fac12 = factor_rational(phi12);
    REQUIRE(fac12.size() == 1);
    CHECK(fac12[0].first == phi12);

    auto quad = factor_rational(P({Rat(1), Rat(1), Rat(1)}));
    REQUIRE(quad.size() == 1);
    CHECK(quad[0].first == P({Rat(1), Rat(1), Rat(1)}));
}

TEST_CASE("multiplicities recovered through the squarefree split") {
    QPoly f = lin(Rat(1)) * lin(Rat(1)) * lin(Rat(1)) * lin(Rat(-1));
    auto fac = factor_rational(f);
    REQUIRE(fac.size() == 2);
    CHECK(fac[0].first == lin(Rat(1)));
    CHECK(fac[0].second == 3);
    CHECK(fac[1].first == lin(Rat(-1)));
    CHECK(fac[1].second == 1);

    QPoly g = P({Rat(1), Rat(4), Rat(4)}); // (2x + 1)^2
    auto gf = factor_rational(g);
    REQUIRE(gf.size() == 1);
    CHECK(gf[0].first == lin(Rat(-1, 2)));
    CHECK(gf[0].second == 2);
}

TEST_CASE("repeated quadratic next to a distinct quadratic") {
    QPoly q1 = P({Rat(1), Rat(1), Rat(1)});
    QPoly q2 = P({Rat(-2), Rat(0), Rat(1)});
    auto fac = factor_rational(q1 * q1 * q2);
    REQUIRE(fac.size() == 2);
    CHECK(fac[0].first == q2);
    CHECK(fac[0].second == 1);
    CHECK(fac[1].first == q1);
    CHECK(fac[1].second == 2);
}

TEST_CASE("squarefree splitter orders monic factors") {
    QPoly f = P({Rat(6), Rat(0), Rat(-5), Rat(0), Rat(1)}); // (x^2-2)(x^2-3)
    auto fac = factor_squarefree_q(f);
    REQUIRE(fac.size() == 2);
    CHECK(fac[0] == P({Rat(-3), Rat(0), Rat(1)}));
    CHECK(fac[1] == P({Rat(-2), Rat(0), Rat(1)}));
}

TEST_CASE("product of all factors reproduces the monic input") {
    QPoly x = QPoly::x();
    QPoly f = (x * x * x - QPoly(Rat(7)) * x + QPoly(Rat(6)));
    // x^3 - 7x + 6 = (x-1)(x-2)(x+3)
    auto fac = factor_rational(f);
    REQUIRE(fac.size() == 3);
    QPoly prod(Rat(1));
    for (const auto& [p, m] : fac)
        for (int i = 0; i < m; ++i) prod = prod * p;
    CHECK(prod == f.monic());
    CHECK(fac[0].first == lin(Rat(2)));  // constant coefficient -2
    CHECK(fac[1].first == lin(Rat(1)));  // constant coefficient -1
    CHECK(fac[2].first == lin(Rat(-3))); // constant coefficient 3
}

TEST_CASE("larger mixed factorization") {
    // (x^2+x+1)(x^2-2)(x-1/2)^2 with a leading constant.
    QPoly f = P({Rat(1), Rat(1), Rat(1)}) * P({Rat(-2), Rat(0), Rat(1)}) *
              lin(Rat(1, 2)) * lin(Rat(1, 2));
    f = f.scaled(Rat(-12));
    auto fac = factor_rational(f);
    REQUIRE(fac.size() == 3);
    CHECK(fac[0].first == lin(Rat(1, 2)));
    CHECK(fac[0].second == 2);
    CHECK(fac[1].first == P({Rat(-2), Rat(0), Rat(1)}));
    CHECK(fac[1].second == 1);
    CHECK(fac[2].first == P({Rat(1), Rat(1), Rat(1)}));
    CHECK(fac[2].second == 1);
}
