#include "doctest.h"

#include "dspec/error.hpp"
#include "dspec/newton.hpp"

using namespace dspec;

namespace {
Series mono(const Rat& c, const Rat& q) { return Series::monomial(c, q); }
QPoly P(std::vector<Rat> c) { return QPoly(std::move(c)); }
} // namespace

TEST_CASE("bare derivation has the lattice edge") {
    NewtonPolygon np = newton_polygon(DiffOp::d());
    CHECK(np.vmin == 0);
    REQUIRE(np.edges.size() == 1);
    CHECK(np.edges[0].slope == 0);
    CHECK(np.edges[0].i0 == 0);
    CHECK(np.edges[0].i1 == 1);
    CHECK(np.edges[0].poly == QPoly::x()); // root 0: the coset of the integers
    CHECK(np.irregular_width() == 0);
}

TEST_CASE("two-slope polygon of D^3 - S^-2 D") {
    DiffOp p = DiffOp::d_power(3) - DiffOp::d().scaled(mono(Rat(1), Rat(-2)));
    NewtonPolygon np = newton_polygon(p);
    CHECK(np.vmin == -2);
    REQUIRE(np.edges.size() == 2);
    CHECK(np.edges[0].slope == 0);
    CHECK(np.edges[0].i1 == 1);
    CHECK(np.edges[0].poly == P({Rat(0), Rat(-1)})); // -x
    CHECK(np.edges[1].slope == 1);
    CHECK(np.edges[1].i0 == 1);
    CHECK(np.edges[1].i1 == 3);
    CHECK(np.edges[1].v0 == -2);
    CHECK(np.edges[1].poly == P({Rat(-1), Rat(0), Rat(1)})); // x^2 - 1
    CHECK(np.irregular_width() == 2);
    CHECK(np.edge_of_slope(Rat(1)) == &np.edges[1]);
    CHECK(np.edge_of_slope(Rat(2)) == nullptr);
}

TEST_CASE("fractional slope from a ramified bottom") {
    DiffOp p = DiffOp::d_power(2) - DiffOp(mono(Rat(1), Rat(-1)));
    NewtonPolygon np = newton_polygon(p);
    REQUIRE(np.edges.size() == 1);
    CHECK(np.edges[0].slope == Rat(1, 2));
    CHECK(np.edges[0].i0 == 0);
    CHECK(np.edges[0].i1 == 2);
    CHECK(np.edges[0].poly == P({Rat(-1), Rat(0), Rat(1)}));

    DiffOp q = DiffOp::d_power(2) - DiffOp(mono(Rat(1), Rat(-3)));
    NewtonPolygon nq = newton_polygon(q);
    REQUIRE(nq.edges.size() == 1);
    CHECK(nq.edges[0].slope == Rat(3, 2));
    CHECK(nq.vmin == -3);
}

TEST_CASE("product operator separates regular and irregular edges") {
    // (D - S^-1)(D - 2) = D^2 - (2 + S^-1) D + 2 S^-1.
    DiffOp a = DiffOp::d() - DiffOp(mono(Rat(1), Rat(-1)));
    DiffOp b = DiffOp::d() - DiffOp(Series::constant(Rat(2)));
    NewtonPolygon np = newton_polygon(a * b);
    REQUIRE(np.edges.size() == 2);
    CHECK(np.edges[0].slope == 0);
    CHECK(np.edges[0].poly == P({Rat(2), Rat(-1)})); // -x + 2: exponent 2
    CHECK(np.edges[1].slope == 1);
    CHECK(np.edges[1].poly == P({Rat(-1), Rat(1)})); // x - 1: top coefficient 1
}

TEST_CASE("single irregular rank one operator") {
    DiffOp p = DiffOp::d() - DiffOp(mono(Rat(1), Rat(-1)));
    NewtonPolygon np = newton_polygon(p);
    REQUIRE(np.edges.size() == 1);
    CHECK(np.edges[0].slope == 1);
    CHECK(np.edges[0].poly == P({Rat(-1), Rat(1)}));
    CHECK(np.irregular_width() == 1);
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(newton_polygon(DiffOp()), PreconditionError);
    DiffOp nonmonic = DiffOp::d().scaled(mono(Rat(2), Rat(0)));
    CHECK_THROWS_AS(newton_polygon(nonmonic), PreconditionError);
    NewtonPolygon trivial = newton_polygon(DiffOp(Series::one()));
    CHECK(trivial.edges.empty());
}

TEST_CASE("truncated coefficients certify or refuse the hull") {
    Series g0 = mono(Rat(-1), Rat(-1));
    // Bound far above the hull: certified, same polygon as the exact case.
    DiffOp ok(std::vector<Series>{g0, Series::unknown_below(Rat(1)), Series::one()});
    NewtonPolygon np = newton_polygon(ok);
    REQUIRE(np.edges.size() == 1);
    CHECK(np.edges[0].slope == Rat(1, 2));
    CHECK(np.edges[0].poly == P({Rat(-1), Rat(0), Rat(1)}));

    // Bound below the hull: the unknown coefficient could create a new vertex.
    DiffOp bad(std::vector<Series>{g0, Series::unknown_below(Rat(-2)), Series::one()});
    CHECK_THROWS_AS(newton_polygon(bad), PrecisionError);

    // Bound exactly on the hull: the shape is safe but the edge coefficient
    // at that lattice point is unreadable.
    DiffOp edge_read(
        std::vector<Series>{g0, Series::unknown_below(Rat(-1, 2)), Series::one()});
    CHECK_THROWS_AS(newton_polygon(edge_read), PrecisionError);
}

TEST_CASE("sketch renders edges") {
    DiffOp a = DiffOp::d() - DiffOp(mono(Rat(1), Rat(-1)));
    DiffOp b = DiffOp::d() - DiffOp(Series::constant(Rat(2)));
    std::string s = polygon_sketch(newton_polygon(a * b));
    CHECK(s.find("slope 0 over [0, 1]: E(x) = -x + 2") != std::string::npos);
    CHECK(s.find("slope 1 over [1, 2]: E(x) = x - 1") != std::string::npos);
    CHECK(s.find('o') != std::string::npos);
}
