#include "doctest.h"

#include "dspec/error.hpp"
#include "dspec/parse.hpp"
#include "dspec/report.hpp"

#include "json.hpp"

#include <string>
#include <vector>

using namespace dspec;

TEST_CASE("polynomial text round-trips through the printer") {
    std::vector<QPoly> corpus = {
        QPoly(),
        QPoly(Rat(3)),
        QPoly(Rat(-3, 4)),
        QPoly::x(),
        QPoly(std::vector<Rat>{Rat(-1, 2), Rat(1)}),
        QPoly(std::vector<Rat>{Rat(-2), Rat(0), Rat(1)}),
        QPoly(std::vector<Rat>{Rat(1, 6), Rat(-5, 6), Rat(1)}),
        QPoly(std::vector<Rat>{Rat(1), Rat(-1)}),
        QPoly(std::vector<Rat>{Rat(0), Rat(0), Rat(7, 3)}),
    };
    for (const QPoly& p : corpus) {
        CAPTURE(p.to_string());
        CHECK(qpoly_from_text(p.to_string()) == p);
    }
    CHECK(qpoly_from_text("x^2-2") == QPoly(std::vector<Rat>{Rat(-2), Rat(0), Rat(1)}));

    CHECK_THROWS_AS(qpoly_from_text(""), ParseError);
    CHECK_THROWS_AS(qpoly_from_text("x +"), ParseError);
    CHECK_THROWS_AS(qpoly_from_text("x x"), ParseError);
    CHECK_THROWS_AS(qpoly_from_text("1/0"), ParseError);
    CHECK_THROWS_AS(qpoly_from_text("x^99999"), ParseError);
    CHECK_THROWS_AS(qpoly_from_text("y + 1"), ParseError);
}

TEST_CASE("spectrum JSON round-trips on representative spectra") {
    std::vector<std::string> inputs = {
        "D",
        "D - 1/S",
        "D^2 - 1/S",
        "(D - 1/S)*(D - 2)",
        "S^(1/2) + D",
        "1/6 + (-5/6)*D + D^2",
    };
    for (const std::string& text : inputs) {
        CAPTURE(text);
        Spectrum s = spectrum_of_operator(parse_operator(text));
        CHECK(spectrum_from_json(spectrum_json(s)) == s);
    }
    // A coset with an irrational pair of exponents survives the trip too.
    Spectrum alg = spectrum_constant_matrix({{Rat(0), Rat(1)}, {Rat(1), Rat(2)}});
    CHECK(spectrum_from_json(spectrum_json(alg)) == alg);
}

TEST_CASE("spectrum documents reject malformed input") {
    CHECK_THROWS_AS(spectrum_from_json("not json"), ParseError);
    CHECK_THROWS_AS(spectrum_from_json(R"({"gauss": []})"), ParseError);
    CHECK_THROWS_AS(spectrum_from_json(R"({"ram": 1, "gauss": ["x"], "cosets": []})"),
                    ParseError);
    CHECK_THROWS_AS(
        spectrum_from_json(R"({"ram": 1, "gauss": [], "cosets": [{"min_poly": "x"}]})"),
        ParseError);
}

TEST_CASE("operator report carries polygon, slopes, cosets, and spectrum") {
    Report r = analyze_operator(parse_operator("(D - 1/S)*(D - 2)"), true);
    CHECK(r.kind == "operator");
    CHECK(r.rank == 2);
    CHECK(r.verified.has_value());
    CHECK(*r.verified);

    nlohmann::json j = nlohmann::json::parse(report_json(r));
    CHECK(j["operator"] == "2*S^(-1) + (-2 - S^(-1))*D + D^2");
    CHECK(j["rank"] == 2);
    CHECK(j["polygon"]["vmin"] == "-1");
    REQUIRE(j["polygon"]["vertices"].size() == 3);
    CHECK(j["polygon"]["vertices"][0]["i"] == 0);
    CHECK(j["polygon"]["vertices"][0]["v"] == "-1");
    CHECK(j["polygon"]["vertices"][2]["i"] == 2);
    CHECK(j["polygon"]["vertices"][2]["v"] == "0");
    REQUIRE(j["slopes"].size() == 2);
    CHECK(j["slopes"][0]["gamma"] == "0");
    CHECK(j["slopes"][0]["multiplicity"] == 1);
    CHECK(j["slopes"][1]["gamma"] == "1");
    CHECK(j["edge_polynomial"] == "x - 2");
    REQUIRE(j["cosets"].size() == 1);
    CHECK(j["cosets"][0]["min_poly"] == "x");
    CHECK(j["cosets"][0]["lattice_den"] == 1);
    CHECK(j["spectrum"]["gauss"] == nlohmann::json::array({"0", "1"}));
    CHECK(j["verified"] == true);
    CHECK(!j.contains("radius"));

    // The full report document itself round-trips to its spectrum.
    CHECK(spectrum_from_json(report_json(r)) == r.spectrum);
}

TEST_CASE("numeric radii appear only when a radius is supplied") {
    Report r = analyze_operator(parse_operator("(D - 1/S)*(D - 2)"), false,
                                std::nullopt, Rat(1, 4));
    nlohmann::json j = nlohmann::json::parse(report_json(r));
    CHECK(j["radius"] == "1/4");
    REQUIRE(j["radii"].size() == 2);
    CHECK(j["radii"][0]["gamma"] == "0");
    CHECK(j["radii"][0]["radius"] == "1");
    CHECK(j["radii"][1]["gamma"] == "1");
    CHECK(j["radii"][1]["radius"] == "4");
    CHECK(!j.contains("verified"));
}

TEST_CASE("fractional slope reports stay exact") {
    Report r = analyze_operator(parse_operator("D^2 - 1/S"), false, std::nullopt,
                                Rat(1, 4));
    nlohmann::json j = nlohmann::json::parse(report_json(r));
    REQUIRE(j["slopes"].size() == 1);
    CHECK(j["slopes"][0]["gamma"] == "1/2");
    CHECK(j["slopes"][0]["multiplicity"] == 2);
    CHECK(j["edge_polynomial"].is_null());
    CHECK(j["cosets"].empty());
    CHECK(j["radii"][0]["radius"] == "2");
}

TEST_CASE("matrix reports run through a cyclic vector") {
    SeriesMat g = {{Series::constant(Rat(1, 2)), Series::zero()},
                   {Series::zero(), Series::constant(Rat(1, 3))}};
    Report r = analyze_matrix(g, true);
    CHECK(r.kind == "matrix");
    CHECK(r.rank == 2);
    CHECK(r.spectrum == spectrum_constant_matrix({{Rat(1, 2), Rat(0)}, {Rat(0), Rat(1, 3)}}));
    CHECK(spectrum_from_json(spectrum_json(r.spectrum)) == r.spectrum);
}

TEST_CASE("text reports summarize the pipeline") {
    Report r = analyze_operator(parse_operator("(D - 1/S)*(D - 2)"), true,
                                std::nullopt, Rat(1, 4));
    std::string text = report_text(r);
    CHECK(text.find("operator module of rank 2") != std::string::npos);
    CHECK(text.find("2*S^(-1) + (-2 - S^(-1))*D + D^2") != std::string::npos);
    CHECK(text.find("slope 0 over [0, 1]") != std::string::npos);
    CHECK(text.find("slope 1 over [1, 2]") != std::string::npos);
    CHECK(text.find("vertices: (0, -1) (1, -1) (2, 0)") != std::string::npos);
    CHECK(text.find("{x_{0,1}, x_{0,r^-1}} u (Z)") != std::string::npos);
    CHECK(text.find("gamma 1 -> 4") != std::string::npos);
    CHECK(text.find("cross-check passed") != std::string::npos);
}
