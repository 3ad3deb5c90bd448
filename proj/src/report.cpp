#include "dspec/report.hpp"

#include <cctype>
#include <sstream>
#include <utility>
#include <vector>

#include "dspec/error.hpp"
#include "dspec/parse.hpp"

#include "json.hpp"

namespace dspec {

namespace {

using Json = nlohmann::ordered_json;

// Hull vertices: left endpoint of the first edge, then each edge's right end.
std::vector<PolygonPoint> hull_vertices(const NewtonPolygon& np) {
    std::vector<PolygonPoint> vs;
    if (np.edges.empty()) return vs;
    vs.push_back({np.edges.front().i0, np.edges.front().v0});
    for (const PolygonEdge& e : np.edges)
        vs.push_back({e.i1, e.v0 + e.slope * Rat(e.i1 - e.i0)});
    return vs;
}

Json coset_obj(const ExponentCoset& c) {
    Json j;
    j["min_poly"] = c.poly.to_string("x");
    j["lattice_den"] = c.den;
    return j;
}

Json spectrum_obj(const Spectrum& s) {
    Json j;
    j["ram"] = s.ram;
    j["gauss"] = Json::array();
    for (const GaussPoint& g : s.gauss) j["gauss"].push_back(rat_str(g.gamma));
    j["cosets"] = Json::array();
    for (const ExponentCoset& c : s.cosets) j["cosets"].push_back(coset_obj(c));
    return j;
}

Json polygon_obj(const NewtonPolygon& np) {
    Json poly;
    poly["vmin"] = rat_str(np.vmin);
    poly["vertices"] = Json::array();
    for (const PolygonPoint& v : hull_vertices(np)) {
        Json vj;
        vj["i"] = v.i;
        vj["v"] = rat_str(v.v);
        poly["vertices"].push_back(vj);
    }
    poly["edges"] = Json::array();
    for (const PolygonEdge& e : np.edges) {
        Json ej;
        ej["slope"] = rat_str(e.slope);
        ej["i0"] = e.i0;
        ej["i1"] = e.i1;
        ej["v0"] = rat_str(e.v0);
        ej["poly"] = e.poly.to_string("x");
        poly["edges"].push_back(ej);
    }
    return poly;
}

Json slopes_obj(const NewtonPolygon& np) {
    Json slopes = Json::array();
    for (const PolygonEdge& e : np.edges) {
        Json sj;
        sj["gamma"] = rat_str(e.slope);
        sj["multiplicity"] = e.i1 - e.i0;
        slopes.push_back(sj);
    }
    return slopes;
}

Json edge_poly_obj(const NewtonPolygon& np) {
    const PolygonEdge* flat = np.edge_of_slope(Rat(0));
    if (!flat) return nullptr;
    return flat->poly.monic().to_string("x");
}

} // namespace

QPoly qpoly_from_text(const std::string& text) {
    size_t at = 0;
    auto fail = [&](const std::string& what) -> void {
        throw ParseError("polynomial text: " + what + " at position " +
                         std::to_string(at));
    };
    auto skip = [&] {
        while (at < text.size() && text[at] == ' ') ++at;
    };
    auto digits = [&](const char* what) {
        size_t start = at;
        while (at < text.size() && std::isdigit(static_cast<unsigned char>(text[at]))) ++at;
        if (at == start) fail(what);
        return text.substr(start, at - start);
    };
    auto number = [&]() -> Rat {
        Int num(digits("expected a number"));
        Int den = 1;
        if (at < text.size() && text[at] == '/') {
            ++at;
            den = Int(digits("expected a denominator"));
            if (den == 0) fail("zero denominator");
        }
        return Rat(num, den);
    };

    std::vector<Rat> coeffs;
    auto add = [&](size_t k, const Rat& c) {
        if (coeffs.size() <= k) coeffs.resize(k + 1, Rat(0));
        coeffs[k] += c;
    };

    bool first = true;
    while (true) {
        skip();
        if (at == text.size()) {
            if (first) fail("empty polynomial");
            break;
        }
        Rat sign(1);
        if (text[at] == '+' || text[at] == '-') {
            if (text[at] == '-') sign = -1;
            ++at;
            skip();
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        Rat c(1);
        bool have_coef = false;
        if (at < text.size() && std::isdigit(static_cast<unsigned char>(text[at]))) {
            c = number();
            have_coef = true;
        }
        size_t save = at;
        skip();
        if (have_coef && at < text.size() && text[at] == '*') {
            ++at;
            skip();
            if (at >= text.size() || text[at] != 'x') fail("expected 'x'");
        }
        if (at < text.size() && text[at] == 'x') {
            ++at;
            size_t k = 1;
            if (at < text.size() && text[at] == '^') {
                ++at;
                std::string e = digits("expected an exponent");
                if (e.size() > 4) fail("exponent too large");
                k = static_cast<size_t>(std::stoul(e));
            }
            add(k, sign * c);
        } else if (have_coef) {
            at = save;
            add(0, sign * c);
        } else {
            fail("expected a term");
        }
        first = false;
    }
    return QPoly(std::move(coeffs));
}

std::string spectrum_json(const Spectrum& s) { return spectrum_obj(s).dump(2); }

Spectrum spectrum_from_json(const std::string& text) {
    try {
        Json j = Json::parse(text);
        // A full report document carries its spectrum under this key.
        if (j.contains("spectrum")) j = j["spectrum"];
        long long ram = j.at("ram").get<long long>();
        std::vector<GaussPoint> gauss;
        for (const auto& t : j.at("gauss"))
            gauss.push_back({rat_from_text(t.get<std::string>())});
        std::vector<ExponentCoset> cosets;
        for (const auto& c : j.at("cosets")) {
            QPoly p = qpoly_from_text(c.at("min_poly").get<std::string>());
            long long den = c.at("lattice_den").get<long long>();
            for (ExponentCoset& piece : cosets_from_poly(p, den))
                cosets.push_back(std::move(piece));
        }
        return make_spectrum(std::move(gauss), std::move(cosets), ram);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("spectrum document: ") + e.what());
    }
}

Report analyze_operator(const DiffOp& p, bool verify,
                        std::optional<long long> steps,
                        std::optional<Rat> radius) {
    if (p.order() < 1)
        throw PreconditionError("analysis needs an operator of order >= 1");
    DiffOp m = p.is_monic() ? p : p.monic();
    Report r;
    r.kind = "operator";
    r.operator_text = print_operator(m);
    r.rank = p.order();
    r.polygon = newton_polygon(m);
    r.spectrum = spectrum_of_operator(m, verify, steps);
    r.radius = std::move(radius);
    if (verify) r.verified = true; // a cross-check mismatch would have thrown
    return r;
}

Report analyze_matrix(const SeriesMat& g, bool verify,
                      std::optional<long long> steps,
                      std::optional<Rat> radius) {
    CyclicData cd = cyclic_vector(g, steps.value_or(Series::kDefaultSteps));
    Report r = analyze_operator(cd.op, verify, steps, std::move(radius));
    r.kind = "matrix";
    return r;
}

std::string polygon_json(const NewtonPolygon& np) {
    Json j;
    j["polygon"] = polygon_obj(np);
    j["slopes"] = slopes_obj(np);
    j["edge_polynomial"] = edge_poly_obj(np);
    return j.dump(2);
}

std::string report_json(const Report& r) {
    Json j;
    j["kind"] = r.kind;
    j["operator"] = r.operator_text;
    j["rank"] = r.rank;
    j["polygon"] = polygon_obj(r.polygon);
    j["slopes"] = slopes_obj(r.polygon);
    j["edge_polynomial"] = edge_poly_obj(r.polygon);

    j["cosets"] = Json::array();
    for (const ExponentCoset& c : r.spectrum.cosets)
        j["cosets"].push_back(coset_obj(c));

    j["spectrum"] = spectrum_obj(r.spectrum);

    if (r.radius) {
        j["radius"] = rat_str(*r.radius);
        j["radii"] = Json::array();
        for (const auto& [gamma, value] : numeric_radii(r.spectrum, *r.radius)) {
            Json rj;
            rj["gamma"] = rat_str(gamma);
            rj["radius"] = value;
            j["radii"].push_back(rj);
        }
    }
    if (r.verified) j["verified"] = *r.verified;
    return j.dump(2);
}

std::string report_text(const Report& r) {
    std::ostringstream out;
    out << r.kind << " module of rank " << r.rank << "\n";
    out << "operator: " << r.operator_text << "\n\n";
    out << "newton polygon (vmin = " << rat_str(r.polygon.vmin) << ")\n";
    out << polygon_sketch(r.polygon);
    out << "vertices:";
    for (const PolygonPoint& v : hull_vertices(r.polygon))
        out << " (" << v.i << ", " << rat_str(v.v) << ")";
    out << "\n";
    out << "slopes:";
    bool first = true;
    for (const PolygonEdge& e : r.polygon.edges) {
        out << (first ? " " : ", ") << rat_str(e.slope) << " (multiplicity "
            << e.i1 - e.i0 << ")";
        first = false;
    }
    out << "\n\n";
    out << "spectrum: " << r.spectrum.to_string() << "\n";
    if (!r.spectrum.cosets.empty()) {
        out << "exponent cosets:";
        for (const ExponentCoset& c : r.spectrum.cosets)
            out << " " << c.to_string() << ";";
        out << "\n";
    }
    if (r.radius) {
        out << "gauss radii at r = " << rat_str(*r.radius) << ":";
        for (const auto& [gamma, value] : numeric_radii(r.spectrum, *r.radius))
            out << " gamma " << rat_str(gamma) << " -> " << value << ";";
        out << "\n";
    }
    if (r.verified)
        out << "verification: factorization cross-check "
            << (*r.verified ? "passed" : "FAILED") << "\n";
    return out.str();
}

} // namespace dspec
