#include "dspec/selftest.hpp"

#include <map>
#include <random>
#include <sstream>
#include <utility>

#include "dspec/error.hpp"
#include "dspec/exponents.hpp"
#include "dspec/newton.hpp"
#include "dspec/parse.hpp"
#include "dspec/ramify.hpp"
#include "dspec/report.hpp"

#include "json.hpp"

namespace dspec {

namespace {

// rng() % n is stable across standard libraries, unlike the distributions.
using Rng = std::mt19937_64;

size_t pick(Rng& rng, size_t n) { return static_cast<size_t>(rng() % n); }

long long pick_range(Rng& rng, long long lo, long long hi) {
    return lo + static_cast<long long>(rng() % static_cast<unsigned long long>(hi - lo + 1));
}

const std::vector<Rat>& coeff_pool() {
    static const std::vector<Rat> pool = {
        Rat(1),     Rat(-1), Rat(2),  Rat(-2),    Rat(1, 2),
        Rat(-1, 2), Rat(3),  Rat(1, 3), Rat(-3, 4), Rat(5),
    };
    return pool;
}

Rat rand_coeff(Rng& rng) { return coeff_pool()[pick(rng, coeff_pool().size())]; }

// Exact Laurent polynomial with 1..3 terms on the integer grid.
Series rand_series(Rng& rng, long long lo_exp, long long hi_exp) {
    std::map<Tick, Rat> ticks;
    size_t terms = 1 + pick(rng, 3);
    for (size_t t = 0; t < terms; ++t)
        ticks[pick_range(rng, lo_exp, hi_exp)] = rand_coeff(rng);
    return Series::from_ticks(1, std::move(ticks));
}

// Random operator of order 1..max_order with exact Laurent coefficients.
DiffOp rand_op(Rng& rng, long long max_order) {
    long long n = 1 + pick_range(rng, 0, max_order - 1);
    std::vector<Series> c;
    for (long long i = 0; i < n; ++i)
        c.push_back(pick(rng, 4) == 0 ? Series::zero() : rand_series(rng, -2, 2));
    c.push_back(rand_series(rng, -1, 1));
    DiffOp p(std::move(c));
    return p.order() >= 1 ? p : DiffOp::d() + DiffOp(Series::one());
}

// Monic operator whose coefficients are exact monomials (keeps polygons and
// products exact).
DiffOp rand_monic_op(Rng& rng, long long max_order) {
    long long n = 1 + pick_range(rng, 0, max_order - 1);
    std::vector<Series> c;
    for (long long i = 0; i < n; ++i) {
        if (pick(rng, 3) == 0) {
            c.push_back(Series::zero());
        } else {
            c.push_back(Series::monomial(rand_coeff(rng), Rat(pick_range(rng, -3, 1))));
        }
    }
    c.push_back(Series::one());
    return DiffOp(std::move(c));
}

// Product of rank-one factors D - c*S^{-k} with pairwise distinct slopes k.
struct Rank1Product {
    DiffOp op;
    std::vector<Series> fs;
};

Rank1Product rand_rank1_product(Rng& rng, size_t max_factors) {
    size_t nf = 1 + pick(rng, max_factors);
    std::vector<long long> ks = {0, 1, 2, 3};
    // Partial shuffle picking distinct slopes.
    for (size_t i = 0; i < nf; ++i)
        std::swap(ks[i], ks[i + pick(rng, ks.size() - i)]);
    Rank1Product out;
    out.op = DiffOp(Series::one());
    for (size_t i = 0; i < nf; ++i) {
        Series f = Series::monomial(rand_coeff(rng), Rat(-ks[i]));
        out.fs.push_back(f);
        out.op = out.op * (DiffOp::d() - DiffOp(f));
    }
    return out;
}

std::map<Rat, long long> slope_widths(const NewtonPolygon& np) {
    std::map<Rat, long long> w;
    for (const PolygonEdge& e : np.edges) w[e.slope] += e.i1 - e.i0;
    return w;
}

struct Suite {
    Rng rng;
    PropertyResult result;

    explicit Suite(const std::string& name, std::uint64_t seed, size_t index) {
        // Decouple the streams so a failure's witness does not depend on the
        // other suites' consumption.
        rng.seed(seed + 0x9E3779B97F4A7C15ULL * (index + 1));
        result.name = name;
    }

    bool failed() const { return !result.passed; }

    void fail(long long k, const std::string& witness) {
        result.passed = false;
        std::ostringstream out;
        out << "case " << k << ": " << witness;
        result.witness = out.str();
    }

    // Runs one case, converting exceptions into failures with the witness.
    template <typename F>
    void run_case(long long k, const std::string& inputs, F&& body) {
        if (failed()) return;
        ++result.cases;
        try {
            if (!body()) fail(k, inputs);
        } catch (const std::exception& e) {
            fail(k, inputs + " raised " + std::string(e.what()));
        }
    }
};

std::string op_witness(const char* label, const DiffOp& p) {
    return std::string(label) + " = \"" + print_operator(p) + "\"";
}

std::string series_witness(const char* label, const Series& f) {
    return std::string(label) + " = \"" + series_text(f) + "\"";
}

PropertyResult leibniz_suite(std::uint64_t seed, long long count) {
    Suite s("leibniz", seed, 0);
    for (long long k = 0; k < count; ++k) {
        Series f = rand_series(s.rng, -2, 2);
        Series g = rand_series(s.rng, -2, 2);
        s.run_case(k, series_witness("f", f) + "; " + series_witness("g", g), [&] {
            return (f * g).delta() == f.delta() * g + f * g.delta();
        });
        DiffOp a = rand_op(s.rng, 2);
        DiffOp b = rand_op(s.rng, 2);
        Series h = rand_series(s.rng, 0, 3);
        s.run_case(k,
                   op_witness("A", a) + "; " + op_witness("B", b) + "; " +
                       series_witness("h", h),
                   [&] { return (a * b).apply(h) == a.apply(b.apply(h)); });
    }
    return s.result;
}

PropertyResult associativity_suite(std::uint64_t seed, long long count) {
    Suite s("associativity", seed, 1);
    for (long long k = 0; k < count; ++k) {
        DiffOp a = rand_op(s.rng, 2);
        DiffOp b = rand_op(s.rng, 2);
        DiffOp c = rand_op(s.rng, 2);
        s.run_case(k,
                   op_witness("A", a) + "; " + op_witness("B", b) + "; " +
                       op_witness("C", c),
                   [&] { return (a * b) * c == a * (b * c); });
    }
    return s.result;
}

// Random module with a computable spectrum over the integer grid.
SeriesMat rand_module(Rng& rng) {
    switch (pick(rng, 3)) {
    case 0: { // constant diagonal, rank 1 or 2
        if (pick(rng, 2) == 0)
            return {{Series::constant(rand_coeff(rng))}};
        SeriesMat g = mat_zero(2);
        g[0][0] = Series::constant(rand_coeff(rng));
        g[1][1] = Series::constant(rand_coeff(rng));
        return g;
    }
    case 1: // rank-one irregular
        return {{Series::monomial(rand_coeff(rng), Rat(-pick_range(rng, 1, 3)))}};
    default:
        return companion(rand_rank1_product(rng, 2).op);
    }
}

PropertyResult direct_sum_suite(std::uint64_t seed, long long count) {
    Suite s("direct_sum", seed, 2);
    for (long long k = 0; k < count; ++k) {
        SeriesMat a = rand_module(s.rng);
        SeriesMat b = rand_module(s.rng);
        std::string w = "A = " + print_matrix_json(a) + "; B = " + print_matrix_json(b);
        s.run_case(k, w, [&] {
            Spectrum sum = spectrum_of_matrix(direct_sum(a, b));
            return spectrum_eq(sum, spectrum_union(spectrum_of_matrix(a),
                                                   spectrum_of_matrix(b)));
        });
    }
    return s.result;
}

PropertyResult pullback_union_suite(std::uint64_t seed, long long count) {
    Suite s("pullback_union", seed, 3);
    for (long long k = 0; k < count; ++k) {
        DiffOp p = rand_rank1_product(s.rng, 2).op;
        long long m = 2 + static_cast<long long>(pick(s.rng, 2));
        s.run_case(k, op_witness("P", p) + "; m = " + std::to_string(m),
                   [&] { return check_pullback_union_law(p, m); });
    }
    return s.result;
}

PropertyResult polygon_additivity_suite(std::uint64_t seed, long long count) {
    Suite s("polygon_additivity", seed, 4);
    for (long long k = 0; k < count; ++k) {
        DiffOp p = rand_monic_op(s.rng, 2);
        DiffOp q = rand_monic_op(s.rng, 2);
        s.run_case(k, op_witness("P", p) + "; " + op_witness("Q", q), [&] {
            std::map<Rat, long long> lhs = slope_widths(newton_polygon(p * q));
            std::map<Rat, long long> rhs = slope_widths(newton_polygon(p));
            for (const auto& [slope, width] : slope_widths(newton_polygon(q)))
                rhs[slope] += width;
            return lhs == rhs;
        });
    }
    return s.result;
}

PropertyResult factor_vs_edge_suite(std::uint64_t seed, long long count) {
    Suite s("factor_vs_edge", seed, 5);
    for (long long k = 0; k < count; ++k) {
        Rank1Product prod = rand_rank1_product(s.rng, 3);
        s.run_case(k, op_witness("P", prod.op), [&] {
            // verify recomputes the spectrum through the slope factorization
            // and compares it with the polygon/edge path.
            Spectrum direct = spectrum_of_operator(prod.op, true);
            Spectrum fromFactors = spectrum_rank1(prod.fs[0]);
            for (size_t i = 1; i < prod.fs.size(); ++i)
                fromFactors = spectrum_union(fromFactors, spectrum_rank1(prod.fs[i]));
            return spectrum_eq(direct, fromFactors);
        });
    }
    return s.result;
}

PropertyResult gauge_invariance_suite(std::uint64_t seed, long long count) {
    Suite s("gauge_invariance", seed, 6);
    for (long long k = 0; k < count; ++k) {
        // Rank one: f and f + delta(g)/g for a unit g share a spectrum.
        Series f = pick(s.rng, 2) == 0
                       ? Series::monomial(rand_coeff(s.rng), Rat(-pick_range(s.rng, 0, 3)))
                       : Series::constant(rand_coeff(s.rng));
        std::map<Tick, Rat> unit = {{0, Rat(1)}, {1, rand_coeff(s.rng)}};
        if (pick(s.rng, 2) == 0) unit[2] = rand_coeff(s.rng);
        Series g = Series::from_ticks(1, std::move(unit));
        s.run_case(k, series_witness("f", f) + "; " + series_witness("g", g), [&] {
            Series shifted = f + g.delta() * g.inverted(24);
            return spectrum_rank1(shifted) == spectrum_rank1(f);
        });
        // Rank two: conjugation by a monomial diagonal is a base change.
        SeriesMat m = rand_module(s.rng);
        if (m.size() == 2) {
            SeriesMat h = mat_zero(2);
            h[0][0] = Series::monomial(Rat(1), Rat(pick_range(s.rng, -2, 2)));
            h[1][1] = Series::monomial(Rat(1), Rat(pick_range(s.rng, -2, 2)));
            std::string w = "G = " + print_matrix_json(m) + "; H = " + print_matrix_json(h);
            s.run_case(k, w, [&] {
                return spectrum_of_matrix(gauge_transform(m, h)) ==
                       spectrum_of_matrix(m);
            });
        }
    }
    return s.result;
}

PropertyResult coset_normalization_suite(std::uint64_t seed, long long count) {
    Suite s("coset_normalization", seed, 7);
    for (long long k = 0; k < count; ++k) {
        long long den = 1 + static_cast<long long>(pick(s.rng, 3));
        Rat a = rand_coeff(s.rng);
        long long shift_num = pick_range(s.rng, -4, 4);
        std::ostringstream w;
        w << "a = " << rat_str(a) << "; den = " << den << "; shift = " << shift_num
          << "/" << den;
        s.run_case(k, w.str(), [&] {
            ExponentCoset c = coset_of_value(a, den);
            // Normal form is idempotent and lattice translates collapse.
            if (make_coset(c.poly, den) != c) return false;
            if (translate_coset(c, Rat(shift_num, den)) != c) return false;
            // The normal-form comparison agrees with shift enumeration.
            ExponentCoset d = coset_of_value(a + Rat(shift_num, den), den);
            if (!coset_eq(c, d) || !coset_eq_bruteforce(c, d)) return false;
            ExponentCoset e = coset_of_value(a + Rat(1, den + 1), den);
            return coset_eq(c, e) == coset_eq_bruteforce(c, e);
        });
    }
    return s.result;
}

PropertyResult json_roundtrip_suite(std::uint64_t seed, long long count) {
    Suite s("json_roundtrip", seed, 8);
    for (long long k = 0; k < count; ++k) {
        DiffOp p = rand_rank1_product(s.rng, 3).op;
        s.run_case(k, op_witness("P", p), [&] {
            Spectrum sp = spectrum_of_operator(p);
            return spectrum_from_json(spectrum_json(sp)) == sp;
        });
    }
    return s.result;
}

} // namespace

bool SelftestReport::all_passed() const {
    for (const PropertyResult& p : properties)
        if (!p.passed) return false;
    return true;
}

std::string SelftestReport::to_string() const {
    std::ostringstream out;
    out << "selftest seed " << seed << ", " << count << " cases per property\n";
    for (const PropertyResult& p : properties) {
        out << "  " << p.name << ": "
            << (p.passed ? "pass" : "FAIL") << " (" << p.cases << " cases)";
        if (!p.passed) out << "\n    witness: " << p.witness;
        out << "\n";
    }
    out << (all_passed() ? "all properties passed" : "PROPERTY FAILURES") << "\n";
    return out.str();
}

std::string SelftestReport::to_json() const {
    nlohmann::ordered_json j;
    j["seed"] = seed;
    j["count"] = count;
    j["properties"] = nlohmann::ordered_json::array();
    for (const PropertyResult& p : properties) {
        nlohmann::ordered_json pj;
        pj["name"] = p.name;
        pj["cases"] = p.cases;
        pj["passed"] = p.passed;
        if (!p.passed) pj["witness"] = p.witness;
        j["properties"].push_back(pj);
    }
    j["passed"] = all_passed();
    return j.dump(2);
}

SelftestReport run_selftest(std::uint64_t seed, long long count) {
    SelftestReport report;
    report.seed = seed;
    report.count = count;
    if (count <= 0) return report;
    report.properties.push_back(leibniz_suite(seed, count));
    report.properties.push_back(associativity_suite(seed, count));
    report.properties.push_back(direct_sum_suite(seed, count));
    report.properties.push_back(pullback_union_suite(seed, count));
    report.properties.push_back(polygon_additivity_suite(seed, count));
    report.properties.push_back(factor_vs_edge_suite(seed, count));
    report.properties.push_back(gauge_invariance_suite(seed, count));
    report.properties.push_back(coset_normalization_suite(seed, count));
    report.properties.push_back(json_roundtrip_suite(seed, count));
    return report;
}

} // namespace dspec
