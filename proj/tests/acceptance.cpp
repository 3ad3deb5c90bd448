// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Each criterion is exact (rational arithmetic throughout) and carries a
// wall-clock budget; a correct result that blows the budget still fails.

#include "dspec/diffop.hpp"
#include "dspec/exponents.hpp"
#include "dspec/newton.hpp"
#include "dspec/parse.hpp"
#include "dspec/ramify.hpp"
#include "dspec/selftest.hpp"
#include "dspec/slope_factor.hpp"
#include "dspec/spectrum.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

using namespace dspec;

namespace {

struct Gate {
    int failures = 0;

    void run(int num, const char* name, double budget_s,
             const std::function<bool(std::string&)>& body) {
        std::string detail;
        bool ok = false;
        auto t0 = std::chrono::steady_clock::now();
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        if (ok && secs > budget_s) {
            ok = false;
            detail = "over time budget";
        }
        if (!ok) ++failures;
        std::printf("%s %2d %-32s %8.1f ms%s%s\n", ok ? "PASS" : "FAIL", num,
                    name, secs * 1000.0, detail.empty() ? "" : "  -- ",
                    detail.c_str());
        std::fflush(stdout);
    }
};

Spectrum op_spectrum(const std::string& text, bool verify = false) {
    return spectrum_of_operator(parse_operator(text), verify);
}

// Rational coefficients drawn for randomized criteria.
const std::vector<Rat>& coeff_pool() {
    static const std::vector<Rat> pool = {Rat(1),     Rat(-1),    Rat(2),
                                          Rat(-2),    Rat(1, 2),  Rat(-1, 2),
                                          Rat(3),     Rat(1, 3),  Rat(-3, 4),
                                          Rat(5)};
    return pool;
}

struct Rank1Product {
    DiffOp op;
    std::vector<Series> fs;       // factor i is D - fs[i]
    std::vector<long long> ks;    // slope of factor i
};

Rank1Product random_rank1_product(std::mt19937_64& rng, size_t max_factors) {
    size_t nf = 1 + rng() % max_factors;
    std::vector<long long> ks = {0, 1, 2, 3};
    for (size_t i = 0; i < nf; ++i)
        std::swap(ks[i], ks[i + rng() % (ks.size() - i)]);
    ks.resize(nf);
    Rank1Product out;
    out.op = DiffOp(Series::one());
    out.ks = ks;
    for (long long k : ks) {
        Series f = Series::monomial(coeff_pool()[rng() % coeff_pool().size()],
                                    Rat(-k));
        out.fs.push_back(f);
        out.op = out.op * (DiffOp::d() - DiffOp(f));
    }
    return out;
}

DiffOp random_monic_op(std::mt19937_64& rng, int max_order) {
    int n = 1 + static_cast<int>(rng() % max_order);
    std::vector<Series> c;
    for (int i = 0; i < n; ++i) {
        if (rng() % 4 == 0) {
            c.push_back(Series::zero());
            continue;
        }
        Rat coef = coeff_pool()[rng() % coeff_pool().size()];
        long long e = static_cast<long long>(rng() % 5) - 3; // -3..1
        c.push_back(Series::monomial(coef, Rat(e)));
    }
    c.push_back(Series::one());
    return DiffOp(std::move(c));
}

// Multiset of (slope, width) pairs of the lower hull.
std::map<Rat, long long> slope_widths(const NewtonPolygon& np) {
    std::map<Rat, long long> w;
    for (const auto& e : np.edges) w[e.slope] += e.i1 - e.i0;
    return w;
}

bool operator_agrees(const DiffOp& a, const DiffOp& b) {
    DiffOp diff = a - b;
    for (const Series& s : diff.coeffs())
        if (!s.is_exact_zero() && !s.is_unknown_zero()) return false;
    return true;
}

} // namespace

int main() {
    Gate g;

    g.run(1, "euler operator spectrum", 1.0, [](std::string& detail) {
        Spectrum got = op_spectrum("D", true);
        Spectrum want = make_spectrum({GaussPoint{Rat(0)}},
                                      {coset_of_value(Rat(0), 1)}, 1);
        if (got != want) { detail = "got " + got.to_string(); return false; }
        return true;
    });

    g.run(2, "constant matrix exponents", 1.0, [](std::string& detail) {
        std::vector<std::vector<Rat>> G = {{Rat(1, 2), Rat(0)},
                                           {Rat(0), Rat(1, 3)}};
        Spectrum want = make_spectrum(
            {GaussPoint{Rat(0)}},
            {coset_of_value(Rat(1, 2), 1), coset_of_value(Rat(1, 3), 1)}, 1);
        Spectrum fromEigen = spectrum_constant_matrix(G);
        SeriesMat m = mat_zero(2);
        m[0][0] = Series::constant(Rat(1, 2));
        m[1][1] = Series::constant(Rat(1, 3));
        Spectrum fromCyclic = spectrum_of_matrix(m, true);
        if (fromEigen != want) {
            detail = "eigenvalue path got " + fromEigen.to_string();
            return false;
        }
        if (fromCyclic != want) {
            detail = "cyclic path got " + fromCyclic.to_string();
            return false;
        }
        return true;
    });

    g.run(3, "rank-one irregular point", 1.0, [](std::string& detail) {
        Spectrum got = op_spectrum("D - 1/S", true);
        Spectrum want = make_spectrum({GaussPoint{Rat(1)}}, {}, 1);
        if (got != want) { detail = "got " + got.to_string(); return false; }
        return true;
    });

    g.run(4, "fractional slope point", 1.0, [](std::string& detail) {
        Spectrum got = op_spectrum("D^2 - 1/S", true);
        Spectrum want = make_spectrum({GaussPoint{Rat(1, 2)}}, {}, 1);
        if (got != want) { detail = "got " + got.to_string(); return false; }
        return true;
    });

    g.run(5, "mixed module union", 1.0, [](std::string& detail) {
        Spectrum got = op_spectrum("(D - 1/S)*(D - 2)", true);
        Spectrum want = make_spectrum({GaussPoint{Rat(0)}, GaussPoint{Rat(1)}},
                                      {coset_of_value(Rat(2), 1)}, 1);
        if (got != want) { detail = "got " + got.to_string(); return false; }
        Spectrum fromFactors =
            spectrum_union(spectrum_rank1(Series::monomial(Rat(1), Rat(-1))),
                           spectrum_rank1(Series::constant(Rat(2))));
        if (got != fromFactors) {
            detail = "factor union got " + fromFactors.to_string();
            return false;
        }
        return true;
    });

    g.run(6, "pullback union law", 5.0, [](std::string& detail) {
        const char* ops[] = {"D", "D - 1/3", "D - 1/S", "D^2 - 1/S"};
        for (const char* text : ops)
            for (long long m : {2LL, 3LL})
                if (!check_pullback_union_law(parse_operator(text), m)) {
                    detail = std::string(text) + ", m = " + std::to_string(m);
                    return false;
                }
        return true;
    });

    g.run(7, "pushforward decomposition", 5.0, [](std::string& detail) {
        std::vector<std::pair<std::string, SeriesMat>> mods;
        for (const char* text : {"D", "D - 1/3", "D - 1/S", "D^2 - 1/S"})
            mods.emplace_back(text, companion(parse_operator(text)));
        SeriesMat diag = mat_zero(2);
        diag[0][0] = Series::constant(Rat(1, 2));
        diag[1][1] = Series::constant(Rat(1, 3));
        mods.emplace_back("diag(1/2, 1/3)", diag);
        for (const auto& [name, G] : mods)
            for (long long m : {2LL, 3LL}) {
                if (!pushforward_blocks_equivalent(G, m)) {
                    detail = name + ", m = " + std::to_string(m) +
                             ": block comparison";
                    return false;
                }
                if (!check_pushforward_roundtrip(G, m)) {
                    detail = name + ", m = " + std::to_string(m) +
                             ": spectrum round trip";
                    return false;
                }
            }
        return true;
    });

    g.run(8, "factorization oracle", 30.0, [](std::string& detail) {
        std::mt19937_64 rng(20260819u);
        for (int trial = 0; trial < 20; ++trial) {
            Rank1Product prod = random_rank1_product(rng, 3);
            auto fail = [&](const std::string& what) {
                detail = "trial " + std::to_string(trial) + " on P = " +
                         print_operator(prod.op) + ": " + what;
                return false;
            };
            // Polygon: one edge of width one per chosen slope.
            NewtonPolygon np = newton_polygon(prod.op);
            std::map<Rat, long long> want;
            for (long long k : prod.ks) want[Rat(k)] += 1;
            if (slope_widths(np) != want) return fail("polygon slopes");
            // Verified spectrum (recomputed through the factorization chain)
            // equals the union of the factors' rank-one spectra.
            Spectrum direct = spectrum_of_operator(prod.op, true);
            Spectrum fromFactors = spectrum_rank1(prod.fs[0]);
            for (size_t i = 1; i < prod.fs.size(); ++i)
                fromFactors =
                    spectrum_union(fromFactors, spectrum_rank1(prod.fs[i]));
            if (!spectrum_eq(direct, fromFactors))
                return fail("edge cosets vs factor cosets");
            // Explicit split along the top slope: the left factor carries
            // exactly that edge, the right factor the remaining ones, and the
            // product reproduces P within the achieved precision.
            if (prod.ks.size() >= 2) {
                Rat top = np.edges.back().slope;
                SlopeFactorization f = slope_factor(prod.op, top);
                std::map<Rat, long long> rw = slope_widths(newton_polygon(f.r));
                std::map<Rat, long long> qw = slope_widths(newton_polygon(f.q));
                std::map<Rat, long long> wantR = {{top, 1}};
                std::map<Rat, long long> wantQ = want;
                if (--wantQ[top] == 0) wantQ.erase(top);
                if (rw != wantR || qw != wantQ)
                    return fail("split polygon widths");
                if (!operator_agrees(f.r * f.q, prod.op))
                    return fail("R*Q disagrees with P");
                if (!f.achieved && f.r * f.q != prod.op)
                    return fail("exact split is not exact");
            }
        }
        return true;
    });

    g.run(9, "property suites", 60.0, [](std::string& detail) {
        SelftestReport report = run_selftest(2026, 25);
        long long total = 0;
        for (const auto& p : report.properties) total += p.cases;
        if (!report.all_passed()) {
            for (const auto& p : report.properties)
                if (!p.passed) detail += p.name + ": " + p.witness + "; ";
            return false;
        }
        if (total < 200) {
            detail = "only " + std::to_string(total) + " cases";
            return false;
        }
        for (const char* name :
             {"leibniz", "associativity", "polygon_additivity",
              "gauge_invariance", "coset_normalization"}) {
            bool found = false;
            for (const auto& p : report.properties) found |= p.name == name;
            if (!found) {
                detail = std::string("missing property ") + name;
                return false;
            }
        }
        return true;
    });

    g.run(10, "cyclic vector round trip", 30.0, [](std::string& detail) {
        std::mt19937_64 rng(4102u);
        for (int trial = 0; trial < 12; ++trial) {
            DiffOp p = random_monic_op(rng, 4);
            Spectrum fromOp = spectrum_of_operator(p);
            Spectrum fromMat = spectrum_of_matrix(companion(p));
            if (fromOp != fromMat) {
                detail = "trial " + std::to_string(trial) + " on P = " +
                         print_operator(p) + ": matrix path got " +
                         fromMat.to_string() + ", operator path got " +
                         fromOp.to_string();
                return false;
            }
        }
        return true;
    });

    std::printf("%d/10 criteria passed\n", 10 - g.failures);
    return g.failures == 0 ? 0 : 1;
}
