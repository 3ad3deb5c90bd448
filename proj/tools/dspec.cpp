#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "dspec/error.hpp"
#include "dspec/newton.hpp"
#include "dspec/parse.hpp"
#include "dspec/ramify.hpp"
#include "dspec/report.hpp"
#include "dspec/selftest.hpp"
#include "dspec/slope_factor.hpp"

#include "CLI11.hpp"
#include "json.hpp"

namespace {

using namespace dspec;
using Json = nlohmann::ordered_json;

struct Opts {
    std::string expr;
    std::string matrix_path;
    long long precision = -1; // -1 = library default
    long long ram = 1;        // spectrum: report over the lattice (1/ram)Z
    long long extension = 2;  // ramify: extension degree m
    std::string radius_text;
    std::uint64_t seed = 0;
    long long count = 25;
    bool verify = false;
    bool json_out = false;
};

std::optional<long long> steps_of(const Opts& o) {
    if (o.precision < 0) return std::nullopt;
    if (o.precision < 1) throw PreconditionError("precision must be at least 1");
    return o.precision;
}

std::optional<Rat> radius_of(const Opts& o) {
    if (o.radius_text.empty()) return std::nullopt;
    return rat_from_text(o.radius_text);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool has_matrix(const Opts& o) { return !o.matrix_path.empty(); }

SeriesMat load_matrix(const Opts& o) {
    long long steps = steps_of(o).value_or(Series::kDefaultSteps);
    return parse_matrix_json(read_file(o.matrix_path), steps);
}

// The operator the job describes: parsed directly, or the cyclic-vector
// operator of a matrix module.
DiffOp load_operator(const Opts& o) {
    if (has_matrix(o))
        return cyclic_vector(load_matrix(o), steps_of(o).value_or(Series::kDefaultSteps)).op;
    if (o.expr.empty())
        throw PreconditionError("provide an operator expression or --matrix FILE");
    return parse_operator(o.expr, steps_of(o).value_or(Series::kDefaultSteps));
}

int run_spectrum(const Opts& o) {
    std::optional<long long> steps = steps_of(o);
    std::optional<Rat> radius = radius_of(o);
    Report rep;
    if (has_matrix(o)) {
        rep = analyze_matrix(load_matrix(o), o.verify, steps, radius);
    } else {
        if (o.expr.empty())
            throw PreconditionError("provide an operator expression or --matrix FILE");
        rep = analyze_operator(parse_operator(o.expr, steps.value_or(Series::kDefaultSteps)),
                               o.verify, steps, radius);
    }
    if (o.ram > 1) rep.spectrum = spectrum_to_ram(rep.spectrum, o.ram);
    if (o.json_out)
        std::cout << report_json(rep) << "\n";
    else
        std::cout << report_text(rep);
    return 0;
}

int run_newton(const Opts& o) {
    DiffOp p = load_operator(o);
    NewtonPolygon np = newton_polygon(p.is_monic() ? p : p.monic());
    if (o.json_out) {
        std::cout << polygon_json(np) << "\n";
        return 0;
    }
    std::cout << "newton polygon (vmin = " << rat_str(np.vmin) << ")\n"
              << polygon_sketch(np);
    return 0;
}

int run_factor(const Opts& o) {
    std::optional<long long> steps = steps_of(o);
    DiffOp p = load_operator(o);
    if (p.order() < 1)
        throw PreconditionError("factorization needs an operator of order >= 1");
    DiffOp rest = p.is_monic() ? p : p.monic();

    Json factors = Json::array();
    std::ostringstream text;
    text << "factorization, slopes descending, P = product of the lines\n";
    while (true) {
        NewtonPolygon np = newton_polygon(rest);
        if (np.edges.size() <= 1) {
            Json fj;
            fj["slope"] = rat_str(np.edges.front().slope);
            fj["operator"] = print_operator(rest);
            fj["achieved"] = nullptr;
            factors.push_back(fj);
            text << "  slope " << rat_str(np.edges.front().slope) << ": "
                 << print_operator(rest) << "\n";
            break;
        }
        Rat top = np.edges.back().slope;
        SlopeFactorization sf = slope_factor(rest, top, steps);
        Json fj;
        fj["slope"] = rat_str(top);
        fj["operator"] = print_operator(sf.r);
        fj["achieved"] = sf.achieved ? Json(rat_str(*sf.achieved)) : Json(nullptr);
        factors.push_back(fj);
        text << "  slope " << rat_str(top) << ": " << print_operator(sf.r);
        if (sf.achieved)
            text << "  (product matches to weight " << rat_str(*sf.achieved) << ")";
        text << "\n";
        rest = sf.q;
    }

    if (o.json_out) {
        Json j;
        j["operator"] = print_operator(p.is_monic() ? p : p.monic());
        j["factors"] = factors;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text.str();
    }
    return 0;
}

int run_cyclic(const Opts& o) {
    if (!has_matrix(o))
        throw PreconditionError("cyclic needs --matrix FILE");
    CyclicData cd = cyclic_vector(load_matrix(o), steps_of(o).value_or(Series::kDefaultSteps));
    if (o.json_out) {
        Json j;
        j["vector"] = Json::array();
        for (const Series& f : cd.v) j["vector"].push_back(series_text(f));
        j["operator"] = print_operator(cd.op);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "cyclic vector:";
    for (const Series& f : cd.v) std::cout << " [" << series_text(f) << "]";
    std::cout << "\noperator: " << print_operator(cd.op) << "\n";
    return 0;
}

int run_ramify(const Opts& o) {
    std::optional<long long> steps = steps_of(o);
    long long m = o.extension;
    if (m < 1) throw PreconditionError("extension degree must be positive");

    Spectrum base, pulled;
    std::optional<bool> law, roundtrip;
    if (has_matrix(o)) {
        SeriesMat g = load_matrix(o);
        base = spectrum_of_matrix(g, o.verify, steps);
        pulled = spectrum_of_matrix(pullback(g, m), o.verify, steps);
        if (o.verify) {
            law = check_pullback_union_law(g, m, steps);
            roundtrip = check_pushforward_roundtrip(g, m, steps);
        }
    } else {
        DiffOp p = load_operator(o);
        base = spectrum_of_operator(p, o.verify, steps);
        pulled = spectrum_of_operator(pullback(p, m), o.verify, steps);
        if (o.verify) law = check_pullback_union_law(p, m, steps);
    }
    if (law && !*law)
        throw InternalMismatchError("pullback spectrum disagrees with the union law");
    if (roundtrip && !*roundtrip)
        throw InternalMismatchError("pushforward spectrum disagrees with the pullback");

    if (o.json_out) {
        Json j;
        j["extension"] = m;
        j["base"] = Json::parse(spectrum_json(base));
        j["pullback"] = Json::parse(spectrum_json(pulled));
        if (law) j["union_law"] = *law;
        if (roundtrip) j["pushforward_roundtrip"] = *roundtrip;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "base spectrum: " << base.to_string() << "\n";
    std::cout << "pullback by " << m << ": " << pulled.to_string() << "\n";
    if (law) std::cout << "union law: verified\n";
    if (roundtrip) std::cout << "pushforward round trip: verified\n";
    return 0;
}

int run_selftest_cmd(const Opts& o) {
    SelftestReport r = run_selftest(o.seed, o.count);
    if (o.json_out)
        std::cout << r.to_json() << "\n";
    else
        std::cout << r.to_string();
    return r.all_passed() ? 0 : 1;
}

void add_input_options(CLI::App* sub, Opts& o) {
    sub->add_option("expr", o.expr, "operator expression, e.g. \"D^2 - 1/S\"");
    sub->add_option("--matrix", o.matrix_path,
                    "matrix module as a JSON file {\"n\", \"ram\", \"entries\"}");
    sub->add_option("--precision", o.precision,
                    "working precision in grid ticks (>= 1)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Berkovich spectra of differential modules over formal Laurent/Puiseux series"};
    app.require_subcommand(1);

    Opts o;
    int rc = 0;

    CLI::App* sp = app.add_subcommand("spectrum", "polygon, slopes, exponents, and spectrum");
    add_input_options(sp, o);
    sp->add_option("--ram", o.ram, "report the spectrum over the lattice (1/m)Z");
    sp->add_option("--radius", o.radius_text, "numeric ground radius p/q in (0,1)");
    sp->add_flag("--verify", o.verify, "cross-check through the slope factorization");
    sp->add_flag("--json", o.json_out, "JSON output");
    sp->callback([&] { rc = run_spectrum(o); });

    CLI::App* nw = app.add_subcommand("newton", "Newton polygon only");
    add_input_options(nw, o);
    nw->add_flag("--json", o.json_out, "JSON output");
    nw->callback([&] { rc = run_newton(o); });

    CLI::App* fc = app.add_subcommand("factor", "slope factorization chain");
    add_input_options(fc, o);
    fc->add_flag("--json", o.json_out, "JSON output");
    fc->callback([&] { rc = run_factor(o); });

    CLI::App* cy = app.add_subcommand("cyclic", "cyclic vector of a matrix module");
    add_input_options(cy, o);
    cy->add_flag("--json", o.json_out, "JSON output");
    cy->callback([&] { rc = run_cyclic(o); });

    CLI::App* rm = app.add_subcommand("ramify", "spectrum after ground field extension");
    add_input_options(rm, o);
    rm->add_option("--ram", o.extension, "extension degree m (default 2)");
    rm->add_flag("--verify", o.verify, "check the union law (and pushforward for matrices)");
    rm->add_flag("--json", o.json_out, "JSON output");
    rm->callback([&] { rc = run_ramify(o); });

    CLI::App* st = app.add_subcommand("selftest", "randomized property suites");
    st->add_option("--seed", o.seed, "generator seed");
    st->add_option("--count", o.count, "cases per property")->default_val(25);
    st->add_flag("--json", o.json_out, "JSON output");
    st->callback([&] { rc = run_selftest_cmd(o); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const dspec::Error& e) {
        std::cerr << e.code_name() << ": " << e.what() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
