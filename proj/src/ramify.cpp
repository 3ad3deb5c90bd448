#include "dspec/ramify.hpp"

#include "dspec/error.hpp"

namespace dspec {

namespace {

// The part of h (grid exactly m) supported on ticks congruent to r mod m,
// divided by S^{r/m}: an integer-grid series.
Series residue_component(const Series& h, long long m, long long r) {
    std::map<Tick, Rat> out;
    for (const auto& [t, c] : h.ticks()) {
        if (((t % m) + m) % m != r) continue;
        out[(t - r) / m] = c;
    }
    std::optional<Tick> prec;
    if (h.prec_ticks()) {
        Tick p = *h.prec_ticks();
        Tick up = ((r - p) % m + m) % m; // distance to the next tick = r mod m
        prec = (p + up - r) / m;
    }
    return Series::from_ticks(1, std::move(out), prec);
}

} // namespace

Series pullback(const Series& f, long long m) {
    if (m < 1) throw PreconditionError("extension degree must be positive");
    return f.lifted(f.ram() * m);
}

SeriesMat pullback(const SeriesMat& g, long long m) {
    if (m < 1) throw PreconditionError("extension degree must be positive");
    long long target = mat_ram(g) * m;
    SeriesMat out = g;
    for (auto& row : out)
        for (Series& e : row) e = e.lifted(target);
    return out;
}

DiffOp pullback(const DiffOp& p, long long m) {
    if (m < 1) throw PreconditionError("extension degree must be positive");
    long long target = p.ram() * m;
    std::vector<Series> coeffs = p.coeffs();
    for (Series& c : coeffs) c = c.lifted(target);
    return DiffOp(std::move(coeffs));
}

SeriesMat pushforward(const SeriesMat& h, long long m) {
    if (m < 1) throw PreconditionError("extension degree must be positive");
    size_t n = h.size();
    for (const auto& row : h)
        if (row.size() != n)
            throw PreconditionError("pushforward needs a square matrix");
    if (m % mat_ram(h) != 0)
        throw PreconditionError(
            "matrix grid does not divide the extension degree");
    size_t nm = n * static_cast<size_t>(m);
    SeriesMat out = mat_zero(nm);
    for (long long i = 0; i < m; ++i) {         // source power of S^{1/m}
        for (long long ip = 0; ip < m; ++ip) {  // target power
            long long r = ((ip - i) % m + m) % m;
            long long carry = (i + r) / m;
            for (size_t j = 0; j < n; ++j) {
                for (size_t l = 0; l < n; ++l) {
                    Series part = residue_component(h[l][j].lifted(m), m, r);
                    if (carry > 0)
                        part = part * Series::monomial(Rat(1), Rat(carry));
                    size_t row = static_cast<size_t>(ip) * n + l;
                    size_t col = static_cast<size_t>(i) * n + j;
                    out[row][col] = out[row][col] + part;
                }
            }
        }
        // The derivation acts on S^{i/m} by i/m.
        for (size_t j = 0; j < n; ++j) {
            size_t d = static_cast<size_t>(i) * n + j;
            out[d][d] = out[d][d] + Series::constant(Rat(i, m));
        }
    }
    return out;
}

SeriesMat ramified_block_sum(const SeriesMat& g, long long m) {
    if (m < 1) throw PreconditionError("extension degree must be positive");
    size_t n = g.size();
    SeriesMat out;
    for (long long i = 0; i < m; ++i) {
        SeriesMat block = mat_add(g, mat_scalar(Rat(i, m), n));
        out = (i == 0) ? block : direct_sum(out, block);
    }
    return out;
}

bool pushforward_blocks_equivalent(const SeriesMat& g, long long m) {
    if (mat_ram(g) != 1)
        throw PreconditionError(
            "block comparison is stated for integer-grid modules");
    SeriesMat down = pushforward(pullback(g, m), m);
    SeriesMat ref = ramified_block_sum(g, m);
    if (down.size() != ref.size()) return false;
    for (size_t i = 0; i < down.size(); ++i)
        for (size_t j = 0; j < down.size(); ++j)
            if (down[i][j] != ref[i][j]) return false;
    return true;
}

namespace {

bool union_law(const Spectrum& base, const Spectrum& fine, long long target_ram,
               long long m) {
    Spectrum coarse = spectrum_to_ram(base, target_ram);
    Spectrum rhs = coarse;
    for (long long i = 1; i < m; ++i)
        rhs = spectrum_union(rhs,
                             translate_spectrum(coarse, Rat(i, target_ram)));
    return spectrum_eq(fine, rhs);
}

} // namespace

bool check_pullback_union_law(const DiffOp& p, long long m,
                              std::optional<long long> steps) {
    Spectrum fine = spectrum_of_operator(pullback(p, m), false, steps);
    Spectrum base = spectrum_of_operator(p, false, steps);
    return union_law(base, fine, p.ram() * m, m);
}

bool check_pullback_union_law(const SeriesMat& g, long long m,
                              std::optional<long long> steps) {
    Spectrum fine = spectrum_of_matrix(pullback(g, m), false, steps);
    Spectrum base = spectrum_of_matrix(g, false, steps);
    return union_law(base, fine, mat_ram(g) * m, m);
}

bool check_pushforward_roundtrip(const SeriesMat& g, long long m,
                                 std::optional<long long> steps) {
    long long target = mat_ram(g) * m;
    SeriesMat up = pullback(g, m);
    Spectrum fine = spectrum_of_matrix(up, false, steps);
    Spectrum down =
        spectrum_of_matrix(pushforward(up, target), false, steps);
    return spectrum_eq(spectrum_to_ram(down, target), fine);
}

} // namespace dspec
