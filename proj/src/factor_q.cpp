#include "dspec/factor_q.hpp"

#include "dspec/error.hpp"

#include <algorithm>
#include <map>

namespace dspec {

namespace {

// ---- integer polynomials, little-endian, trimmed ----

using ZP = std::vector<Int>;

void zp_trim(ZP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int zp_deg(const ZP& a) { return static_cast<int>(a.size()) - 1; }

ZP zp_mul(const ZP& a, const ZP& b) {
    if (a.empty() || b.empty()) return {};
    ZP r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

ZP zp_sub(const ZP& a, const ZP& b) {
    ZP r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    zp_trim(r);
    return r;
}

ZP zp_add(const ZP& a, const ZP& b) {
    ZP r(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    zp_trim(r);
    return r;
}

Int zp_content(const ZP& a) {
    Int g(0);
    for (const auto& c : a) g = boost::multiprecision::gcd(g, c);
    return g;
}

// Divides a by monic b over Z; returns {quotient, remainder}.
std::pair<ZP, ZP> zp_divmod_monic(const ZP& a, const ZP& b) {
    ZP rem = a;
    int db = zp_deg(b);
    if (zp_deg(rem) < db) return {{}, rem};
    ZP q(zp_deg(rem) - db + 1, Int(0));
    for (int k = zp_deg(rem); k >= db; --k) {
        Int c = (zp_deg(rem) >= k) ? rem[k] : Int(0);
        if (c == 0) continue;
        q[k - db] = c;
        for (int j = 0; j <= db; ++j) rem[k - db + j] -= c * b[j];
    }
    zp_trim(rem);
    return {q, rem};
}

// ---- polynomials over F_p, p a small odd prime, coefficients in [0, p) ----

using FP = std::vector<long long>;

void fp_trim(FP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int fp_deg(const FP& a) { return static_cast<int>(a.size()) - 1; }

long long fp_inv(long long a, long long p) {
    long long t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        long long q = r / nr;
        std::swap(t, nt);
        nt -= q * t;
        std::swap(r, nr);
        nr -= q * r;
    }
    t %= p;
    if (t < 0) t += p;
    return t;
}

FP fp_mul(const FP& a, const FP& b, long long p) {
    if (a.empty() || b.empty()) return {};
    FP r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    fp_trim(r);
    return r;
}

FP fp_sub(const FP& a, const FP& b, long long p) {
    FP r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] - b[i] % p + p) % p;
    fp_trim(r);
    return r;
}

FP fp_monic(const FP& a, long long p) {
    if (a.empty()) return a;
    long long inv = fp_inv(a.back(), p);
    FP r(a);
    for (auto& c : r) c = c * inv % p;
    return r;
}

std::pair<FP, FP> fp_divmod(const FP& a, const FP& b, long long p) {
    FP rem = a;
    int db = fp_deg(b);
    long long linv = fp_inv(b.back(), p);
    if (fp_deg(rem) < db) return {{}, rem};
    FP q(fp_deg(rem) - db + 1, 0);
    for (int k = fp_deg(rem); k >= db; --k) {
        long long c = (k < static_cast<int>(rem.size())) ? rem[k] % p : 0;
        c = c * linv % p;
        if (c == 0) continue;
        q[k - db] = c;
        for (int j = 0; j <= db; ++j) rem[k - db + j] = ((rem[k - db + j] - c * b[j]) % p + p) % p;
    }
    fp_trim(rem);
    return {q, rem};
}

FP fp_gcd(FP a, FP b, long long p) {
    while (!b.empty()) {
        FP r = fp_divmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? a : fp_monic(a, p);
}

FP fp_derivative(const FP& a, long long p) {
    if (a.size() <= 1) return {};
    FP r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * (static_cast<long long>(i) % p) % p;
    fp_trim(r);
    return r;
}

FP fp_powmod_x(long long e, const FP& f, long long p) {
    // x^e mod f by square and multiply.
    FP result{1};
    FP base{0, 1};
    base = fp_divmod(base, f, p).second;
    while (e > 0) {
        if (e & 1) result = fp_divmod(fp_mul(result, base, p), f, p).second;
        base = fp_divmod(fp_mul(base, base, p), f, p).second;
        e >>= 1;
    }
    return result;
}

// Berlekamp factorization of a monic squarefree polynomial over F_p.
std::vector<FP> berlekamp(const FP& f, long long p) {
    int n = fp_deg(f);
    if (n <= 1) return {f};
    // rows[i] = x^{i p} mod f.
    std::vector<FP> rows(n);
    rows[0] = FP{1};
    FP xp = fp_powmod_x(p, f, p);
    for (int i = 1; i < n; ++i) rows[i] = fp_divmod(fp_mul(rows[i - 1], xp, p), f, p).second;
    // Solve v (M - I) = 0 where M[i][j] = coeff_j(rows[i]); nullspace of the
    // transposed system.
    std::vector<std::vector<long long>> a(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            long long v = (j < static_cast<int>(rows[i].size())) ? rows[i][j] : 0;
            if (i == j) v = (v - 1 + p) % p;
            a[j][i] = v; // transpose
        }
    }
    // Gaussian elimination; collect nullspace basis.
    std::vector<int> pivot_col(n, -1);
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int sel = -1;
        for (int row = rank; row < n; ++row)
            if (a[row][col] != 0) {
                sel = row;
                break;
            }
        if (sel < 0) continue;
        std::swap(a[rank], a[sel]);
        long long inv = fp_inv(a[rank][col], p);
        for (int j = 0; j < n; ++j) a[rank][j] = a[rank][j] * inv % p;
        for (int row = 0; row < n; ++row) {
            if (row != rank && a[row][col] != 0) {
                long long c = a[row][col];
                for (int j = 0; j < n; ++j)
                    a[row][j] = ((a[row][j] - c * a[rank][j]) % p + p) % p;
            }
        }
        pivot_col[rank] = col;
        ++rank;
    }
    std::vector<FP> basis;
    std::vector<bool> is_pivot(n, false);
    for (int r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
    for (int col = 0; col < n; ++col) {
        if (is_pivot[col]) continue;
        FP v(n, 0);
        v[col] = 1;
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = (p - a[r][col]) % p;
        fp_trim(v);
        basis.push_back(v);
    }
    size_t nfactors = basis.size();
    std::vector<FP> factors{f};
    if (nfactors <= 1) return factors;
    for (const FP& v : basis) {
        if (fp_deg(v) < 1) continue; // the constant vector splits nothing
        for (long long c = 0; c < p && factors.size() < nfactors; ++c) {
            FP vc = v;
            vc[0] = (vc[0] - c % p + p) % p;
            fp_trim(vc);
            std::vector<FP> next;
            for (const FP& u : factors) {
                FP g = fp_gcd(u, vc, p);
                if (fp_deg(g) > 0 && fp_deg(g) < fp_deg(u)) {
                    next.push_back(g);
                    next.push_back(fp_monic(fp_divmod(u, g, p).first, p));
                } else {
                    next.push_back(u);
                }
            }
            factors = std::move(next);
        }
        if (factors.size() >= nfactors) break;
    }
    for (auto& g : factors) g = fp_monic(g, p);
    return factors;
}

// ---- Hensel lifting (quadratic), all polynomials monic ----

Int mod_reduce(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

ZP zp_mod(const ZP& a, const Int& m) {
    ZP r(a);
    for (auto& c : r) c = mod_reduce(c, m);
    zp_trim(r);
    return r;
}

ZP zp_mul_mod(const ZP& a, const ZP& b, const Int& m) { return zp_mod(zp_mul(a, b), m); }

// Divides a by monic b mod m.
std::pair<ZP, ZP> zp_divmod_monic_mod(const ZP& a, const ZP& b, const Int& m) {
    ZP rem = zp_mod(a, m);
    int db = zp_deg(b);
    if (zp_deg(rem) < db) return {{}, rem};
    ZP q(zp_deg(rem) - db + 1, Int(0));
    for (int k = zp_deg(rem); k >= db; --k) {
        if (k >= static_cast<int>(rem.size())) continue;
        Int c = mod_reduce(rem[k], m);
        if (c == 0) continue;
        q[k - db] = c;
        for (int j = 0; j <= db; ++j) rem[k - db + j] = mod_reduce(rem[k - db + j] - c * b[j], m);
    }
    zp_trim(rem);
    zp_trim(q);
    return {q, rem};
}

struct HenselPair {
    ZP g, h, s, t; // f = g h, s g + t h = 1 (mod current modulus)
};

// One quadratic step: from modulus m to m^2. Solves g* h* = f mod m^2 with
// h* = h + (s e rem h), g* = g + t e + (s e quo h) g, which keeps h* monic and
// forces the degree overflow of g* to cancel mod m^2.
HenselPair hensel_step(const ZP& f, const HenselPair& in, const Int& m) {
    Int m2 = m * m;
    ZP e = zp_mod(zp_sub(f, zp_mul(in.g, in.h)), m2);
    auto [q, r] = zp_divmod_monic_mod(zp_mul_mod(in.s, e, m2), in.h, m2);
    ZP gstar = zp_mod(zp_add(zp_add(in.g, zp_mul(in.t, e)), zp_mul(q, in.g)), m2);
    ZP hstar = zp_mod(zp_add(in.h, r), m2);
    if (zp_deg(gstar) != zp_deg(in.g) || gstar.back() != 1)
        throw InternalMismatchError("hensel step lost monic leading coefficient");
    // Lift the Bezout pair to mod m^2: b = s g* + t h* - 1 is divisible by m.
    ZP b = zp_mod(zp_sub(zp_add(zp_mul(in.s, gstar), zp_mul(in.t, hstar)), ZP{Int(1)}), m2);
    auto [c, d] = zp_divmod_monic_mod(zp_mul_mod(in.s, b, m2), hstar, m2);
    ZP sstar = zp_mod(zp_sub(in.s, d), m2);
    ZP tstar = zp_mod(zp_sub(in.t, zp_add(zp_mul_mod(in.t, b, m2), zp_mul_mod(c, gstar, m2))), m2);
    return {gstar, hstar, sstar, tstar};
}

ZP fp_to_zp(const FP& a) {
    ZP r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    return r;
}

// Extended Euclid over F_p: s a + t b = 1 for coprime a, b.
std::pair<FP, FP> fp_xgcd_coprime(const FP& a, const FP& b, long long p) {
    FP r0 = a, r1 = b;
    FP s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        auto [q, r2] = fp_divmod(r0, r1, p);
        FP s2 = fp_sub(s0, fp_mul(q, s1, p), p);
        FP t2 = fp_sub(t0, fp_mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (fp_deg(r0) != 0) throw InternalMismatchError("xgcd on non-coprime polynomials");
    long long inv = fp_inv(r0[0], p);
    for (auto& c : s0) c = c * inv % p;
    for (auto& c : t0) c = c * inv % p;
    return {s0, t0};
}

// Lifts the factorization f = prod(parts) from mod p to mod >= target, via a
// balanced factor tree. f monic over Z; parts monic over F_p, pairwise coprime.
void lift_tree(const ZP& f, std::vector<FP> parts, long long p, const Int& target,
               std::vector<ZP>& out) {
    if (parts.size() == 1) {
        out.push_back(f);
        return;
    }
    size_t half = parts.size() / 2;
    std::vector<FP> left(parts.begin(), parts.begin() + half);
    std::vector<FP> right(parts.begin() + half, parts.end());
    FP gp{1}, hp{1};
    for (const auto& q : left) gp = fp_mul(gp, q, p);
    for (const auto& q : right) hp = fp_mul(hp, q, p);
    auto [sp, tp] = fp_xgcd_coprime(gp, hp, p);
    HenselPair cur{fp_to_zp(gp), fp_to_zp(hp), fp_to_zp(sp), fp_to_zp(tp)};
    Int m(p);
    // Ensure f = g h mod p actually holds before lifting.
    {
        ZP check = zp_mod(zp_sub(f, zp_mul(cur.g, cur.h)), m);
        if (!check.empty()) throw InternalMismatchError("modular factorization mismatch");
    }
    while (m < target) {
        cur = hensel_step(f, cur, m);
        m *= m;
    }
    lift_tree(cur.g, std::move(left), p, target, out);
    lift_tree(cur.h, std::move(right), p, target, out);
}

// Symmetric representative in (-m/2, m/2].
Int symmetric(const Int& a, const Int& m) {
    Int r = mod_reduce(a, m);
    if (2 * r > m) r -= m;
    return r;
}

Int zp_maxabs(const ZP& a) {
    Int m(0);
    for (const auto& c : a) {
        Int v = c < 0 ? Int(-c) : c;
        if (v > m) m = v;
    }
    return m;
}

// Zassenhaus factorization of a monic squarefree integer polynomial.
std::vector<ZP> zassenhaus_monic(const ZP& f) {
    int n = zp_deg(f);
    if (n <= 1) return {f};
    static const long long primes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                       43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
                                       101, 103, 107, 109, 113, 127, 131, 137, 139, 149};
    long long p = 0;
    FP fbar;
    for (long long cand : primes) {
        FP fb(f.size());
        for (size_t i = 0; i < f.size(); ++i) {
            Int c = mod_reduce(f[i], Int(cand));
            fb[i] = static_cast<long long>(c);
        }
        fp_trim(fb);
        if (fp_deg(fb) != n) continue; // monic, cannot happen, kept for safety
        FP g = fp_gcd(fb, fp_derivative(fb, cand), cand);
        if (fp_deg(g) == 0) {
            p = cand;
            fbar = fb;
            break;
        }
    }
    if (p == 0) throw InternalMismatchError("no usable prime for modular factorization");
    std::vector<FP> modular = berlekamp(fp_monic(fbar, p), p);
    std::sort(modular.begin(), modular.end());
    if (modular.size() == 1) return {f};
    // Coefficient bound for monic factors: 2^n * l2norm(f).
    Int norm2(0);
    for (const auto& c : f) norm2 += c * c;
    Int bound = (Int(1) << n);
    // integer sqrt upper bound
    Int s = boost::multiprecision::sqrt(norm2) + 1;
    bound *= s;
    Int target = 2 * bound + 1;
    std::vector<ZP> lifted;
    lift_tree(f, modular, p, target, lifted);
    Int modulus(p);
    while (modulus < target) modulus *= modulus;

    // Subset recombination, smallest subsets first.
    auto next_combination = [](std::vector<size_t>& idx, size_t n) {
        size_t k = idx.size();
        for (size_t i = k; i-- > 0;) {
            if (idx[i] + (k - i) < n) {
                ++idx[i];
                for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                return true;
            }
        }
        return false;
    };
    std::vector<ZP> result;
    std::vector<size_t> alive(lifted.size());
    for (size_t i = 0; i < alive.size(); ++i) alive[i] = i;
    ZP rem_f = f;
    size_t card = 1;
    while (2 * card <= alive.size()) {
        std::vector<size_t> idx(card);
        for (size_t i = 0; i < card; ++i) idx[i] = i;
        bool split_found = false;
        while (true) {
            ZP cand{Int(1)};
            for (size_t i : idx) cand = zp_mul_mod(cand, lifted[alive[i]], modulus);
            for (auto& c : cand) c = symmetric(c, modulus);
            zp_trim(cand);
            if (!cand.empty() && cand.back() == 1 && zp_maxabs(cand) <= bound) {
                auto [q, r] = zp_divmod_monic(rem_f, cand);
                if (r.empty()) {
                    result.push_back(cand);
                    rem_f = q;
                    std::vector<size_t> next_alive;
                    for (size_t i = 0, k = 0; i < alive.size(); ++i) {
                        if (k < idx.size() && idx[k] == i) {
                            ++k;
                            continue;
                        }
                        next_alive.push_back(alive[i]);
                    }
                    alive = std::move(next_alive);
                    split_found = true;
                    break; // restart subset scan at the same cardinality
                }
            }
            if (!next_combination(idx, alive.size())) break;
        }
        if (!split_found) ++card;
    }
    if (zp_deg(rem_f) >= 1) result.push_back(rem_f);
    return result;
}

} // namespace

std::vector<QPoly> factor_squarefree_q(const QPoly& f) {
    if (f.degree() < 1) throw PreconditionError("factorization requires a nonconstant polynomial");
    if (f.degree() == 1) return {f.monic()};
    // Clear denominators, make primitive.
    Int den(1);
    for (const Rat& c : f.coeffs()) den = boost::multiprecision::lcm(den, rat_den(c));
    ZP zf(f.coeffs().size());
    for (size_t i = 0; i < zf.size(); ++i) {
        Rat scaled = f.coeffs()[i] * Rat(den);
        zf[i] = rat_num(scaled);
    }
    Int cont = zp_content(zf);
    if (cont != 0)
        for (auto& c : zf) c /= cont;
    if (zf.back() < 0)
        for (auto& c : zf) c = -c;
    // Monicize: F(x) = l^{n-1} f(x/l) is monic over Z.
    Int l = zf.back();
    int n = zp_deg(zf);
    ZP F(zf.size());
    // coeff of x^k in F: f_k * l^{n-1-k}; the top one is f_n / l = 1.
    F[n] = 1;
    Int pw(1);
    for (int k = n - 1; k >= 0; --k) {
        F[k] = zf[k] * pw;
        pw *= l;
    }
    std::vector<ZP> zfactors = zassenhaus_monic(F);
    std::vector<QPoly> out;
    for (const ZP& g : zfactors) {
        // map back: roots of g are l * roots of f; g(l x) has the same roots as f's subset
        std::vector<Rat> c(g.size());
        Int pw2(1);
        for (size_t k = 0; k < g.size(); ++k) {
            c[k] = Rat(g[k] * pw2);
            pw2 *= l;
        }
        out.push_back(QPoly(std::move(c)).monic());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<QPoly, int>> factor_rational(const QPoly& f) {
    if (f.is_zero()) throw PreconditionError("cannot factor the zero polynomial");
    std::vector<std::pair<QPoly, int>> out;
    if (f.degree() < 1) return out;
    for (const auto& [sqf, mult] : yun_squarefree(f)) {
        for (const QPoly& irr : factor_squarefree_q(sqf)) out.emplace_back(irr, mult);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace dspec
