#include "dspec/diffop.hpp"

#include "dspec/error.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace dspec {

namespace {
thread_local bool corrupt_commutation = false;
}

void debug_corrupt_commutation(bool on) { corrupt_commutation = on; }

void DiffOp::normalize() {
    // Only an exactly-zero leading coefficient can be dropped; an unknown
    // zero leaves the order honest but uncertain and must stay.
    while (!c_.empty() && c_.back().is_exact_zero()) c_.pop_back();
}

DiffOp DiffOp::d() { return d_power(1); }

DiffOp DiffOp::d_power(size_t k) {
    std::vector<Series> c(k + 1, Series::zero());
    c[k] = Series::one();
    return DiffOp(std::move(c));
}

Series DiffOp::coeff(size_t i) const {
    if (i >= c_.size()) return Series::zero();
    return c_[i];
}

long long DiffOp::ram() const {
    long long r = 1;
    for (const Series& a : c_) r = ll_lcm(r, a.ram());
    return r;
}

DiffOp DiffOp::operator+(const DiffOp& o) const {
    std::vector<Series> c(std::max(c_.size(), o.c_.size()), Series::zero());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c[i] + c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) c[i] = c[i] + o.c_[i];
    return DiffOp(std::move(c));
}

DiffOp DiffOp::operator-() const {
    std::vector<Series> c(c_);
    for (Series& a : c) a = -a;
    return DiffOp(std::move(c));
}

DiffOp DiffOp::operator-(const DiffOp& o) const { return *this + (-o); }

DiffOp DiffOp::operator*(const DiffOp& o) const {
    if (c_.empty() || o.c_.empty()) return DiffOp();
    // D^i f = sum_k C(i,k) delta^k(f) D^{i-k}.
    std::vector<Series> c(c_.size() + o.c_.size() - 1, Series::zero());
    for (size_t j = 0; j < o.c_.size(); ++j) {
        if (o.c_[j].is_exact_zero()) continue;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_exact_zero()) continue;
            Series dpow = o.c_[j];
            Rat ch(1); // C(i, k), built incrementally
            for (size_t k = 0; k <= i; ++k) {
                if (k > 0) {
                    dpow = corrupt_commutation ? dpow.delta() + dpow : dpow.delta();
                    ch = ch * Rat(static_cast<long long>(i - k + 1)) /
                         Rat(static_cast<long long>(k));
                }
                size_t deg = i + j - k;
                c[deg] = c[deg] + (c_[i] * dpow).scaled(ch);
            }
        }
    }
    return DiffOp(std::move(c));
}

bool DiffOp::operator==(const DiffOp& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i]) return false;
    return true;
}

DiffOp DiffOp::scaled(const Series& f) const {
    std::vector<Series> c(c_);
    for (Series& a : c) a = f * a;
    return DiffOp(std::move(c));
}

DiffOp DiffOp::scaled(const Rat& r) const {
    std::vector<Series> c(c_);
    for (Series& a : c) a = a.scaled(r);
    return DiffOp(std::move(c));
}

DiffOp DiffOp::monic() const {
    if (c_.empty()) throw PreconditionError("zero operator has no monic form");
    return scaled(c_.back().inverted());
}

bool DiffOp::is_monic() const {
    return !c_.empty() && c_.back() == Series::one();
}

Series DiffOp::apply(const Series& f) const {
    Series acc = Series::zero();
    Series df = f;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i > 0) df = df.delta();
        acc = acc + c_[i] * df;
    }
    return acc;
}

std::string DiffOp::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        Series a = c_[i];
        if (a.is_exact_zero()) continue;
        bool neg = !a.ticks().empty() && a.ticks().begin()->second < 0;
        if (neg) a = -a;
        bool simple = a.is_exact() && a.ticks().size() == 1;
        std::string astr = a.to_string();
        std::string body;
        if (i == 0) {
            body = simple ? astr : "(" + astr + ")";
        } else {
            std::string dpart = (i == 1) ? "D" : "D^" + std::to_string(i);
            if (a == Series::one()) body = dpart;
            else if (simple) body = astr + "*" + dpart;
            else body = "(" + astr + ")*" + dpart;
        }
        if (neg) body = "-" + body;
        if (first) {
            out << body;
            first = false;
        } else if (!body.empty() && body[0] == '-') {
            out << " - " << body.substr(1);
        } else {
            out << " + " << body;
        }
    }
    if (first) return "0";
    return out.str();
}

// ---- matrices ----

SeriesMat mat_zero(size_t n) {
    return SeriesMat(n, std::vector<Series>(n, Series::zero()));
}

SeriesMat mat_identity(size_t n) { return mat_scalar(Rat(1), n); }

SeriesMat mat_scalar(const Rat& c, size_t n) {
    SeriesMat m = mat_zero(n);
    for (size_t i = 0; i < n; ++i) m[i][i] = Series::constant(c);
    return m;
}

SeriesMat mat_add(const SeriesMat& a, const SeriesMat& b) {
    SeriesMat r = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
}

SeriesMat mat_sub(const SeriesMat& a, const SeriesMat& b) {
    SeriesMat r = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) r[i][j] = a[i][j] - b[i][j];
    return r;
}

SeriesMat mat_mul(const SeriesMat& a, const SeriesMat& b) {
    size_t n = a.size();
    SeriesMat r = mat_zero(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            for (size_t j = 0; j < n; ++j) r[i][j] = r[i][j] + a[i][k] * b[k][j];
    return r;
}

SeriesMat mat_scaled(const SeriesMat& a, const Series& f) {
    SeriesMat r = a;
    for (auto& row : r)
        for (auto& e : row) e = f * e;
    return r;
}

SeriesMat mat_delta(const SeriesMat& a) {
    SeriesMat r = a;
    for (auto& row : r)
        for (auto& e : row) e = e.delta();
    return r;
}

SeriesVec mat_apply(const SeriesMat& a, const SeriesVec& v) {
    size_t n = a.size();
    SeriesVec r(n, Series::zero());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) r[i] = r[i] + a[i][j] * v[j];
    return r;
}

long long mat_ram(const SeriesMat& a) {
    long long r = 1;
    for (const auto& row : a)
        for (const auto& e : row) r = ll_lcm(r, e.ram());
    return r;
}

Series mat_det(const SeriesMat& a) {
    size_t n = a.size();
    if (n == 0) return Series::one();
    size_t full = (size_t(1) << n) - 1;
    std::vector<Series> dp(full + 1, Series::zero());
    dp[0] = Series::one();
    for (size_t mask = 1; mask <= full; ++mask) {
        size_t r = static_cast<size_t>(std::popcount(mask)) - 1;
        Series acc = Series::zero();
        size_t pos = 0;
        for (size_t j = 0; j < n; ++j) {
            if (!(mask & (size_t(1) << j))) continue;
            Series term = a[r][j] * dp[mask ^ (size_t(1) << j)];
            acc = ((r + pos) % 2 == 0) ? acc + term : acc - term;
            ++pos;
        }
        dp[mask] = acc;
    }
    return dp[full];
}

namespace {

SeriesMat minor_matrix(const SeriesMat& a, size_t row, size_t col) {
    size_t n = a.size();
    SeriesMat m(n - 1, std::vector<Series>(n - 1, Series::zero()));
    for (size_t i = 0, ii = 0; i < n; ++i) {
        if (i == row) continue;
        for (size_t j = 0, jj = 0; j < n; ++j) {
            if (j == col) continue;
            m[ii][jj] = a[i][j];
            ++jj;
        }
        ++ii;
    }
    return m;
}

} // namespace

SeriesMat mat_inverse(const SeriesMat& a, long long steps) {
    size_t n = a.size();
    Series det = mat_det(a);
    Series dinv = det.inverted(steps); // throws when det is zero or unknown
    if (n == 1) return {{dinv}};
    SeriesMat inv = mat_zero(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Series cof = mat_det(minor_matrix(a, j, i));
            if ((i + j) % 2 == 1) cof = -cof;
            inv[i][j] = cof * dinv;
        }
    return inv;
}

SeriesVec nabla_apply(const SeriesMat& g, const SeriesVec& v) {
    SeriesVec r = mat_apply(g, v);
    for (size_t i = 0; i < v.size(); ++i) r[i] = r[i] + v[i].delta();
    return r;
}

SeriesMat direct_sum(const SeriesMat& a, const SeriesMat& b) {
    size_t n = a.size(), m = b.size();
    SeriesMat r = mat_zero(n + m);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) r[i][j] = a[i][j];
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) r[n + i][n + j] = b[i][j];
    return r;
}

SeriesMat gauge_transform(const SeriesMat& g, const SeriesMat& h, long long steps) {
    SeriesMat hi = mat_inverse(h, steps);
    return mat_mul(hi, mat_add(mat_mul(g, h), mat_delta(h)));
}

SeriesMat companion(const DiffOp& p) {
    if (!p.is_monic()) throw PreconditionError("companion form needs a monic operator");
    int n = p.order();
    if (n < 1) throw PreconditionError("companion form needs positive order");
    SeriesMat g = mat_zero(static_cast<size_t>(n));
    for (int i = 0; i + 1 < n; ++i) g[i + 1][i] = Series::one();
    for (int i = 0; i < n; ++i) g[i][n - 1] = -p.coeff(i);
    return g;
}

namespace {

// Candidate vectors for the cyclic search, coarse to fine. Level 0 runs the
// 0/1 vectors ordered by support size; level L >= 1 widens the entry alphabet
// to c*S^k with 1 <= c <= L+1 and 0 <= k <= L.
std::vector<SeriesVec> cyclic_candidates(size_t n, int level) {
    std::vector<SeriesVec> out;
    if (level == 0) {
        std::vector<size_t> masks;
        for (size_t m = 1; m < (size_t(1) << n); ++m) masks.push_back(m);
        std::sort(masks.begin(), masks.end(), [](size_t a, size_t b) {
            int pa = std::popcount(a), pb = std::popcount(b);
            return pa != pb ? pa < pb : a < b;
        });
        for (size_t m : masks) {
            SeriesVec v(n, Series::zero());
            for (size_t i = 0; i < n; ++i)
                if (m & (size_t(1) << i)) v[i] = Series::one();
            out.push_back(std::move(v));
        }
        return out;
    }
    struct Entry {
        Series s;
        bool leading_unit;
    };
    std::vector<Entry> evs{{Series::zero(), false}};
    for (int k = 0; k <= level; ++k)
        for (int c = 1; c <= level + 1; ++c)
            evs.push_back({Series::monomial(Rat(c), Rat(k)), c == 1});
    size_t b = evs.size();
    size_t total = 1;
    for (size_t i = 0; i < n; ++i) total *= b;
    for (size_t t = 1; t < total; ++t) {
        size_t rest = t;
        std::vector<size_t> digit(n);
        for (size_t i = n; i-- > 0;) {
            digit[i] = rest % b;
            rest /= b;
        }
        // Normalize scale: the first nonzero entry must have coefficient 1.
        size_t firstnz = 0;
        while (firstnz < n && digit[firstnz] == 0) ++firstnz;
        if (firstnz == n || !evs[digit[firstnz]].leading_unit) continue;
        SeriesVec v(n);
        for (size_t i = 0; i < n; ++i) v[i] = evs[digit[i]].s;
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace

CyclicData cyclic_vector(const SeriesMat& g, long long steps) {
    size_t n = g.size();
    if (n == 0) throw PreconditionError("empty module has no cyclic vector");
    for (int level = 0; level <= 2; ++level) {
        for (const SeriesVec& v : cyclic_candidates(n, level)) {
            // Columns v, nabla v, ..., nabla^n v.
            std::vector<SeriesVec> w{v};
            for (size_t k = 0; k < n; ++k) w.push_back(nabla_apply(g, w.back()));
            SeriesMat W = mat_zero(n);
            for (size_t i = 0; i < n; ++i)
                for (size_t k = 0; k < n; ++k) W[i][k] = w[k][i];
            Series det = mat_det(W);
            if (!det.valuation().is_finite()) continue;
            Series dinv = det.inverted(steps);
            // Cramer: nabla^n v = sum c_k nabla^k v.
            std::vector<Series> coeffs(n + 1, Series::zero());
            for (size_t k = 0; k < n; ++k) {
                SeriesMat Wk = W;
                for (size_t i = 0; i < n; ++i) Wk[i][k] = w[n][i];
                coeffs[k] = -(mat_det(Wk) * dinv);
            }
            coeffs[n] = Series::one();
            return {v, DiffOp(std::move(coeffs))};
        }
    }
    throw InternalMismatchError(
        "cyclic vector search exhausted its budget (determinants vanish or "
        "fall below working precision)");
}

} // namespace dspec
