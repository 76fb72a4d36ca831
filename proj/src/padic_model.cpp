#include "artifact/padic.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace artifact::padic {

int vp(const mpz_class& x, long p) {
    if (x == 0) return kInfiniteValuation;
    mpz_class t = x, pp = p;
    return static_cast<int>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), pp.get_mpz_t()));
}

int vp(const mpq_class& x, long p) {
    if (x == 0) return kInfiniteValuation;
    return vp(x.get_num(), p) - vp(x.get_den(), p);
}

mpq_class QMat::det() const { return a * d - b * c; }

QMat QMat::operator*(const QMat& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

bool QMat::operator==(const QMat& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }

QMat QMat::inverse() const {
    mpq_class D = det();
    if (D == 0) throw std::invalid_argument("QMat::inverse: singular matrix");
    return {d / D, -b / D, -c / D, a / D};
}

std::string QMat::str() const {
    std::ostringstream os;
    os << "[[" << a.get_str() << "," << b.get_str() << "],[" << c.get_str() << "," << d.get_str() << "]]";
    return os.str();
}

QMat identity() { return {1, 0, 0, 1}; }
QMat a_mat(const mpq_class& y) { return {y, 0, 0, 1}; }
QMat z_mat(const mpq_class& y) { return {y, 0, 0, y}; }
QMat n_upper(const mpq_class& x) { return {1, x, 0, 1}; }
QMat n_lower(const mpq_class& x) { return {1, 0, x, 1}; }
QMat weyl() { return {0, 1, 1, 0}; }

mpq_class ppow(long p, int e) {
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(std::abs(e)));
    return e >= 0 ? mpq_class(t) : mpq_class(mpz_class(1), t);
}

bool in_gl2_zp(const QMat& g, long p) {
    for (const mpq_class* x : {&g.a, &g.b, &g.c, &g.d})
        if (vp(*x, p) < 0) return false;
    return vp(g.det(), p) == 0;
}

Iwasawa iwasawa_decompose(const QMat& g, long p) {
    if (g.det() == 0) throw std::invalid_argument("iwasawa_decompose: singular matrix");
    if (in_gl2_zp(g, p)) return {identity(), g};
    if (vp(g.c, p) >= vp(g.d, p)) {
        mpq_class x = g.c / g.d;
        return {QMat{g.a - g.b * x, g.b, 0, g.d}, n_lower(x)};
    }
    mpq_class y = g.d / g.c;
    return {QMat{g.b - g.a * y, g.a, 0, g.c}, QMat{0, 1, 1, y}};
}

namespace {

long ipow(long p, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= p;
    return r;
}

long inverse_mod(long a, long m) {
    long g = m, x = 0, x1 = 1, r = ((a % m) + m) % m;
    while (r != 0) {
        long q = g / r, t = g - q * r;
        g = r;
        r = t;
        t = x - q * x1;
        x = x1;
        x1 = t;
    }
    if (g != 1) return 0;
    return ((x % m) + m) % m;
}

cd ipow(cd z, int e) {
    cd base = e >= 0 ? z : 1.0 / z;
    cd r = 1.0;
    for (int i = 0, n = std::abs(e); i < n; ++i) r *= base;
    return r;
}

cd unit_root(long k, long n) {
    double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    return {std::cos(t), std::sin(t)};
}

}  // namespace

FiniteModel::FiniteModel(long p, int m) : p_(p), m_(m), M_(ipow(p, m)) {
    if (p < 2 || m < 1) throw std::invalid_argument("FiniteModel: need prime p and m >= 1");
    for (long k = 2; k * k <= p; ++k)
        if (p % k == 0) throw std::invalid_argument("FiniteModel: p must be prime");
    const long M = M_;
    inv_.assign(static_cast<size_t>(M), 0);
    for (long u = 0; u < M; ++u) inv_[u] = inverse_mod(u, M);
    index_.assign(static_cast<size_t>(M * M * M * M), -1);
    elems_.reserve(static_cast<size_t>(expected_order(p, m)));
    for (long d = 0; d < M; ++d)
        for (long c = 0; c < M; ++c)
            for (long b = 0; b < M; ++b)
                for (long a = 0; a < M; ++a) {
                    if (((a * d - b * c) % p + p) % p == 0) continue;
                    index_[a + M * (b + M * (c + M * d))] = static_cast<int32_t>(elems_.size());
                    elems_.push_back({a, b, c, d});
                }
    for (long x = 0; x < M; ++x) reps_.push_back({1, 0, x, 1});
    for (long y = 0; y < M; y += p) reps_.push_back({0, M - 1, 1, y});
    decomp_.reserve(elems_.size());
    for (const auto& g : elems_) decomp_.push_back(decompose(g));
}

long FiniteModel::index(const Elem& g) const {
    const long M = M_;
    auto r = [M](long x) { return ((x % M) + M) % M; };
    return index_[r(g.a) + M * (r(g.b) + M * (r(g.c) + M * r(g.d)))];
}

Elem FiniteModel::mul(const Elem& g, const Elem& h) const {
    const long M = M_;
    return {(g.a * h.a + g.b * h.c) % M, (g.a * h.b + g.b * h.d) % M, (g.c * h.a + g.d * h.c) % M,
            (g.c * h.b + g.d * h.d) % M};
}

FiniteModel::Decomp FiniteModel::decompose(const Elem& g) const {
    const long M = M_;
    auto r = [M](long x) { return ((x % M) + M) % M; };
    long det = r(g.a * g.d - g.b * g.c);
    if (g.d % p_ != 0) {
        long x = r(g.c * inv_[r(g.d)]);
        long b22 = r(g.d);
        return {r(det * inv_[b22]), b22, static_cast<int>(x)};
    }
    long y = r(g.d * inv_[r(g.c)]);
    long b22 = r(g.c);
    return {r(det * inv_[b22]), b22, static_cast<int>(M + y / p_)};
}

const std::vector<long>& FiniteModel::k0(int j) const {
    if (j < 0 || j > m_) throw LevelError("K_0[p^" + std::to_string(j) + "] not representable", j);
    std::lock_guard lock(cache_mutex_);
    auto it = k0_cache_.find(j);
    if (it != k0_cache_.end()) return it->second;
    long pj = ipow(p_, j);
    std::vector<long> out;
    for (size_t i = 0; i < elems_.size(); ++i)
        if (elems_[i].c % pj == 0) out.push_back(static_cast<long>(i));
    return k0_cache_.emplace(j, std::move(out)).first->second;
}

long FiniteModel::k0_index(long p, int j) { return j == 0 ? 1 : (p + 1) * ipow(p, j - 1); }

long FiniteModel::reduce(const mpq_class& x) const {
    if (vp(x, p_) < 0) throw std::invalid_argument("FiniteModel::reduce: value is not p-integral");
    mpz_class Mz = M_;
    mpz_class num = x.get_num() % Mz, den = x.get_den() % Mz;
    if (num < 0) num += Mz;
    if (den < 0) den += Mz;
    long r = (num.get_si() * inv_[den.get_si()]) % M_;
    return r;
}

Elem FiniteModel::reduce(const QMat& g) const { return {reduce(g.a), reduce(g.b), reduce(g.c), reduce(g.d)}; }

QMat FiniteModel::lift(const Elem& g) const { return {g.a, g.b, g.c, g.d}; }

long FiniteModel::expected_order(long p, int m) {
    long M = ipow(p, m);
    return M * M * M * M / (p * p * p) * (p - 1) * (p * p - 1);
}

LocalCharacter LocalCharacter::unramified(long p, cd z) {
    LocalCharacter c;
    c.p = p;
    c.value_at_uniformizer = z;
    c.conductor = 0;
    c.unit_table = {1.0};
    return c;
}

LocalCharacter LocalCharacter::ramified(long p, int cond, cd z, int twist) {
    if (cond < 1) throw std::invalid_argument("LocalCharacter::ramified: conductor must be >= 1");
    if (p == 2 && cond == 1) throw std::invalid_argument("LocalCharacter::ramified: no character of conductor 1 at p = 2");
    LocalCharacter ch;
    ch.p = p;
    ch.value_at_uniformizer = z;
    ch.conductor = cond;
    long pc = ipow(p, cond);
    ch.unit_table.assign(static_cast<size_t>(pc), 0.0);
    if (p != 2) {
        long phi = pc / p * (p - 1);
        long g = 2;
        for (;; ++g) {
            if (g % p == 0) continue;
            long x = 1, order = 0;
            do {
                x = x * g % pc;
                ++order;
            } while (x != 1);
            if (order == phi) break;
        }
        long x = 1;
        for (long k = 0; k < phi; ++k, x = x * g % pc) ch.unit_table[x] = unit_root(twist * k, phi);
    } else if (cond == 2) {
        ch.unit_table[1] = 1.0;
        ch.unit_table[3] = unit_root(twist, 2);
    } else {
        long order = pc / 4;
        long x = 1;
        for (long k = 0; k < order; ++k, x = x * 5 % pc) {
            ch.unit_table[x] = unit_root(twist * k, order);
            ch.unit_table[pc - x] = ch.unit_table[x];
        }
    }
    return ch;
}

cd LocalCharacter::on_unit(long u) const {
    if (conductor == 0) return 1.0;
    long pc = static_cast<long>(unit_table.size());
    return unit_table[((u % pc) + pc) % pc];
}

cd LocalCharacter::operator()(const mpq_class& x) const {
    int v = vp(x, p);
    if (v == kInfiniteValuation) throw std::invalid_argument("LocalCharacter: argument is zero");
    cd val = ipow(value_at_uniformizer, v);
    if (conductor == 0) return val;
    mpq_class u = x / ppow(p, v);
    mpz_class pc = static_cast<long>(unit_table.size());
    mpz_class num = u.get_num() % pc, den = u.get_den() % pc;
    if (num < 0) num += pc;
    if (den < 0) den += pc;
    long r = num.get_si() * inverse_mod(den.get_si(), pc.get_si()) % pc.get_si();
    return val * on_unit(r);
}

LocalCharacter LocalCharacter::inverse() const {
    LocalCharacter c = *this;
    c.value_at_uniformizer = 1.0 / value_at_uniformizer;
    for (auto& v : c.unit_table)
        if (v != 0.0) v = 1.0 / v;
    return c;
}

bool LocalCharacter::is_multiplicative(double tol) const {
    if (conductor == 0) return true;
    long pc = static_cast<long>(unit_table.size());
    for (long u = 1; u < pc; ++u) {
        if (u % p == 0) continue;
        for (long v = 1; v < pc; ++v) {
            if (v % p == 0) continue;
            if (std::abs(on_unit(u * v) - on_unit(u) * on_unit(v)) > tol) return false;
        }
    }
    return std::abs(on_unit(1) - 1.0) <= tol;
}

bool LocalCharacter::is_primitive(double tol) const {
    if (conductor == 0) return true;
    long pc = static_cast<long>(unit_table.size());
    long step = pc / p;  // units congruent to 1 mod p^{c-1}
    for (long u = 1; u < pc; ++u) {
        if (u % p == 0) continue;
        if (conductor >= 2 && (u - 1) % step != 0) continue;
        if (std::abs(on_unit(u) - 1.0) > tol) return true;
    }
    return false;
}

bool LocalCharacter::unitary(double tol) const { return std::abs(std::abs(value_at_uniformizer) - 1.0) <= tol; }

}  // namespace artifact::padic
