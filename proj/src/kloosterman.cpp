#include "artifact/kloosterman.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace artifact {

namespace {

long mod_pos(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

long inverse_mod(long a, long m) {
    if (m == 1) return 0;
    long g = m, x = 0, x1 = 1, r = mod_pos(a, m);
    while (r != 0) {
        long q = g / r;
        long t = g - q * r;
        g = r;
        r = t;
        t = x - q * x1;
        x = x1;
        x1 = t;
    }
    if (g != 1) throw std::invalid_argument("inverse_mod: not invertible");
    return mod_pos(x, m);
}

}  // namespace

mpq_class dedekind_sum(long h, long c) {
    if (c < 1) throw std::invalid_argument("dedekind_sum: c must be positive");
    if (std::gcd(h, c) != 1) throw std::invalid_argument("dedekind_sum: gcd(h, c) != 1");
    // Reciprocity: s(h,k) = -1/4 + (h^2 + k^2 + 1)/(12hk) - s(k mod h, h).
    mpz_class hh = mod_pos(h, c), kk = c;
    mpq_class total = 0;
    int sign = 1;
    while (hh != 0) {
        mpq_class step(hh * hh + kk * kk + 1, 12 * hh * kk);
        step.canonicalize();
        step -= mpq_class(1, 4);
        if (sign > 0) total += step; else total -= step;
        mpz_class r = kk % hh;
        kk = hh;
        hh = r;
        sign = -sign;
    }
    return total;
}

std::complex<double> Root24::value() const {
    double t = 2.0 * std::numbers::pi * static_cast<double>(k) / 24.0;
    return {std::cos(t), std::sin(t)};
}

Root24 eta_multiplier(SL2Z g) {
    if (g.a * g.d - g.b * g.c != 1) throw std::invalid_argument("eta_multiplier: det != 1");
    if (g.c < 0 || (g.c == 0 && g.d < 0)) g = {-g.a, -g.b, -g.c, -g.d};
    if (g.c == 0) return Root24(g.b);
    // exp(pi i ((a+d)/(12c) - s(d,c) - 1/4)) = e(24q / 24)
    mpq_class q(mpz_class(g.a + g.d), mpz_class(24 * g.c));
    q.canonicalize();
    q -= dedekind_sum(g.d, g.c) / 2;
    q -= mpq_class(1, 8);
    mpq_class t = 24 * q;
    t.canonicalize();
    if (t.get_den() != 1) throw std::logic_error("eta_multiplier: exponent not in (1/24)Z");
    mpz_class k = t.get_num() % 24;
    return Root24(k.get_si());
}

std::vector<mpq_class> kloosterman_phases(long m, long n, long c) {
    if (c < 1) throw std::invalid_argument("kloosterman: c must be positive");
    std::vector<mpq_class> out;
    mpq_class mt = mpq_class(24 * m - 23, 24);
    mpq_class nt = mpq_class(24 * n - 23, 24);
    mt.canonicalize();
    nt.canonicalize();
    for (long d = 0; d < c; ++d) {
        if (std::gcd(d, c) != 1) continue;
        long a = inverse_mod(d, c);
        long b = (a * d - 1) / c;
        Root24 chi = eta_multiplier({a, b, c, d});
        mpq_class r = (mt * a + nt * d) / c;
        r -= mpq_class(chi.k, 24);
        r.canonicalize();
        out.push_back(r);
    }
    return out;
}

namespace {

CBall sum_phases(const std::vector<mpq_class>& phases, const mpq_class& shift, mpfr_prec_t prec) {
    CBall acc(prec);
    for (const auto& r : phases) {
        mpq_class t = r + shift;
        t.canonicalize();
        acc += unit_root(t.get_num(), t.get_den(), prec);
    }
    return acc;
}

Ball certified_real(const CBall& z, const char* what) {
    if (!z.im.contains_zero()) throw std::logic_error(std::string(what) + ": imaginary part not certified zero");
    Ball r = z.re;
    r.add_error(abs_upper(z.im));
    return r;
}

}  // namespace

CBall kloosterman_S(long m, long n, long c, mpfr_prec_t prec) {
    return sum_phases(kloosterman_phases(m, n, c), mpq_class(0), prec);
}

Ball rademacher_A(long c, long n, mpfr_prec_t prec) {
    // sqrt(-i) = e(-1/8)
    CBall z = sum_phases(kloosterman_phases(1, 1 - n, c), mpq_class(-1, 8), prec);
    return certified_real(z, "rademacher_A");
}

Ball dedekind_form_A(long c, long n, mpfr_prec_t prec) {
    std::vector<mpq_class> phases;
    for (long h = 0; h < c; ++h) {
        if (std::gcd(h, c) != 1) continue;
        mpq_class r = dedekind_sum(h, c) / 2 - mpq_class(mpz_class(n) * h, mpz_class(c));
        r.canonicalize();
        phases.push_back(r);
    }
    CBall z = sum_phases(phases, mpq_class(0), prec);
    return certified_real(z, "dedekind_form_A");
}

Ball selberg_whiteman_A(long c, long n, mpfr_prec_t prec) {
    if (c < 1) throw std::invalid_argument("selberg_whiteman_A: c must be positive");
    Ball sum(prec + 8);
    long target = mod_pos(-n, c);
    for (long j = 0; j < 2 * c; ++j) {
        long pent = (3 * j * j + j) / 2;
        if (mod_pos(pent, c) != target) continue;
        CBall e = unit_root(mpz_class(6 * j + 1), mpz_class(12 * c), prec + 8);
        if (j % 2 == 0) sum = sum + e.re; else sum = sum - e.re;
    }
    Ball scale = sqrt(Ball::from_q(mpq_class(mpz_class(c), mpz_class(3)), prec + 8));
    Ball r = scale * sum;
    return r;
}

CDBall kloosterman_partial_sum(long n, long X, std::vector<PartialSumRow>* rows) {
    if (X < 1) throw std::invalid_argument("kloosterman_partial_sum: X must be >= 1");
    constexpr double kTermErr = 4.0 * 2.0 * std::numbers::pi * 1.1102230246251565e-16;
    constexpr double kEps = 1.1102230246251565e-16;
    CDBall acc;
    if (rows) rows->reserve(static_cast<size_t>(X));
    for (long c = 1; c <= X; ++c) {
        // numerator over 24c: -k c + (24 - 23) a + (24 n - 23) d, with m = 1
        long den = 24 * c;
        std::complex<double> s{0.0, 0.0};
        long terms = 0;
        for (long d = 0; d < c; ++d) {
            if (std::gcd(d, c) != 1) continue;
            long a = inverse_mod(d, c);
            long b = (a * d - 1) / c;
            Root24 chi = eta_multiplier({a, b, c, d});
            long num = mod_pos(-static_cast<long>(chi.k) * c, den);
            num = mod_pos(num + a, den);
            num = mod_pos(num + mod_pos(24 * n - 23, den) * d % den, den);
            double t = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
            s += std::complex<double>(std::cos(t), std::sin(t));
            ++terms;
        }
        acc.mid += s / static_cast<double>(c);
        acc.rad += (kTermErr * static_cast<double>(terms) + kEps * terms * static_cast<double>(terms)) /
                       static_cast<double>(c) +
                   2.0 * kEps * std::abs(acc.mid);
        if (rows) rows->push_back({c, acc});
    }
    return acc;
}

}  // namespace artifact
