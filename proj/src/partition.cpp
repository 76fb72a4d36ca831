#include "artifact/partition.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

#include "artifact/kloosterman.hpp"
#include "artifact/special.hpp"

namespace artifact {

namespace {

std::shared_mutex g_oracle_mutex;
std::vector<mpz_class> g_oracle_table{mpz_class(1)};

void extend_table(long n) {
    auto& t = g_oracle_table;
    t.reserve(static_cast<size_t>(n) + 1);
    for (long k = static_cast<long>(t.size()); k <= n; ++k) {
        mpz_class acc = 0;
        for (long j = 1;; ++j) {
            long g1 = j * (3 * j - 1) / 2;
            if (g1 > k) break;
            long g2 = j * (3 * j + 1) / 2;
            if (j % 2 == 1) {
                acc += t[k - g1];
                if (g2 <= k) acc += t[k - g2];
            } else {
                acc -= t[k - g1];
                if (g2 <= k) acc -= t[k - g2];
            }
        }
        t.push_back(acc);
    }
}

double hrr_x(long n) { return std::numbers::pi * std::sqrt(24.0 * n - 1.0) / 6.0; }

}  // namespace

mpz_class partition_oracle(long n) {
    if (n < 0) throw std::invalid_argument("partition_oracle: n must be nonnegative");
    if (n > kOracleCapacity) throw std::length_error("partition_oracle: n exceeds oracle capacity");
    {
        std::shared_lock lock(g_oracle_mutex);
        if (static_cast<long>(g_oracle_table.size()) > n) return g_oracle_table[n];
    }
    std::unique_lock lock(g_oracle_mutex);
    if (static_cast<long>(g_oracle_table.size()) <= n) extend_table(n);
    return g_oracle_table[n];
}

mpfr_prec_t prec_policy(long n) {
    double bits = std::numbers::pi * std::sqrt(2.0 * n / 3.0) / std::numbers::ln2;
    return static_cast<mpfr_prec_t>(std::ceil(bits)) + 96;
}

HrrTerm hrr_term(long n, long c, mpfr_prec_t prec) {
    if (prec < 64) throw std::invalid_argument("hrr_term: precision must be at least 64 bits");
    if (n < 1 || c < 1) throw std::invalid_argument("hrr_term: n and c must be positive");
    double x = hrr_x(n);
    long drop = static_cast<long>(std::floor((x - x / c) / std::numbers::ln2));
    mpfr_prec_t p = std::max<mpfr_prec_t>(64, prec - std::max<long>(drop, 0));

    Ball a = selberg_whiteman_A(c, n, p);
    Ball v = Ball::from_si(24 * n - 1, p);
    Ball xb = (Ball::pi(p) * sqrt(v)).div_si(6);
    Ball bes = bessel_I_3_2(xb.div_si(c));
    Ball pow34 = sqrt(v) * sqrt(sqrt(v));
    Ball coef = Ball::pi(p).mul_si(2) / pow34;
    Ball term = (coef * a * bes).div_si(c);
    return HrrTerm{c, std::move(a), std::move(bes), std::move(term)};
}

double hrr_tail_bound(long n, long N) {
    if (N < 1) throw std::invalid_argument("hrr_tail_bound: N must be positive");
    const double pi = std::numbers::pi;
    // 2 pi (24n-1)^{-3/4} (x/2)^{3/2} = 2 pi (pi/12)^{3/2}; Gamma(5/2) = 3 sqrt(pi)/4.
    double lead = 2.0 * pi * std::pow(pi / 12.0, 1.5) / (0.75 * std::sqrt(pi));
    double b = lead * std::cosh(hrr_x(n) / static_cast<double>(N + 1)) * 2.0 / std::sqrt(static_cast<double>(N));
    return b * (1.0 + 1e-9);
}

long n_exact(long n) {
    if (n < 1) throw std::invalid_argument("n_exact: n must be positive");
    long N = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(n)))) + 8;
    while (hrr_tail_bound(n, N) >= 0.25) ++N;
    return N;
}

Ball hrr_partial_sum(long n, long N, mpfr_prec_t prec) {
    if (n < 1) throw std::invalid_argument("hrr_partial_sum: n must be positive");
    if (N < 1) throw std::invalid_argument("hrr_partial_sum: N must be positive");
    if (prec < 64) throw std::invalid_argument("hrr_partial_sum: precision must be at least 64 bits");
    Ball acc(prec);
    for (long c = 1; c <= N; ++c) acc += hrr_term(n, c, prec).term;
    return acc;
}

HrrResult hrr_exact(long n, std::optional<long> N, std::optional<mpfr_prec_t> prec) {
    long terms = N.value_or(n_exact(n));
    double tail = hrr_tail_bound(n, terms);
    if (tail >= 0.25) throw std::invalid_argument("hrr_exact: N too small for certified rounding");
    mpfr_prec_t p = prec.value_or(prec_policy(n));
    for (int attempt = 0; attempt <= 6; ++attempt, p *= 2) {
        Ball s = hrr_partial_sum(n, terms, p);
        if (s.rad_below(0.25)) return HrrResult{s.round_mid(), terms, p, s, tail};
    }
    throw std::runtime_error("hrr_exact: precision insufficient after 6 doublings");
}

TruncationRecord truncation_error(long n, long N) {
    mpz_class pn = partition_oracle(n);
    mpfr_prec_t p = prec_policy(n);
    TruncationRecord rec{n, N, p, Ball(p), mpq_class(0), 0.0, std::log(static_cast<double>(n)), std::nan("")};
    for (int attempt = 0; attempt <= 8; ++attempt, p *= 2) {
        Ball s = hrr_partial_sum(n, N, p);
        mpq_class mid;
        mpfr_get_q(mid.get_mpq_t(), s.mid());
        rec.prec = p;
        rec.remainder = mpq_class(pn) - mid;
        rec.remainder_rad = s.rad_d();
        rec.partial = std::move(s);
        double r = std::fabs(rec.remainder.get_d());
        if (rec.remainder_rad < 0.25 && r > rec.remainder_rad * 1048576.0) break;
    }
    double r = std::fabs(rec.remainder.get_d());
    if (r > rec.remainder_rad) rec.log_abs_R = std::log(r);
    return rec;
}

ScanResult error_exponent_scan(const std::vector<long>& n_values, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("error_exponent_scan: alpha must be positive");
    if (n_values.empty()) throw std::invalid_argument("error_exponent_scan: no n values");
    for (size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < 16) throw std::invalid_argument("error_exponent_scan: n must be >= 16");
        if (i > 0 && n_values[i] <= n_values[i - 1])
            throw std::invalid_argument("error_exponent_scan: n values must be strictly ascending");
    }
    partition_oracle(n_values.back());

    std::vector<std::future<TruncationRecord>> jobs;
    for (long n : n_values) {
        long N = static_cast<long>(std::ceil(alpha * std::sqrt(static_cast<double>(n))));
        jobs.push_back(std::async(std::launch::async, [n, N] { return truncation_error(n, N); }));
    }
    ScanResult out;
    for (auto& j : jobs) out.records.push_back(j.get());

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int k = 0;
    for (const auto& r : out.records) {
        if (std::isnan(r.log_abs_R)) {
            out.excluded.push_back(r.n);
            continue;
        }
        sx += r.log_n;
        sy += r.log_abs_R;
        sxx += r.log_n * r.log_n;
        sxy += r.log_n * r.log_abs_R;
        ++k;
    }
    if (k < 2) throw std::invalid_argument("error_exponent_scan: fewer than two usable records, slope undefined");
    double den = k * sxx - sx * sx;
    out.slope = (k * sxy - sx * sy) / den;
    out.intercept = (sy - out.slope * sx) / k;
    return out;
}

std::string scan_csv(const ScanResult& r, double alpha) {
    std::ostringstream os;
    os.precision(17);
    os << "n,N,alpha,prec_bits,partial_mid,partial_rad,remainder,log_n,log_abs_R\n";
    for (const auto& t : r.records) {
        os << t.n << ',' << t.N << ',' << alpha << ',' << t.prec << ',' << t.partial.mid_str(30) << ','
           << t.partial.rad_d() << ',' << t.remainder.get_d() << ',' << t.log_n << ',';
        if (std::isnan(t.log_abs_R)) os << "nan"; else os << t.log_abs_R;
        os << '\n';
    }
    return os.str();
}

}  // namespace artifact
