#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "artifact/ball.hpp"

namespace artifact {

// Largest n the oracle will tabulate; beyond it partition_oracle throws
// std::length_error.
inline constexpr long kOracleCapacity = 500000;

// p(n) by the pentagonal recurrence. The table grows on demand and is shared
// by all threads (readers concurrent, one writer extends).
mpz_class partition_oracle(long n);

struct HrrTerm {
    long c;
    Ball a_c;
    Ball bessel;
    Ball term;
};

// Working precision for p(n): ceil(pi sqrt(2n/3) / ln 2) + 96.
mpfr_prec_t prec_policy(long n);

// Summand for index c at working precision prec. The term is evaluated at
// reduced precision when it is small compared with p(n), so that its absolute
// error stays near 2^{-prec} p(n). Throws std::invalid_argument if prec < 64.
HrrTerm hrr_term(long n, long c, mpfr_prec_t prec);

// Upper bound for sum_{c > N} |term(c)|, from |A_c| <= c and
// I_{3/2}(y) <= (y/2)^{3/2} cosh(y) / Gamma(5/2).
double hrr_tail_bound(long n, long N);

// Smallest N >= ceil(sqrt n) + 8 with hrr_tail_bound(n, N) < 1/4.
long n_exact(long n);

Ball hrr_partial_sum(long n, long N, mpfr_prec_t prec);

struct HrrResult {
    mpz_class value;
    long N;
    mpfr_prec_t prec;
    Ball partial;
    double tail;
};

// Certified p(n): N = n_exact(n), precision doubled until the partial-sum
// radius is below 1/4. Throws std::runtime_error after 6 doublings.
HrrResult hrr_exact(long n, std::optional<long> N = std::nullopt,
                    std::optional<mpfr_prec_t> prec = std::nullopt);

struct TruncationRecord {
    long n;
    long N;
    mpfr_prec_t prec;
    Ball partial;
    mpq_class remainder;  // p(n) - midpoint of partial, exact
    double remainder_rad; // radius of partial
    double log_n;
    double log_abs_R;     // NaN when the ball around R contains 0
};

// R(n, N) = p(n) - sum_{c <= N} term(c). Precision is raised until the
// radius is below min(1/4, |R| / 2^20) or 8 doublings have passed.
TruncationRecord truncation_error(long n, long N);

struct ScanResult {
    std::vector<TruncationRecord> records;
    std::vector<long> excluded;  // n with R certified-indistinguishable from 0
    double slope = 0.0;
    double intercept = 0.0;
};

// N = ceil(alpha sqrt n) for each n. Throws std::invalid_argument if fewer
// than two usable records remain or the input violates its preconditions.
ScanResult error_exponent_scan(const std::vector<long>& n_values, double alpha);

// CSV: n,N,alpha,prec_bits,partial_mid,partial_rad,remainder,log_n,log_abs_R
std::string scan_csv(const ScanResult& r, double alpha);

}  // namespace artifact
