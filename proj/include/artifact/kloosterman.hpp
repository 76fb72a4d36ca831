#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "artifact/ball.hpp"

namespace artifact {

// s(h, c) = sum_{k=1}^{c-1} ((k/c)) ((hk/c)), exact.
mpq_class dedekind_sum(long h, long c);

// e(k/24) with k taken mod 24.
struct Root24 {
    int k = 0;
    Root24() = default;
    explicit Root24(long e) : k(static_cast<int>(((e % 24) + 24) % 24)) {}
    Root24 operator*(Root24 o) const { return Root24(k + o.k); }
    Root24 conj() const { return Root24(-k); }
    bool operator==(const Root24& o) const = default;
    std::complex<double> value() const;
};

struct SL2Z {
    long a, b, c, d;
};

// Dedekind eta multiplier chi(gamma) with eta(gamma z) = chi(gamma) (cz+d)^{1/2} eta(z),
// principal branch for the square root. Throws std::invalid_argument if det != 1.
Root24 eta_multiplier(SL2Z g);

// Exact phases r (mod 1) such that S(m, n, c) = sum_r e(r), with the shifts
// m - 23/24 and n - 23/24 in the exponential and conj(chi) per matrix.
std::vector<mpq_class> kloosterman_phases(long m, long n, long c);

CBall kloosterman_S(long m, long n, long c, mpfr_prec_t prec);

// A_c(n) = sqrt(-i) S(1, 1-n, c). Throws std::logic_error if the imaginary
// part is not certified to contain zero.
Ball rademacher_A(long c, long n, mpfr_prec_t prec);

// sum over h mod c, (h, c) = 1 of exp(pi i s(h,c)) e(-nh/c); real part.
Ball dedekind_form_A(long c, long n, mpfr_prec_t prec);

// sqrt(c/3) * sum over j mod 2c with (3j^2+j)/2 = -n mod c of (-1)^j cos((6j+1)pi/(6c)).
Ball selberg_whiteman_A(long c, long n, mpfr_prec_t prec);

// Double-precision complex value with an error radius.
struct CDBall {
    std::complex<double> mid;
    double rad = 0.0;
};

struct PartialSumRow {
    long X;
    CDBall value;
};

// sum_{c <= X} S(1, n, c) / c. Per-term values use libm sin/cos on an exactly
// reduced phase; the radius charges 4 ulp per term. If rows is non-null it
// receives the running sum after every c.
CDBall kloosterman_partial_sum(long n, long X, std::vector<PartialSumRow>* rows = nullptr);

}  // namespace artifact
