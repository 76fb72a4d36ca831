#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace artifact {

// Real ball: midpoint at working precision, radius kept at 64 bits and
// always rounded toward +inf. Every operation accounts for the rounding of
// the midpoint plus propagation of the input radii.
class Ball {
public:
    static constexpr mpfr_prec_t kRadPrec = 64;

    explicit Ball(mpfr_prec_t prec = 128);
    Ball(const Ball& o);
    Ball(Ball&& o) noexcept;
    Ball& operator=(const Ball& o);
    Ball& operator=(Ball&& o) noexcept;
    ~Ball();

    static Ball from_z(const mpz_class& v, mpfr_prec_t prec);
    static Ball from_q(const mpq_class& v, mpfr_prec_t prec);
    static Ball from_si(long v, mpfr_prec_t prec);
    static Ball pi(mpfr_prec_t prec);

    mpfr_prec_t prec() const { return mpfr_get_prec(mid_); }
    const mpfr_t& mid() const { return mid_; }
    const mpfr_t& rad() const { return rad_; }
    mpfr_t& mid_mut() { return mid_; }
    mpfr_t& rad_mut() { return rad_; }

    double mid_d() const;
    double rad_d() const;  // rounded up
    std::string mid_str(int digits = 20) const;

    bool contains(const mpz_class& v) const;
    bool contains_zero() const;
    // True if every point of the ball is > 0.
    bool positive() const;
    // Nearest integer to the midpoint.
    mpz_class round_mid() const;
    // Radius below 2^e?
    bool rad_below(double bound) const;

    // Widen radius by a nonnegative amount given as double.
    void add_error(double e);
    void add_error(const mpfr_t e);
    // Widen radius by one ulp of the midpoint.
    void add_ulp();

    Ball operator-() const;
    friend Ball operator+(const Ball& a, const Ball& b);
    friend Ball operator-(const Ball& a, const Ball& b);
    friend Ball operator*(const Ball& a, const Ball& b);
    friend Ball operator/(const Ball& a, const Ball& b);
    Ball& operator+=(const Ball& b);
    Ball mul_si(long k) const;
    Ball div_si(long k) const;

private:
    mpfr_t mid_;
    mpfr_t rad_;
};

Ball sqrt(const Ball& x);
Ball exp(const Ball& x);
Ball cosh(const Ball& x);
Ball sinh(const Ball& x);
void sin_cos(const Ball& x, Ball& s, Ball& c);
// Upper bound for |x|, 64-bit, rounded up.
double abs_upper(const Ball& x);

struct CBall {
    Ball re;
    Ball im;
    explicit CBall(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
    CBall(Ball r, Ball i) : re(std::move(r)), im(std::move(i)) {}
    CBall& operator+=(const CBall& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    double rad_d() const;  // max of component radii
};

CBall operator*(const CBall& a, const CBall& b);
CBall operator+(const CBall& a, const CBall& b);
CBall conj(const CBall& a);
// e(num/den) = exp(2 pi i num/den), exact phase.
CBall unit_root(const mpz_class& num, const mpz_class& den, mpfr_prec_t prec);

}  // namespace artifact
