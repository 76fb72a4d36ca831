#include "artifact/ball.hpp"

#include <algorithm>
#include <stdexcept>

namespace artifact {

namespace {

struct Tmp {
    mpfr_t v;
    explicit Tmp(mpfr_prec_t p = Ball::kRadPrec) { mpfr_init2(v, p); }
    ~Tmp() { mpfr_clear(v); }
    Tmp(const Tmp&) = delete;
    Tmp& operator=(const Tmp&) = delete;
};

// out = |x| rounded up, at radius precision.
void abs_up(mpfr_t out, const mpfr_t x) { mpfr_abs(out, x, MPFR_RNDU); }

// out += one ulp of x (an upper bound on the round-to-nearest error).
void add_ulp_of(mpfr_t out, const mpfr_t x) {
    if (mpfr_zero_p(x)) return;
    Tmp u;
    mpfr_set_ui_2exp(u.v, 1, mpfr_get_exp(x) - mpfr_get_prec(x), MPFR_RNDU);
    mpfr_add(out, out, u.v, MPFR_RNDU);
}

mpfr_prec_t pmax(const Ball& a, const Ball& b) { return std::max(a.prec(), b.prec()); }

}  // namespace

Ball::Ball(mpfr_prec_t prec) {
    mpfr_init2(mid_, prec);
    mpfr_init2(rad_, kRadPrec);
    mpfr_set_zero(mid_, 1);
    mpfr_set_zero(rad_, 1);
}

Ball::Ball(const Ball& o) {
    mpfr_init2(mid_, o.prec());
    mpfr_init2(rad_, kRadPrec);
    mpfr_set(mid_, o.mid_, MPFR_RNDN);
    mpfr_set(rad_, o.rad_, MPFR_RNDU);
}

Ball::Ball(Ball&& o) noexcept : Ball(o.prec()) {
    mpfr_swap(mid_, o.mid_);
    mpfr_swap(rad_, o.rad_);
}

Ball& Ball::operator=(const Ball& o) {
    if (this != &o) {
        mpfr_set_prec(mid_, o.prec());
        mpfr_set(mid_, o.mid_, MPFR_RNDN);
        mpfr_set(rad_, o.rad_, MPFR_RNDU);
    }
    return *this;
}

Ball& Ball::operator=(Ball&& o) noexcept {
    mpfr_swap(mid_, o.mid_);
    mpfr_swap(rad_, o.rad_);
    return *this;
}

Ball::~Ball() {
    mpfr_clear(mid_);
    mpfr_clear(rad_);
}

Ball Ball::from_z(const mpz_class& v, mpfr_prec_t prec) {
    Ball b(prec);
    if (mpfr_set_z(b.mid_, v.get_mpz_t(), MPFR_RNDN) != 0) b.add_ulp();
    return b;
}

Ball Ball::from_q(const mpq_class& v, mpfr_prec_t prec) {
    Ball b(prec);
    if (mpfr_set_q(b.mid_, v.get_mpq_t(), MPFR_RNDN) != 0) b.add_ulp();
    return b;
}

Ball Ball::from_si(long v, mpfr_prec_t prec) {
    Ball b(prec);
    if (mpfr_set_si(b.mid_, v, MPFR_RNDN) != 0) b.add_ulp();
    return b;
}

Ball Ball::pi(mpfr_prec_t prec) {
    Ball b(prec);
    mpfr_const_pi(b.mid_, MPFR_RNDN);
    b.add_ulp();
    return b;
}

double Ball::mid_d() const { return mpfr_get_d(mid_, MPFR_RNDN); }
double Ball::rad_d() const { return mpfr_get_d(rad_, MPFR_RNDU); }

std::string Ball::mid_str(int digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, mid_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

bool Ball::contains(const mpz_class& v) const {
    long ez = static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2));
    long em = mpfr_zero_p(mid_) ? 0 : mpfr_get_exp(mid_);
    long lo = std::min<long>(em - static_cast<long>(prec()), 0);
    long hi = std::max(em, ez);
    Tmp d(static_cast<mpfr_prec_t>(hi - lo + 4));
    mpfr_sub_z(d.v, mid_, v.get_mpz_t(), MPFR_RNDN);
    mpfr_abs(d.v, d.v, MPFR_RNDU);
    return mpfr_lessequal_p(d.v, rad_) != 0;
}

bool Ball::contains_zero() const {
    return mpfr_cmpabs(mid_, rad_) <= 0;
}

bool Ball::positive() const {
    return mpfr_sgn(mid_) > 0 && mpfr_cmpabs(mid_, rad_) > 0;
}

mpz_class Ball::round_mid() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), mid_, MPFR_RNDN);
    return z;
}

bool Ball::rad_below(double bound) const { return mpfr_cmp_d(rad_, bound) < 0; }

void Ball::add_error(double e) {
    Tmp t;
    mpfr_set_d(t.v, e, MPFR_RNDU);
    mpfr_add(rad_, rad_, t.v, MPFR_RNDU);
}

void Ball::add_error(const mpfr_t e) { mpfr_add(rad_, rad_, e, MPFR_RNDU); }

void Ball::add_ulp() { add_ulp_of(rad_, mid_); }

Ball Ball::operator-() const {
    Ball r(*this);
    mpfr_neg(r.mid_, r.mid_, MPFR_RNDN);
    return r;
}

Ball operator+(const Ball& a, const Ball& b) {
    Ball r(pmax(a, b));
    int t = mpfr_add(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
    if (t != 0) r.add_ulp();
    return r;
}

Ball operator-(const Ball& a, const Ball& b) {
    Ball r(pmax(a, b));
    int t = mpfr_sub(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
    if (t != 0) r.add_ulp();
    return r;
}

Ball operator*(const Ball& a, const Ball& b) {
    Ball r(pmax(a, b));
    int t = mpfr_mul(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    Tmp aa, bb, x;
    abs_up(aa.v, a.mid_);
    abs_up(bb.v, b.mid_);
    mpfr_mul(x.v, aa.v, b.rad_, MPFR_RNDU);
    mpfr_add(r.rad_, r.rad_, x.v, MPFR_RNDU);
    mpfr_mul(x.v, bb.v, a.rad_, MPFR_RNDU);
    mpfr_add(r.rad_, r.rad_, x.v, MPFR_RNDU);
    mpfr_mul(x.v, a.rad_, b.rad_, MPFR_RNDU);
    mpfr_add(r.rad_, r.rad_, x.v, MPFR_RNDU);
    if (t != 0) r.add_ulp();
    return r;
}

Ball operator/(const Ball& a, const Ball& b) {
    if (b.contains_zero()) throw std::domain_error("ball division by a ball containing zero");
    Ball r(pmax(a, b));
    int t = mpfr_div(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    Tmp aa, bb, num, den, x;
    abs_up(aa.v, a.mid_);
    mpfr_mul(num.v, aa.v, b.rad_, MPFR_RNDU);
    mpfr_abs(bb.v, b.mid_, MPFR_RNDU);
    mpfr_mul(x.v, bb.v, a.rad_, MPFR_RNDU);
    mpfr_add(num.v, num.v, x.v, MPFR_RNDU);
    mpfr_abs(bb.v, b.mid_, MPFR_RNDD);
    mpfr_sub(den.v, bb.v, b.rad_, MPFR_RNDD);
    mpfr_mul(den.v, den.v, bb.v, MPFR_RNDD);
    mpfr_div(r.rad_, num.v, den.v, MPFR_RNDU);
    if (t != 0) r.add_ulp();
    return r;
}

Ball& Ball::operator+=(const Ball& b) {
    *this = *this + b;
    return *this;
}

Ball Ball::mul_si(long k) const {
    Ball r(prec());
    int t = mpfr_mul_si(r.mid_, mid_, k, MPFR_RNDN);
    mpfr_mul_ui(r.rad_, rad_, static_cast<unsigned long>(k < 0 ? -k : k), MPFR_RNDU);
    if (t != 0) r.add_ulp();
    return r;
}

Ball Ball::div_si(long k) const {
    if (k == 0) throw std::domain_error("division by zero");
    Ball r(prec());
    int t = mpfr_div_si(r.mid_, mid_, k, MPFR_RNDN);
    mpfr_div_ui(r.rad_, rad_, static_cast<unsigned long>(k < 0 ? -k : k), MPFR_RNDU);
    if (t != 0) r.add_ulp();
    return r;
}

// For f with |f'| <= D on [m - r, m + r]: result radius r*D plus rounding.
static void propagate(Ball& out, const Ball& x, const mpfr_t deriv_bound) {
    Tmp e;
    mpfr_mul(e.v, x.rad(), deriv_bound, MPFR_RNDU);
    out.add_error(e.v);
    out.add_ulp();
}

// Upper bound of |m| + r at radius precision.
static void reach(mpfr_t out, const Ball& x) {
    abs_up(out, x.mid());
    mpfr_add(out, out, x.rad(), MPFR_RNDU);
}

Ball sqrt(const Ball& x) {
    Tmp lo(x.prec());
    mpfr_sub(lo.v, x.mid(), x.rad(), MPFR_RNDD);
    if (mpfr_sgn(lo.v) <= 0) throw std::domain_error("sqrt of a ball reaching nonpositive values");
    Ball r(x.prec());
    mpfr_sqrt(r.mid_mut(), x.mid(), MPFR_RNDN);
    Tmp d;
    mpfr_sqrt(d.v, lo.v, MPFR_RNDD);
    mpfr_mul_2ui(d.v, d.v, 1, MPFR_RNDD);
    mpfr_ui_div(d.v, 1, d.v, MPFR_RNDU);
    propagate(r, x, d.v);
    return r;
}

Ball exp(const Ball& x) {
    Ball r(x.prec());
    mpfr_exp(r.mid_mut(), x.mid(), MPFR_RNDN);
    Tmp d;
    mpfr_add(d.v, x.mid(), x.rad(), MPFR_RNDU);
    mpfr_exp(d.v, d.v, MPFR_RNDU);
    propagate(r, x, d.v);
    return r;
}

Ball cosh(const Ball& x) {
    Ball r(x.prec());
    mpfr_cosh(r.mid_mut(), x.mid(), MPFR_RNDN);
    Tmp d;
    reach(d.v, x);
    mpfr_cosh(d.v, d.v, MPFR_RNDU);
    propagate(r, x, d.v);
    return r;
}

Ball sinh(const Ball& x) {
    Ball r(x.prec());
    mpfr_sinh(r.mid_mut(), x.mid(), MPFR_RNDN);
    Tmp d;
    reach(d.v, x);
    mpfr_cosh(d.v, d.v, MPFR_RNDU);
    propagate(r, x, d.v);
    return r;
}

void sin_cos(const Ball& x, Ball& s, Ball& c) {
    s = Ball(x.prec());
    c = Ball(x.prec());
    mpfr_sin_cos(s.mid_mut(), c.mid_mut(), x.mid(), MPFR_RNDN);
    Tmp one;
    mpfr_set_ui(one.v, 1, MPFR_RNDU);
    propagate(s, x, one.v);
    propagate(c, x, one.v);
}

double abs_upper(const Ball& x) {
    Tmp t;
    reach(t.v, x);
    return mpfr_get_d(t.v, MPFR_RNDU);
}

double CBall::rad_d() const { return std::max(re.rad_d(), im.rad_d()); }

CBall operator*(const CBall& a, const CBall& b) {
    return CBall(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

CBall operator+(const CBall& a, const CBall& b) { return CBall(a.re + b.re, a.im + b.im); }

CBall conj(const CBall& a) { return CBall(a.re, -a.im); }

CBall unit_root(const mpz_class& num, const mpz_class& den, mpfr_prec_t prec) {
    if (den <= 0) throw std::invalid_argument("unit_root: denominator must be positive");
    mpz_class r = num % den;
    if (r < 0) r += den;
    mpq_class frac(2 * r, den);
    frac.canonicalize();
    // A few guard bits so that angle rounding stays below the output ulp.
    Ball theta = Ball::pi(prec + 8) * Ball::from_q(frac, prec + 8);
    Ball s(prec), c(prec);
    sin_cos(theta, s, c);
    return CBall(c, s);
}

}  // namespace artifact
