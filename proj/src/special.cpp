#include "artifact/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace artifact {

using cd = std::complex<double>;

Ball bessel_I_3_2(const Ball& x) {
    if (!x.positive()) throw std::domain_error("bessel_I_3_2: argument must be positive");
    mpfr_prec_t p = x.prec();
    Ball inner = cosh(x) - sinh(x) / x;
    Ball pref = sqrt(Ball::from_si(2, p) / (Ball::pi(p) * x));
    return pref * inner;
}

Ball bessel_I_3_2(double x, mpfr_prec_t prec) {
    if (!(x > 0.0)) throw std::domain_error("bessel_I_3_2: argument must be positive");
    Ball b(prec);
    mpfr_set_d(b.mid_mut(), x, MPFR_RNDN);  // exact: prec >= 53
    return bessel_I_3_2(b);
}

cd cgamma(cd z) {
    static constexpr std::array<double, 9> kP = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    const double pi = std::numbers::pi;
    if (z.real() < 0.5) return pi / (std::sin(pi * z) * cgamma(1.0 - z));
    z -= 1.0;
    cd acc = kP[0];
    for (int i = 1; i < 9; ++i) acc += kP[i] / (z + static_cast<double>(i));
    cd t = z + 7.5;
    return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

namespace {

double tolerance(int prec) { return std::max(std::ldexp(1.0, -prec), 1e-14); }

// Integrates a complex function on [lo, hi] in panels of width <= h,
// real and imaginary parts separately. Returns the sum of error estimates in err.
template <class F>
cd integrate_panels(F f, double lo, double hi, double h, double tol, double& err) {
    using boost::math::quadrature::gauss_kronrod;
    int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / h)));
    double w = (hi - lo) / panels;
    cd total = 0.0;
    err = 0.0;
    for (int k = 0; k < panels; ++k) {
        double a = lo + k * w, b = (k + 1 == panels) ? hi : a + w;
        double er = 0.0, ei = 0.0;
        double re = gauss_kronrod<double, 31>::integrate([&](double t) { return f(t).real(); }, a, b, 8, tol, &er);
        double im = gauss_kronrod<double, 31>::integrate([&](double t) { return f(t).imag(); }, a, b, 8, tol, &ei);
        total += cd(re, im);
        err += er + ei;
    }
    return total;
}

// Upper bound for int_T^inf v^{g-1} e^{-v} dv.
double upper_gamma_bound(double g, double T) {
    if (g <= 1.0) return std::pow(T, g - 1.0) * std::exp(-T);
    if (T <= g - 1.0) return std::numeric_limits<double>::infinity();
    return std::pow(T, g - 1.0) * std::exp(-T) / (1.0 - (g - 1.0) / T);
}

}  // namespace

CDValue whittaker_W(const WhittakerQuery& q) {
    if (!(q.z > 0.0)) throw std::invalid_argument("whittaker_W: z must be positive");
    cd mu = q.mu;
    cd a = 0.5 - q.kappa + mu;
    if (a.real() <= 0.0) {
        mu = -mu;
        a = 0.5 - q.kappa + mu;
    }
    cd b = q.kappa - 0.5 + mu;
    const double z = q.z;
    cd pref = std::pow(cd(z), cd(q.kappa)) * std::exp(-z / 2.0);
    if (a.real() <= 0.0) {
        if (b == 0.0) return CDValue{pref, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(pref), true};
        throw std::invalid_argument("whittaker_W: parameters outside the supported region");
    }

    const double tol = tolerance(q.prec);
    const double tail_tol = tol / 4.0;
    const double ra = a.real(), rb = b.real(), rbp = std::max(rb, 0.0);

    // w -> +inf: |integrand| <= e^{-Re(a) w} (1 + 1/z)^{max(Re b, 0)} for w >= 0.
    double upper_factor = std::pow(1.0 + 1.0 / z, rbp);
    double W = std::max(1.0, std::log(upper_factor / (ra * tail_tol)) / ra);
    double upper_tail = upper_factor * std::exp(-ra * W) / ra;

    // w -> -inf, v = e^{-w} > T >= z: (1 + v/z) <= 2v/z.
    double g = ra + rbp;
    double C = rbp > 0 ? std::pow(2.0 / z, rbp) : 1.0;
    double T = std::max({z, 1.0, 2.0 * (g - 1.0) + 1.0});
    while (C * upper_gamma_bound(g, T) > tail_tol) T *= 1.25;
    double L = std::log(T);
    double lower_tail = C * upper_gamma_bound(g, T);

    auto f = [&](double w) {
        double v = std::exp(-w);
        return std::exp(-a * w + b * std::log1p(v / z) - v);
    };
    double err = 0.0;
    cd integral = integrate_panels(f, -L, W, 4.0, tol, err);
    cd ga = cgamma(a);
    cd val = pref * integral / ga;
    double scale = std::abs(pref / ga);
    double rad = scale * (err + upper_tail + lower_tail) + 64.0 * std::numeric_limits<double>::epsilon() * std::abs(val);
    return CDValue{val, rad, true};
}

namespace {

struct XiPieces {
    cd factor;
    double factor_abs;
    CDValue w;
};

XiPieces xi_pieces(const XiQuery& q) {
    if (q.x == 0.0) throw std::invalid_argument("xi: x must be nonzero");
    const double pi = std::numbers::pi;
    const cd I(0.0, 1.0);
    cd s(0.0, q.s_im);
    double ax = std::fabs(q.x);
    cd phase = q.x > 0 ? std::exp(-I * pi * s / 2.0) - I * std::exp(I * pi * s / 2.0)
                       : std::exp(I * pi * s / 2.0) - I * std::exp(-I * pi * s / 2.0);
    cd gam = cgamma((q.x > 0 ? 0.25 : 0.75) + s / 2.0);
    cd factor = phase * std::pow(cd(2.0), -0.5 + s / 2.0) * std::pow(cd(2.0 * pi * ax), -0.5 - s / 2.0) * gam;
    CDValue w = whittaker_W({q.x > 0 ? 0.25 : -0.25, s / 2.0, 4.0 * pi * ax, q.prec});
    return {factor, std::abs(factor), w};
}

}  // namespace

CDValue xi_closed_form(const XiQuery& q) {
    XiPieces p = xi_pieces(q);
    cd v = p.factor * p.w.mid;
    double rad = p.factor_abs * p.w.rad + 1e-14 * std::abs(v);
    return CDValue{v, rad, p.w.converged};
}

XiQuadratureReport xi_quadrature(const XiQuery& q, double eps0, int levels) {
    if (q.x == 0.0) throw std::invalid_argument("xi_quadrature: x must be nonzero");
    if (!(eps0 > 0.0) || levels < 2) throw std::invalid_argument("xi_quadrature: bad regulator sequence");
    const double pi = std::numbers::pi;
    const double tol = std::max(tolerance(q.prec), 1e-12);
    const cd I(0.0, 1.0);
    cd s(0.0, q.s_im);
    XiQuadratureReport rep;
    double panel = std::min(1.0, 0.25 / std::fabs(q.x));
    for (int k = 0; k < levels; ++k) {
        double eps = eps0 / std::ldexp(1.0, k);
        // tail beyond U: int_U^inf e^{-eps u^2} / u du <= e^{-eps U^2} / (2 eps U^2) < tol / 10
        double U = 1.0;
        while (std::exp(-eps * U * U) / (2.0 * eps * U * U) >= tol / 10.0) U *= 1.1;
        auto f = [&](double u) {
            double l = std::log1p(u * u);
            double half_arg = std::atan2(-1.0, u) / 2.0;
            return std::exp(-(1.0 - s) / 2.0 * l + I * half_arg - 2.0 * pi * I * u * q.x - eps * u * u);
        };
        double err = 0.0;
        cd v = integrate_panels(f, -U, U, panel, tol, err);
        rep.regulators.push_back(eps);
        rep.raw.push_back(v);
    }
    // Richardson in eps with ratio 2: the regulated value is a Gaussian
    // smoothing of xi, with an expansion in integer powers of eps.
    std::vector<cd> row = rep.raw;
    std::vector<cd> diag{row.front()};
    for (int j = 1; j < levels; ++j) {
        double f = std::ldexp(1.0, j);
        std::vector<cd> next;
        for (size_t i = 0; i + 1 < row.size(); ++i) next.push_back((f * row[i + 1] - row[i]) / (f - 1.0));
        row = std::move(next);
        diag.push_back(row.front());
    }
    cd best = diag.back();
    double est = std::abs(diag.back() - diag[diag.size() - 2]);
    rep.value = CDValue{best, est, est <= 1e-3 * std::abs(best)};
    return rep;
}

DValue whittaker_density(double x, double s_im) {
    CDValue xi = xi_closed_form({x, s_im, 64});
    double m = std::abs(xi.mid);
    double v = m * m / std::numbers::pi;
    double rad = (2.0 * m * xi.rad + xi.rad * xi.rad) / std::numbers::pi;
    return DValue{v, rad};
}

}  // namespace artifact
