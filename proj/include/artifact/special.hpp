#pragma once

#include <complex>
#include <vector>

#include "artifact/ball.hpp"

namespace artifact {

// I_{3/2}(x) = sqrt(2/(pi x)) (cosh x - sinh x / x). Throws std::domain_error
// unless x is certified positive.
Ball bessel_I_3_2(const Ball& x);
Ball bessel_I_3_2(double x, mpfr_prec_t prec);

// Double-precision value with an error estimate. For the Whittaker and xi
// routines the radius is a quadrature estimate plus certified tail bounds,
// not a rigorous enclosure of the rounding error.
struct CDValue {
    std::complex<double> mid;
    double rad = 0.0;
    bool converged = true;
};

struct DValue {
    double mid = 0.0;
    double rad = 0.0;
};

// Lanczos (g = 7, n = 9); relative error near 1e-15 for Re z > 0, reflection otherwise.
std::complex<double> cgamma(std::complex<double> z);

struct WhittakerQuery {
    double kappa;
    std::complex<double> mu;
    double z;
    int prec = 64;  // target tolerance max(2^-prec, 1e-14)
};

// W_{kappa,mu}(z) from the integral over t in (0, inf), rewritten with
// t = e^{-w}/z. Uses mu -> -mu when Re(1/2 - kappa + mu) <= 0.
CDValue whittaker_W(const WhittakerQuery& q);

struct XiQuery {
    double x;
    double s_im;  // s = i * s_im
    int prec = 64;
};

// Closed form via W_{+-1/4, s/2}(4 pi |x|). Throws std::invalid_argument for x = 0.
CDValue xi_closed_form(const XiQuery& q);

struct XiQuadratureReport {
    CDValue value;
    std::vector<std::complex<double>> raw;  // one per regulator
    std::vector<double> regulators;
};

// Regulated integral with e^{-eps u^2}, eps = eps0 / 2^k, k < levels,
// followed by Richardson extrapolation in eps.
XiQuadratureReport xi_quadrature(const XiQuery& q, double eps0 = 0.08, int levels = 5);

// |xi(x)|^2 / pi from the closed form.
DValue whittaker_density(double x, double s_im);

}  // namespace artifact
