#pragma once

namespace rfcw {

// Cramer entropy of a fair +-1 coin: I0(x) = ((1+x)/2)ln(1+x) +
// ((1-x)/2)ln(1-x); ln 2 at |x| = 1, +infinity beyond.
double cramer_entropy(double x);

// Closed-form rate function for a constant field h:
// I(x) = I0(x) - beta x^2/2 - beta h x - inf over y of the same bracket.
double classical_rate(double x, double beta, double h);

// Closed-form rate function for the symmetric (alpha = 1/2) dichotomous
// field, via arsinh with a = sinh(2 beta h), b = cosh(2 beta h).
double dichotomous_rate(double x, double beta, double h);

// dilog(z) = sum_{n>=1} z^n / n^2 for |z| <= 1, to 1e-14 absolute.
// Direct series for |z| <= 1/2; reflection/Landen identities otherwise.
double dilog(double z);

// G(x) = beta x^2/2 - f(beta x) for the Uniform[-h,h] field law, written
// through the dilogarithm antiderivative; independent of the quadrature
// path and used as its oracle.
double uniform_G(double x, double beta, double h);

}  // namespace rfcw
