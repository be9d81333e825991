#include "prolatekit/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace prolatekit::specfun {

namespace {

constexpr double kEps = 1.0e-16;
constexpr double kFpMin = 1.0e-300;
constexpr int kMaxIter = 40000;

bool is_integer(double x) { return x == std::floor(x); }

// Ascending power series.  Only called when the terms decay without
// significant cancellation (x <= 2 or x^2 <= 2(nu+1)).
double series_j(double nu, double x) {
  const double xh = 0.5 * x;
  const double lpref = nu * std::log(xh) - std::lgamma(nu + 1.0);
  if (lpref < -700.0) return 0.0;  // underflow, value below 1e-300
  const double x24 = xh * xh;
  double term = 1.0, sum = 1.0;
  for (int m = 1; m < 1000; ++m) {
    term *= -x24 / (m * (nu + m));
    sum += term;
    if (std::abs(term) <= kEps * std::abs(sum)) break;
  }
  return std::exp(lpref) * sum;
}

// Steed's method: CF1 for J'_nu/J_nu, downward recurrence to mu close to x,
// CF2 (complex) plus the Wronskian for the normalization.  Valid for
// nu >= 0, x >= 2.
double steed_j(double nu, double x) {
  const int nl = std::max(0, static_cast<int>(nu - x + 1.5));
  const double mu = nu - nl;
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;
  const double w = xi2 / M_PI;

  // CF1
  int isign = 1;
  double h = nu * xi;
  if (h < kFpMin) h = kFpMin;
  double b = xi2 * nu, d = 0.0, c = h;
  int i = 1;
  for (; i <= kMaxIter; ++i) {
    b += xi2;
    d = b - d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = b - 1.0 / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = c * d;
    h *= del;
    if (d < 0.0) isign = -isign;
    if (std::abs(del - 1.0) <= kEps) break;
  }
  if (i > kMaxIter)
    throw std::runtime_error("bessel_j: CF1 failed to converge");

  double rjl = isign * kFpMin;
  double rjpl = h * rjl;
  const double rjl1 = rjl;
  double fact = nu * xi;
  for (int l = nl; l >= 1; --l) {
    const double rjtemp = fact * rjl + rjpl;
    fact -= xi;
    rjpl = fact * rjtemp - rjl;
    rjl = rjtemp;
  }
  if (rjl == 0.0) rjl = kEps;
  const double f = rjpl / rjl;

  // CF2 at order mu
  double a = 0.25 - mu * mu;
  double p = -0.5 * xi, q = 1.0;
  double br = 2.0 * x, bi = 2.0;
  fact = a * xi / (p * p + q * q);
  double cr = br + q * fact, ci = bi + p * fact;
  double den = br * br + bi * bi;
  double dr = br / den, di = -bi / den;
  double dlr = cr * dr - ci * di;
  double dli = cr * di + ci * dr;
  double temp = p * dlr - q * dli;
  q = p * dli + q * dlr;
  p = temp;
  for (i = 2; i <= kMaxIter; ++i) {
    a += 2 * (i - 1);
    bi += 2.0;
    dr = a * dr + br;
    di = a * di + bi;
    if (std::abs(dr) + std::abs(di) < kFpMin) dr = kFpMin;
    fact = a / (cr * cr + ci * ci);
    cr = br + cr * fact;
    ci = bi - ci * fact;
    if (std::abs(cr) + std::abs(ci) < kFpMin) cr = kFpMin;
    den = dr * dr + di * di;
    dr /= den;
    di = -di / den;
    dlr = cr * dr - ci * di;
    dli = cr * di + ci * dr;
    temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    if (std::abs(dlr - 1.0) + std::abs(dli) <= kEps) break;
  }
  if (i > kMaxIter)
    throw std::runtime_error("bessel_j: CF2 failed to converge");

  const double gam = (p - f) / q;
  double rjmu = std::sqrt(w / ((p - f) * gam + q));
  rjmu = std::copysign(rjmu, rjl);
  return rjl1 * (rjmu / rjl);
}

// Amplitude/phase (Hankel) asymptotic expansion, x >> nu:
//   J_nu(x) = sqrt(2/(pi x)) [P cos w - Q sin w],  w = x - nu pi/2 - pi/4,
// with P, Q the even/odd partial sums of a_k(nu)/x^k, a_k built from
// (4 nu^2 - 1^2)(4 nu^2 - 3^2)...  The series terms shrink like k/(2x), so
// for x >= 25 and 3 nu^2 <= x the optimal truncation is far below 1e-15.
double asymptotic_j(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0;
  double term = 1.0;
  for (int k = 1; k <= 40; ++k) {
    const double num = mu - (2.0 * k - 1.0) * (2.0 * k - 1.0);
    term *= num / (k * 8.0 * x);
    const double contrib = ((k / 2) % 2 == 0) ? term : -term;
    if (k % 2 == 1)
      q += contrib;
    else
      p += contrib;
    if (std::abs(term) < 1e-18) break;
  }
  const double w = x - nu * M_PI_2 - M_PI_4;
  return std::sqrt(2.0 / (M_PI * x)) * (p * std::cos(w) - q * std::sin(w));
}

double bessel_j_nonneg(double nu, double x) {
  // nu >= 0, x > 0
  if (x <= 2.0 || x * x <= 2.0 * (nu + 1.0)) return series_j(nu, x);
  if (x >= 25.0 && 3.0 * nu * nu <= x) return asymptotic_j(nu, x);
  return steed_j(nu, x);
}

}  // namespace

double bessel_j(double alpha, double x) {
  if (!std::isfinite(alpha) || !std::isfinite(x))
    throw std::domain_error("bessel_j: non-finite argument");

  if (x < 0.0) {
    if (!is_integer(alpha))
      throw std::domain_error(
          "bessel_j: negative argument requires integer order");
    const int n = static_cast<int>(alpha);
    const double v = bessel_j(std::abs(alpha), -x);
    return (n % 2 == 0) ? v : -v;
  }

  if (x == 0.0) {
    if (alpha == 0.0) return 1.0;
    if (alpha > 0.0) return 0.0;
    if (is_integer(alpha)) return 0.0;
    throw std::domain_error(
        "bessel_j: negative non-integer order requires x > 0");
  }

  if (alpha >= 0.0) {
    const double v = bessel_j_nonneg(alpha, x);
    if (!std::isfinite(v))
      throw std::overflow_error("bessel_j: overflow at order " +
                                std::to_string(alpha));
    return v;
  }

  // Negative order.
  if (is_integer(alpha)) {
    const int n = static_cast<int>(-alpha);
    const double v = bessel_j_nonneg(-alpha, x);
    return (n % 2 == 0) ? v : -v;
  }

  // Downward recurrence J_{nu-1} = (2 nu / x) J_nu - J_{nu+1}, stable in
  // this direction, starting from the first non-negative orders.
  const int m = static_cast<int>(std::ceil(-alpha));
  double jp1 = bessel_j_nonneg(alpha + m + 1, x);
  double j0 = bessel_j_nonneg(alpha + m, x);
  for (int i = m; i >= 1; --i) {
    const double jm1 = (2.0 * (alpha + i) / x) * j0 - jp1;
    jp1 = j0;
    j0 = jm1;
  }
  if (!std::isfinite(j0))
    throw std::overflow_error("bessel_j: overflow at negative order");
  return j0;
}

std::vector<double> bessel_j_sequence(double nu0, std::size_t count,
                                      double x) {
  if (nu0 < 0.0) throw std::domain_error("bessel_j_sequence: nu0 < 0");
  if (x < 0.0) throw std::domain_error("bessel_j_sequence: x < 0");
  if (count == 0) return {};
  std::vector<double> out(count);
  if (x == 0.0) {
    for (std::size_t k = 0; k < count; ++k)
      out[k] = (nu0 + static_cast<double>(k) == 0.0) ? 1.0 : 0.0;
    return out;
  }
  if (count == 1) {
    out[0] = bessel_j(nu0, x);
    return out;
  }

  const double nu_top = nu0 + static_cast<double>(count - 1);
  double top = bessel_j(nu_top, x);
  double above = bessel_j(nu_top + 1.0, x);
  if (std::abs(top) > 1e-280 || std::abs(above) > 1e-280) {
    // Direct downward recurrence from accurate seeds.
    out[count - 1] = top;
    double jp1 = above, j0 = top;
    for (std::size_t k = count - 1; k >= 1; --k) {
      const double nu = nu0 + static_cast<double>(k);
      const double jm1 = (2.0 * nu / x) * j0 - jp1;
      jp1 = j0;
      j0 = jm1;
      out[k - 1] = j0;
    }
    return out;
  }

  // Miller run: arbitrary tiny seed well above the requested range,
  // normalized against one directly evaluated element.
  const std::size_t pad = 20;
  double jp1 = 0.0, j0 = kFpMin;
  for (std::size_t k = count + pad; k > count; --k) {
    const double nu = nu0 + static_cast<double>(k);
    const double jm1 = (2.0 * nu / x) * j0 - jp1;
    jp1 = j0;
    j0 = jm1;
  }
  double scale_log = 0.0;  // log of the applied rescaling
  std::vector<double> raw(count);
  std::vector<double> raw_scale(count, 0.0);
  raw[count - 1] = j0;
  raw_scale[count - 1] = scale_log;
  for (std::size_t k = count - 1; k >= 1; --k) {
    const double nu = nu0 + static_cast<double>(k);
    double jm1 = (2.0 * nu / x) * j0 - jp1;
    if (std::abs(jm1) > 1e250) {
      jm1 *= 1e-250;
      j0 *= 1e-250;
      scale_log += 250.0 * std::log(10.0);
    }
    jp1 = j0;
    j0 = jm1;
    raw[k - 1] = j0;
    raw_scale[k - 1] = scale_log;
  }
  // Anchor at the largest-magnitude element (always at the lowest scale
  // level reached, i.e. the final one).
  std::size_t anchor = 0;
  for (std::size_t k = 1; k < count; ++k)
    if (raw_scale[k] == scale_log &&
        std::abs(raw[k]) > std::abs(raw[anchor]))
      anchor = k;
  const double ref = bessel_j(nu0 + static_cast<double>(anchor), x);
  const double factor = ref / raw[anchor];
  for (std::size_t k = 0; k < count; ++k) {
    const double ls = raw_scale[k] - scale_log;
    out[k] = (ls < -600.0) ? 0.0 : raw[k] * factor * std::exp(ls);
  }
  return out;
}

double legendre_p(int n, double x) {
  if (n < 0) throw std::domain_error("legendre_p: n < 0");
  if (n == 0) return 1.0;
  double pm1 = 1.0, p = x;
  for (int k = 1; k < n; ++k) {
    const double pp1 = ((2 * k + 1) * x * p - k * pm1) / (k + 1);
    pm1 = p;
    p = pp1;
  }
  return p;
}

double jacobi_p(int n, double alpha, double x) {
  if (n < 0) throw std::domain_error("jacobi_p: n < 0");
  if (alpha <= -1.0) throw std::domain_error("jacobi_p: alpha <= -1");
  if (n == 0) return 1.0;
  double pm1 = 1.0;
  double p = (alpha + 1.0) + 0.5 * (alpha + 2.0) * (x - 1.0);
  for (int k = 2; k <= n; ++k) {
    // Three-term recurrence for P_k^{(alpha,0)}.
    const double a1 = 2.0 * k * (k + alpha) * (2.0 * k + alpha - 2.0);
    const double a2 = (2.0 * k + alpha - 1.0) * alpha * alpha;
    const double a3 = (2.0 * k + alpha - 1.0) * (2.0 * k + alpha) *
                      (2.0 * k + alpha - 2.0);
    const double a4 = 2.0 * (k + alpha - 1.0) * (k - 1.0) * (2.0 * k + alpha);
    const double pp1 = ((a2 + a3 * x) * p - a4 * pm1) / a1;
    pm1 = p;
    p = pp1;
  }
  return p;
}

double ln_gamma(double x) {
  if (!(x > 0.0))
    throw std::domain_error("ln_gamma: requires x > 0");
  return std::lgamma(x);
}

}  // namespace prolatekit::specfun
