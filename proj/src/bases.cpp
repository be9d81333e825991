#include "prolatekit/bases.hpp"

#include <cmath>
#include <stdexcept>

#include "prolatekit/specfun.hpp"

namespace prolatekit::bases {

using specfun::bessel_j;
using specfun::bessel_j_sequence;

double spherical_j(int n, Bandwidth c, double x) {
  if (n < 0) throw std::domain_error("spherical_j: n < 0");
  const double sgn = (x < 0.0 && n % 2 == 1) ? -1.0 : 1.0;
  const double ax = std::abs(x);
  const double norm = std::sqrt((2.0 * n + 1.0) / 2.0);
  if (ax < 1e-8) {
    // Limit through the leading series term of J_{n+1/2}(c x) / sqrt(x).
    if (n == 0) return std::sqrt(c.c / M_PI) * (1.0 - c.c * c.c * x * x / 6.0);
    const double l = (n + 0.5) * std::log(0.5 * c.c * ax) -
                     std::lgamma(n + 1.5) - 0.5 * std::log(ax);
    return (ax == 0.0 || l < -700.0) ? 0.0 : sgn * norm * std::exp(l);
  }
  return sgn * norm * bessel_j(n + 0.5, c.c * ax) / std::sqrt(ax);
}

std::vector<double> spherical_j_all(int K, Bandwidth c, double x) {
  if (K < 1) throw std::domain_error("spherical_j_all: K < 1");
  std::vector<double> out(K);
  const double ax = std::abs(x);
  if (ax < 1e-8) {
    for (int n = 0; n < K; ++n) out[n] = spherical_j(n, c, x);
    return out;
  }
  const std::vector<double> js =
      bessel_j_sequence(0.5, static_cast<std::size_t>(K), c.c * ax);
  const double rs = 1.0 / std::sqrt(ax);
  for (int n = 0; n < K; ++n) {
    const double sgn = (x < 0.0 && n % 2 == 1) ? -1.0 : 1.0;
    out[n] = sgn * std::sqrt((2.0 * n + 1.0) / 2.0) * js[n] * rs;
  }
  return out;
}

double spherical_j_hankel(int n, Order alpha, Bandwidth c, double x) {
  if (n < 0) throw std::domain_error("spherical_j_hankel: n < 0");
  if (!(x > 0.0)) throw std::domain_error("spherical_j_hankel: x <= 0");
  const double nu = 2.0 * n + alpha.alpha + 1.0;
  return std::sqrt(2.0 * nu) * bessel_j(nu, c.c * x) / std::sqrt(x);
}

std::vector<double> spherical_j_hankel_all(int K, Order alpha, Bandwidth c,
                                           double x) {
  if (K < 1) throw std::domain_error("spherical_j_hankel_all: K < 1");
  if (!(x > 0.0)) throw std::domain_error("spherical_j_hankel_all: x <= 0");
  // Orders alpha+1, alpha+2, ..., alpha+2K-1; every second one is used.
  const std::vector<double> js = bessel_j_sequence(
      alpha.alpha + 1.0, static_cast<std::size_t>(2 * K - 1), c.c * x);
  std::vector<double> out(K);
  const double rs = 1.0 / std::sqrt(x);
  for (int n = 0; n < K; ++n) {
    const double nu = 2.0 * n + alpha.alpha + 1.0;
    out[n] = std::sqrt(2.0 * nu) * js[2 * n] * rs;
  }
  return out;
}

double fourier_image_j(int n, Bandwidth c, double xi) {
  if (n < 0) throw std::domain_error("fourier_image_j: n < 0");
  if (std::abs(xi) > c.c) return 0.0;
  return std::sqrt((2.0 * n + 1.0) / (2.0 * c.c)) *
         specfun::legendre_p(n, xi / c.c);
}

std::complex<double> fourier_image_phase(int n) {
  // i^{-n}; verified numerically against Fourier quadrature of j_{n,c}.
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

double hankel_image_j(int n, Order alpha, Bandwidth c, double x) {
  if (n < 0) throw std::domain_error("hankel_image_j: n < 0");
  if (!(x > 0.0)) throw std::domain_error("hankel_image_j: x <= 0");
  if (x > c.c) return 0.0;
  const double t = x / c.c;
  return std::sqrt(2.0 * (2.0 * n + alpha.alpha + 1.0) / c.c) *
         std::pow(t, alpha.alpha + 0.5) *
         specfun::jacobi_p(n, alpha.alpha, 1.0 - 2.0 * t * t);
}

ConcentrationFactor time_limited_factor(Family family, Order alpha,
                                        Bandwidth c, int K) {
  if (K < 1) throw std::domain_error("time_limited_factor: K < 1");
  const double a = (family == Family::Fourier) ? -1.0 : 0.0;
  const double len = 1.0 - a;
  const int design_degree = 2 * K + static_cast<int>(std::ceil(2.0 * c.c)) + 20;
  const int pts = 12;
  int panels = static_cast<int>(len * design_degree / (2.0 * pts - 1.0)) + 2;
  {
    // also resolve the oscillation of the highest basis element
    const int osc = static_cast<int>(
        std::ceil(len * c.c * 8.0 / (2.0 * M_PI * pts)));
    if (osc + 1 > panels) panels = osc + 1;
  }
  ConcentrationFactor out;
  out.rule = quad::composite_gauss(a, 1.0, panels, pts);
  const int Q = static_cast<int>(out.rule.nodes.size());
  out.X.resize(Q, K);
  for (int q = 0; q < Q; ++q) {
    const std::vector<double> col =
        (family == Family::Fourier)
            ? spherical_j_all(K, c, out.rule.nodes[q])
            : spherical_j_hankel_all(K, alpha, c, out.rule.nodes[q]);
    const double sw = std::sqrt(out.rule.weights[q]);
    for (int k = 0; k < K; ++k) out.X(q, k) = sw * col[k];
  }
  return out;
}

Eigen::MatrixXd gram_time_limited(Family family, Order alpha, Bandwidth c,
                                  int K) {
  const ConcentrationFactor f = time_limited_factor(family, alpha, c, K);
  Eigen::MatrixXd A = f.X.transpose() * f.X;
  if (family == Family::Fourier) {
    // Parity kills odd k+m on the symmetric interval.
    for (int k = 0; k < K; ++k)
      for (int m = 0; m < K; ++m)
        if ((k + m) % 2 == 1) A(k, m) = 0.0;
  }
  A = 0.5 * (A + A.transpose()).eval();
  return A;
}

namespace detail {

double bessel_cross_tail(double nu, double mu, double T) {
  // d/dt [t (J_nu' J_mu - J_nu J_mu')] = (nu^2 - mu^2) J_nu J_mu / t, and
  // the antiderivative tends to (2/pi) sin((nu-mu) pi/2) at infinity.
  if (!(T > 0.0)) throw std::domain_error("bessel_cross_tail: T <= 0");
  if (nu == mu) return bessel_square_tail(nu, T);
  const double jn = bessel_j(nu, T), jm = bessel_j(mu, T);
  const double jnp = 0.5 * (bessel_j(nu - 1.0, T) - bessel_j(nu + 1.0, T));
  const double jmp = 0.5 * (bessel_j(mu - 1.0, T) - bessel_j(mu + 1.0, T));
  const double W = T * (jnp * jm - jn * jmp);
  const double Winf = (2.0 / M_PI) * std::sin(0.5 * (nu - mu) * M_PI);
  return (Winf - W) / (nu * nu - mu * mu);
}

double bessel_square_tail(double nu, double T) {
  // d/dT [J_nu^2 + 2 sum_{k>=1} J_{nu+k}^2] = 2 nu J_nu^2 / T, and the
  // bracket increases from 0 to 1.
  if (!(T > 0.0)) throw std::domain_error("bessel_square_tail: T <= 0");
  if (!(nu > 0.0)) throw std::domain_error("bessel_square_tail: nu <= 0");
  const std::size_t count =
      static_cast<std::size_t>(T + 12.0 * std::cbrt(T) + 40.0);
  const std::vector<double> js = bessel_j_sequence(nu, count, T);
  double S = js[0] * js[0];
  for (std::size_t k = 1; k < js.size(); ++k) S += 2.0 * js[k] * js[k];
  return (1.0 - S) / (2.0 * nu);
}

}  // namespace detail

Eigen::MatrixXd gram_full_line(Family family, Order alpha, Bandwidth c,
                               int K) {
  if (K < 1) throw std::domain_error("gram_full_line: K < 1");
  const double nu_max = (family == Family::Fourier)
                            ? (K - 1) + 0.5
                            : 2.0 * (K - 1) + alpha.alpha + 1.0;
  const double R = (nu_max + 10.0) / c.c + 5.0;
  const quad::QuadratureRule rule = quad::oscillatory_rule(
      0.0, R, 2.0 * c.c, std::max(8, 2 * K), 12);

  Eigen::MatrixXd J(K, static_cast<int>(rule.nodes.size()));
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const std::vector<double> col =
        (family == Family::Fourier)
            ? spherical_j_all(K, c, rule.nodes[q])
            : spherical_j_hankel_all(K, alpha, c, rule.nodes[q]);
    for (int k = 0; k < K; ++k) J(k, static_cast<int>(q)) = col[k];
  }
  Eigen::VectorXd w(static_cast<int>(rule.nodes.size()));
  for (std::size_t q = 0; q < rule.nodes.size(); ++q)
    w(static_cast<int>(q)) = rule.weights[q];
  Eigen::MatrixXd A = J * w.asDiagonal() * J.transpose();

  const double fam = (family == Family::Fourier) ? 2.0 : 1.0;
  for (int k = 0; k < K; ++k) {
    for (int m = k; m < K; ++m) {
      if (family == Family::Fourier && (k + m) % 2 == 1) {
        A(k, m) = A(m, k) = 0.0;
        continue;
      }
      double nk, nm, nuk, num;
      if (family == Family::Fourier) {
        nuk = k + 0.5;
        num = m + 0.5;
        nk = std::sqrt((2.0 * k + 1.0) / 2.0);
        nm = std::sqrt((2.0 * m + 1.0) / 2.0);
      } else {
        nuk = 2.0 * k + alpha.alpha + 1.0;
        num = 2.0 * m + alpha.alpha + 1.0;
        nk = std::sqrt(2.0 * nuk);
        nm = std::sqrt(2.0 * num);
      }
      const double tail = detail::bessel_cross_tail(nuk, num, c.c * R);
      const double v = fam * (0.5 * (A(k, m) + A(m, k)) + nk * nm * tail);
      A(k, m) = A(m, k) = v;
    }
  }
  return A;
}

namespace {

// 1 / Gamma(x), zero at the poles.
double rgamma(double x) {
  if (x > 0.5) return std::exp(-std::lgamma(x));
  return std::sin(M_PI * x) * std::exp(std::lgamma(1.0 - x)) / M_PI;
}

}  // namespace

LpNormResult lp_norm_bessel(int n, double p, Family family, Order alpha,
                            Bandwidth c) {
  if (n < 0) throw std::domain_error("lp_norm_bessel: n < 0");
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::domain_error("lp_norm_bessel: p must be in (1, inf)");
  const double nu = (family == Family::Fourier)
                        ? n + 0.5
                        : 2.0 * n + alpha.alpha + 1.0;
  const double mu = 4.0 * nu * nu;

  // Quadrature window: past the turning point nu/c, and far enough out that
  // the modulus/phase asymptotics of J_nu close the tail to certified
  // accuracy.  The window doubles until the truncation estimate clears the
  // 1e-8 gate.
  const double R1 = std::max(20.0, 3.0 * nu / c.c + 40.0 / c.c);
  LpNormResult res;
  for (int attempt = 0; attempt < 5; ++attempt) {
  const double R2 = std::max(
      R1, std::max(160.0, 32.0 * nu) * std::pow(2.0, attempt) / c.c);
  const double z2 = c.c * R2;
  const int pts = 12;
  const int panels = static_cast<int>(std::ceil(z2 / M_PI * 10.0)) + 4;
  const quad::QuadratureRule rule = quad::composite_gauss(0.0, R2, panels, pts);
  double integral = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double x = rule.nodes[q];
    const double g = std::abs(bessel_j(nu, c.c * x)) / std::sqrt(x);
    integral += rule.weights[q] * std::pow(g, p);
  }

  // Tail of int_R2^inf x^{-p/2 p} |J_nu(cx)|^p via J = sqrt(2/(pi z)) M
  // cos(theta): |cos|^p = m_p + sum_k c_k cos(2k theta), with the slowly
  // varying parts integrated analytically and the oscillatory modes reduced
  // to boundary terms by integration by parts.
  const double pref = std::pow(2.0 / (M_PI * c.c), 0.5 * p);
  const double mp = std::exp(std::lgamma(0.5 * (p + 1.0)) -
                             std::lgamma(0.5 * p + 1.0)) /
                    std::sqrt(M_PI);
  const double a1 = (mu - 1.0) / 8.0;
  const double a2 = 3.0 * (mu - 1.0) * (mu - 9.0) / 128.0;
  const double C2 = 0.5 * p * a1;
  const double C4 = 0.5 * p * a2 + p * (p - 2.0) / 8.0 * a1 * a1;
  const double mean_tail =
      mp * (std::pow(R2, 1.0 - p) / (p - 1.0) +
            C2 / (c.c * c.c) * std::pow(R2, -1.0 - p) / (p + 1.0) +
            C4 / std::pow(c.c, 4) * std::pow(R2, -3.0 - p) / (p + 3.0));
  const double mean_err = mp * std::pow(R2, 1.0 - p) / (p - 1.0) * 5.0 *
                          std::pow(mu / (4.0 * z2 * z2), 3);

  const double theta = z2 - (0.5 * nu + 0.25) * M_PI + (mu - 1.0) / (8.0 * z2) +
                       (mu - 1.0) * (mu - 25.0) / (384.0 * z2 * z2 * z2);
  const double theta_err =
      std::pow(mu, 3) / (128.0 * std::pow(z2, 5)) + 1e-13;
  const double thetap = c.c * (1.0 + (mu - 1.0) / (8.0 * z2 * z2));
  const double fR = std::pow(R2, -p) * (1.0 + C2 / (z2 * z2));
  const double fpR = -p * std::pow(R2, -p - 1.0);
  double osc = 0.0, osc_err = 0.0;
  for (int k = 1; k <= 8; ++k) {
    const double ck = std::pow(2.0, 1.0 - p) * std::exp(std::lgamma(p + 1.0)) *
                      rgamma(1.0 + 0.5 * p + k) * rgamma(1.0 + 0.5 * p - k);
    if (ck == 0.0) continue;
    const double wk = 2.0 * k * thetap;
    osc += ck * (-fR * std::sin(2.0 * k * theta) / wk -
                 fpR * std::cos(2.0 * k * theta) / (wk * wk));
    osc_err += std::abs(ck) *
               (2.0 * p * (p + 1.0) * std::pow(R2, -p - 2.0) /
                    (wk * wk * wk) +
                fR / wk * (2.0 * k * theta_err + mu / (8.0 * z2 * z2)));
  }

  const double fam_factor = (family == Family::Fourier) ? 2.0 : 1.0;
  const double total = fam_factor * (integral + pref * (mean_tail + osc));
  const double err_power = fam_factor * pref * (mean_err + osc_err);
  res.value = std::pow(total, 1.0 / p);
  res.tail_estimate = res.value * err_power / (p * total);
  res.domain_cut = R2;
  if (res.tail_estimate <= 0.9e-8 * res.value) return res;
  }
  if (!(res.tail_estimate <= 1e-8 * res.value))
    throw std::runtime_error("lp_norm_bessel: tail bound failure");
  return res;
}

double fit_loglog_slope(const std::vector<double>& x,
                        const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_loglog_slope: bad input");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace prolatekit::bases
