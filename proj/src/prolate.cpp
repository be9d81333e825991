#include "prolatekit/prolate.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace prolatekit::prolate {

namespace {

struct Decomposition {
  Eigen::MatrixXd B;
  Eigen::VectorXd lambdas;
};

// Band-side differential operator commuting with the Fourier concentration
// problem, in the normalized Legendre basis: d/du[(1-u^2) d/du] - c^2 u^2.
// Pentadiagonal; its eigenvectors give the b_k^n for every n, including the
// range where the concentration eigenvalues underflow.
Eigen::MatrixXd commuting_fourier(double c, int K) {
  auto a = [](int k) {
    return (k + 1.0) / std::sqrt((2.0 * k + 1.0) * (2.0 * k + 3.0));
  };
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(K, K);
  for (int k = 0; k < K; ++k) {
    const double am = (k == 0) ? 0.0 : a(k - 1);
    M(k, k) = -static_cast<double>(k) * (k + 1.0) -
              c * c * (am * am + a(k) * a(k));
    if (k + 2 < K) {
      M(k, k + 2) = -c * c * a(k) * a(k + 1);
      M(k + 2, k) = M(k, k + 2);
    }
  }
  return M;
}

// Hankel analogue in the normalized Jacobi band basis: the Zernike-type
// operator d/dt[(1-t^2) d/dt] + (1/4 - alpha^2)/t^2 - c^2 t^2 is diagonal
// plus the tridiagonal matrix of t^2 = (1 - s)/2 under s = 1 - 2 t^2.
Eigen::MatrixXd commuting_hankel(double alpha, double c, int K) {
  auto ja = [alpha](int m) {
    // off-diagonal recurrence coefficient of orthonormal P_m^{(alpha,0)}
    return 2.0 * (m + 1.0) * (m + alpha + 1.0) /
           ((2.0 * m + alpha + 2.0) *
            std::sqrt((2.0 * m + alpha + 1.0) * (2.0 * m + alpha + 3.0)));
  };
  auto jb = [alpha](int m) {
    if (m == 0) return -alpha / (alpha + 2.0);
    return -alpha * alpha /
           ((2.0 * m + alpha) * (2.0 * m + alpha + 2.0));
  };
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(K, K);
  for (int m = 0; m < K; ++m) {
    const double nu = 2.0 * m + alpha;
    M(m, m) = -(nu + 0.5) * (nu + 1.5) - c * c * 0.5 * (1.0 - jb(m));
    if (m + 1 < K) {
      M(m, m + 1) = c * c * 0.5 * ja(m);
      M(m + 1, m) = M(m, m + 1);
    }
  }
  return M;
}

void sign_normalize(Eigen::MatrixXd& B) {
  for (int n = 0; n < B.cols(); ++n) {
    int imax = 0;
    B.col(n).cwiseAbs().maxCoeff(&imax);
    if (B(imax, n) < 0.0) B.col(n) = -B.col(n);
  }
}

Decomposition decompose(const Eigen::MatrixXd& X,
                        const Eigen::MatrixXd& commuting,
                        bool fourier_phases) {
  const int K = static_cast<int>(X.cols());
  // Concentration eigenvalues from the SVD of the quadrature factor; below
  // roughly 1e-14 they underflow and the reported values are the numerical
  // spectrum of the discretized operator.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinV);
  Decomposition d;
  d.lambdas.resize(K);
  for (int n = 0; n < K; ++n) {
    const double s = svd.singularValues()(n);
    d.lambdas(n) = s * s;
  }
  for (int n = 0; n + 1 < K; ++n) {
    if (d.lambdas(n) > 1e-12 && d.lambdas(n + 1) > 1e-12 &&
        d.lambdas(n) - d.lambdas(n + 1) < 1e-13) {
      throw std::runtime_error(
          "prolate basis: near-degenerate concentration eigenvalues");
    }
  }
  // Coefficient columns from the commuting band-side operator, ordered from
  // its largest eigenvalue; for the Fourier family the i^{-k} phases of the
  // band images flip every second coefficient.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(commuting);
  d.B.resize(K, K);
  for (int n = 0; n < K; ++n) {
    d.B.col(n) = es.eigenvectors().col(K - 1 - n);
    if (fourier_phases) {
      for (int k = 2; k < K; k += 4) {
        d.B(k, n) = -d.B(k, n);
        if (k + 1 < K) d.B(k + 1, n) = -d.B(k + 1, n);
      }
    }
  }
  sign_normalize(d.B);
  return d;
}

DecayCertificate certify(const Eigen::MatrixXd& B, int K, int n0) {
  if (K < 30) throw std::domain_error("certify_decay: K < 30");
  DecayCertificate cert;
  cert.n0 = n0;
  const int nmax = K - 10;
  for (int n = n0; n <= nmax; ++n) {
    const double logn = std::log(static_cast<double>(n));
    cert.n_values.push_back(n);
    cert.b0_products.push_back(std::abs(B(0, n)) * n * n);
    double lsup = -1e300;
    for (int k = std::max(1, n - 10); k < std::min(K, n + 11); ++k) {
      const double ab = std::abs(B(k, n));
      // The sup runs over the offset window |k - n| <= 10 where coefficients
      // stay resolvable in double precision for the whole n range; entries
      // further out sit at the eigensolver noise floor and would only inject
      // platform-dependent noise times a huge weight.
      if (ab < 1e-12) continue;
      const double l = std::log(ab) + std::abs(k - n) * logn;
      if (l > lsup) lsup = l;
    }
    cert.bk_products.push_back(std::exp(std::min(lsup, 700.0)));
  }
  // Fit the constants on the lower half of the n range; the upper half must
  // be covered with at most 10% slack.
  const std::size_t half = cert.n_values.size() / 2;
  for (std::size_t i = 0; i < half; ++i) {
    cert.C0 = std::max(cert.C0, cert.b0_products[i]);
    cert.C1 = std::max(cert.C1, cert.bk_products[i]);
  }
  cert.pass = true;
  for (std::size_t i = 0; i < cert.n_values.size(); ++i) {
    if (cert.b0_products[i] > 1.1 * cert.C0 ||
        cert.bk_products[i] > 1.1 * cert.C1) {
      cert.pass = false;
    }
  }
  return cert;
}

void append_number(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

std::string serialize(const char* family, const double* alpha, double c,
                      int K, const Eigen::VectorXd& lambdas,
                      const Eigen::MatrixXd& B) {
  std::string out = "{\"family\":\"";
  out += family;
  out += "\",\"alpha\":";
  if (alpha == nullptr) {
    out += "null";
  } else {
    append_number(out, *alpha);
  }
  out += ",\"c\":";
  append_number(out, c);
  out += ",\"K\":" + std::to_string(K);
  out += ",\"lambdas\":[";
  for (int n = 0; n < K; ++n) {
    if (n) out += ',';
    append_number(out, lambdas(n));
  }
  out += "],\"B\":[";
  for (int k = 0; k < K; ++k) {
    out += (k ? ",[" : "[");
    for (int n = 0; n < K; ++n) {
      if (n) out += ',';
      append_number(out, B(k, n));
    }
    out += ']';
  }
  out += "]}";
  return out;
}

void parse_common(const nlohmann::json& j, const char* family, double& c,
                  int& K, Eigen::VectorXd& lambdas, Eigen::MatrixXd& B) {
  if (j.at("family").get<std::string>() != family)
    throw std::runtime_error("basis json: wrong family");
  c = j.at("c").get<double>();
  K = j.at("K").get<int>();
  const auto& jl = j.at("lambdas");
  const auto& jb = j.at("B");
  if (static_cast<int>(jl.size()) != K || static_cast<int>(jb.size()) != K)
    throw std::runtime_error("basis json: inconsistent dimensions");
  lambdas.resize(K);
  B.resize(K, K);
  for (int n = 0; n < K; ++n) lambdas(n) = jl.at(n).get<double>();
  for (int k = 0; k < K; ++k) {
    if (static_cast<int>(jb.at(k).size()) != K)
      throw std::runtime_error("basis json: inconsistent dimensions");
    for (int n = 0; n < K; ++n) B(k, n) = jb.at(k).at(n).get<double>();
  }
}

}  // namespace

int default_K(Bandwidth c) {
  return static_cast<int>(std::ceil(2.0 * c.c / M_PI)) + 40;
}

ProlateBasis build_prolate_basis(Bandwidth c, int K) {
  if (K < 4) throw std::domain_error("build_prolate_basis: K < 4");
  const bases::ConcentrationFactor f =
      bases::time_limited_factor(bases::Family::Fourier, Order{0.0}, c, K);
  Decomposition d = decompose(f.X, commuting_fourier(c.c, K), true);
  ProlateBasis basis{c, K, std::move(d.B), std::move(d.lambdas)};
  return basis;
}

CircularProlateBasis build_circular_prolate_basis(Order alpha, Bandwidth c,
                                                  int K) {
  if (K < 4) throw std::domain_error("build_circular_prolate_basis: K < 4");
  const bases::ConcentrationFactor f =
      bases::time_limited_factor(bases::Family::Hankel, alpha, c, K);
  Decomposition d =
      decompose(f.X, commuting_hankel(alpha.alpha, c.c, K), false);
  CircularProlateBasis basis{alpha, c, K, std::move(d.B), std::move(d.lambdas)};
  return basis;
}

double evaluate_psi(const ProlateBasis& basis, int n, double x) {
  if (n < 0 || n >= basis.K)
    throw std::domain_error("evaluate_psi: n out of range");
  const std::vector<double> j = bases::spherical_j_all(basis.K, basis.c, x);
  double s = 0.0;
  for (int k = 0; k < basis.K; ++k) s += basis.B(k, n) * j[k];
  return s;
}

double evaluate_phi(const CircularProlateBasis& basis, int n, double x) {
  if (n < 0 || n >= basis.K)
    throw std::domain_error("evaluate_phi: n out of range");
  const std::vector<double> j =
      bases::spherical_j_hankel_all(basis.K, basis.alpha, basis.c, x);
  double s = 0.0;
  for (int k = 0; k < basis.K; ++k) s += basis.B(k, n) * j[k];
  return s;
}

std::vector<double> evaluate_psi(const ProlateBasis& basis, int n,
                                 const std::vector<double>& xs) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    out[i] = evaluate_psi(basis, n, xs[i]);
  return out;
}

std::vector<double> evaluate_phi(const CircularProlateBasis& basis, int n,
                                 const std::vector<double>& xs) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    out[i] = evaluate_phi(basis, n, xs[i]);
  return out;
}

DecayCertificate certify_decay(const ProlateBasis& basis, int n0) {
  return certify(basis.B, basis.K, n0);
}

DecayCertificate certify_decay(const CircularProlateBasis& basis, int n0) {
  return certify(basis.B, basis.K, n0);
}

std::string to_json(const ProlateBasis& basis) {
  return serialize("fourier", nullptr, basis.c.c, basis.K, basis.lambdas,
                   basis.B);
}

std::string to_json(const CircularProlateBasis& basis) {
  return serialize("hankel", &basis.alpha.alpha, basis.c.c, basis.K,
                   basis.lambdas, basis.B);
}

ProlateBasis prolate_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  double c = 0.0;
  int K = 0;
  Eigen::VectorXd lambdas;
  Eigen::MatrixXd B;
  parse_common(j, "fourier", c, K, lambdas, B);
  return ProlateBasis{Bandwidth{c}, K, std::move(B), std::move(lambdas)};
}

CircularProlateBasis circular_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("alpha") || j.at("alpha").is_null())
    throw std::runtime_error("basis json: missing alpha");
  double c = 0.0;
  int K = 0;
  Eigen::VectorXd lambdas;
  Eigen::MatrixXd B;
  parse_common(j, "hankel", c, K, lambdas, B);
  return CircularProlateBasis{Order{j.at("alpha").get<double>()},
                              Bandwidth{c}, K, std::move(B),
                              std::move(lambdas)};
}

}  // namespace prolatekit::prolate
