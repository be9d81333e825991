// prolatekit: command-line front end for basis construction, projections,
// expansions, and diagnostic scans.  Exit codes: 0 success, 2 configuration
// error, 3 numerical failure, 4 I/O failure.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "CLI11.hpp"
#include "prolatekit/bases.hpp"
#include "prolatekit/expansions.hpp"
#include "prolatekit/prolate.hpp"
#include "prolatekit/sampled.hpp"
#include "prolatekit/transforms.hpp"

namespace {

using namespace prolatekit;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// FNV-1a over the canonical config string, printed in the provenance line
// so reports are self-describing and reruns are comparable.
std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string provenance(const std::string& config) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(config)));
  return "# prolatekit " + config + " config-hash=" + buf + "\n";
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

std::vector<double> parse_grid(const std::string& spec) {
  double a = 0.0, b = 0.0;
  long count = 0;
  char extra = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%ld%c", &a, &b, &count, &extra) !=
          3 ||
      count < 2 || !(b > a))
    throw ConfigError("bad grid spec (want a:b:count with b > a, count >= 2): " +
                      spec);
  return uniform_grid(a, b, static_cast<std::size_t>(count));
}

SampledFunction read_csv_function(const std::string& path, DomainTag tag) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input file: " + path);
  SampledFunction f;
  f.domain = tag;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    double x = 0.0, v = 0.0;
    if (std::sscanf(line.c_str(), "%lf,%lf", &x, &v) != 2)
      throw ConfigError("bad CSV row (want x,value): " + line);
    f.grid.push_back(x);
    f.values.push_back(v);
  }
  if (f.grid.size() < 4) throw ConfigError("input CSV has fewer than 4 rows");
  f.validate();
  return f;
}

SampledFunction sample_builtin_line(const std::function<double(double)>& g,
                                    double B, double h) {
  const std::size_t n = static_cast<std::size_t>(std::round(2.0 * B / h)) + 1;
  return sample(g, uniform_grid(-B, B, n), DomainTag::RealLineTruncated);
}

SampledFunction sample_builtin_halfline(const std::function<double(double)>& g,
                                        double B, double h) {
  std::vector<double> grid{h / 64.0, h / 16.0, h / 4.0, h / 2.0};
  const std::size_t n = static_cast<std::size_t>(std::round(B / h));
  for (std::size_t k = 1; k <= n; ++k) grid.push_back(k * h);
  return sample(g, std::move(grid), DomainTag::HalfLineTruncated);
}

// builtin:jn:<n> | builtin:psi:<n> | builtin:fejer | builtin:bump:<scale>
// or a path to a two-column CSV.  psi needs a loaded basis; jn follows the
// family of that basis when one is given, else the Fourier family.
SampledFunction resolve_function(const std::string& spec, double c,
                                 const prolate::ProlateBasis* fb,
                                 const prolate::CircularProlateBasis* hb) {
  const bool halfline = hb != nullptr;
  const double B = 40.0, h = 0.01;
  if (spec.rfind("builtin:", 0) != 0)
    return read_csv_function(spec, halfline ? DomainTag::HalfLineTruncated
                                            : DomainTag::RealLineTruncated);
  const std::string rest = spec.substr(8);
  if (rest.rfind("jn:", 0) == 0) {
    const int n = std::stoi(rest.substr(3));
    if (n < 0) throw ConfigError("builtin:jn needs n >= 0");
    if (halfline)
      return sample_builtin_halfline(
          [&](double x) {
            return bases::spherical_j_hankel(n, hb->alpha, hb->c, x);
          },
          B, h);
    return sample_builtin_line(
        [&](double x) { return bases::spherical_j(n, Bandwidth{c}, x); }, B,
        h);
  }
  if (rest.rfind("psi:", 0) == 0) {
    const int n = std::stoi(rest.substr(4));
    if (n < 0) throw ConfigError("builtin:psi needs n >= 0");
    if (halfline) {
      if (n >= hb->B.cols())
        throw ConfigError("builtin:psi needs a basis with coefficients "
                          "(use expand with --basis, or a lower index)");
      return sample_builtin_halfline(
          [&](double x) { return prolate::evaluate_phi(*hb, n, x); }, B, h);
    }
    if (fb == nullptr)
      throw ConfigError("builtin:psi requires --basis with a basis file");
    if (n >= fb->K) throw ConfigError("builtin:psi index beyond basis K");
    return sample_builtin_line(
        [&](double x) { return prolate::evaluate_psi(*fb, n, x); }, B, h);
  }
  if (rest == "fejer") {
    const auto g = [c](double x) {
      const double u = 0.5 * c * x;
      const double s = std::abs(u) < 1e-8 ? 1.0 - u * u / 6.0
                                          : std::sin(u) / u;
      return s * s;
    };
    return halfline ? sample_builtin_halfline(g, B, h)
                    : sample_builtin_line(g, B, h);
  }
  if (rest.rfind("bump:", 0) == 0) {
    const double scale = std::stod(rest.substr(5));
    if (!(scale > 0.0)) throw ConfigError("builtin:bump needs scale > 0");
    const auto g = [scale](double x) {
      return std::exp(-(x / scale) * (x / scale));
    };
    return halfline ? sample_builtin_halfline(g, B, h)
                    : sample_builtin_line(g, B, h);
  }
  throw ConfigError("unknown builtin function: " + spec);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open basis file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_hankel_basis(const std::string& text) {
  return text.find("\"family\": \"hankel\"") != std::string::npos ||
         text.find("\"family\":\"hankel\"") != std::string::npos;
}

std::vector<double> parse_list(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  if (out.empty()) throw ConfigError("empty list: " + spec);
  return out;
}

// ------------------------------------------------------------------ basis

int cmd_basis(const std::string& family, double c, int K, double alpha,
              bool have_alpha, const std::string& out_path,
              const std::string& config) {
  if (!(c > 0.0)) throw ConfigError("--c must be positive");
  if (K <= 0) K = prolate::default_K(Bandwidth{c});
  std::string json;
  if (family == "fourier") {
    json = prolate::to_json(prolate::build_prolate_basis(Bandwidth{c}, K));
  } else if (family == "hankel") {
    if (!have_alpha) throw ConfigError("--alpha is required for --family hankel");
    json = prolate::to_json(prolate::build_circular_prolate_basis(
        Order{alpha}, Bandwidth{c}, K));
  } else {
    throw ConfigError("--family must be fourier or hankel");
  }
  write_output(out_path, json);
  (void)config;
  return 0;
}

// ----------------------------------------------------------------- expand

int cmd_expand(const std::string& basis_path, const std::string& fn,
               int N_max, double p, bool converge, const std::string& out_path,
               const std::string& config) {
  const std::string text = read_file(basis_path);
  std::string csv = provenance(config);
  if (is_hankel_basis(text)) {
    const prolate::CircularProlateBasis b = prolate::circular_from_json(text);
    const SampledFunction f = resolve_function(fn, b.c.c, nullptr, &b);
    if (converge) {
      csv += expansions::to_csv(expansions::converge_report(
          f, b, p, expansions::default_probes(10, 0.05, 2.0)));
    } else {
      const expansions::ExpansionReport rep = expansions::expand(f, b, N_max);
      csv += "n,coefficient,tail\n";
      for (std::size_t n = 0; n < rep.coefficients.size(); ++n)
        csv += std::to_string(n) + "," + fmt(rep.coefficients[n]) + "," +
               fmt(rep.coefficient_tails[n]) + "\n";
    }
  } else {
    const prolate::ProlateBasis b = prolate::prolate_from_json(text);
    const SampledFunction f = resolve_function(fn, b.c.c, &b, nullptr);
    if (converge) {
      csv += expansions::to_csv(expansions::converge_report(
          f, b, p, expansions::default_probes(10, -2.0, 2.0)));
    } else {
      const expansions::ExpansionReport rep = expansions::expand(f, b, N_max);
      csv += "n,coefficient,tail\n";
      for (std::size_t n = 0; n < rep.coefficients.size(); ++n)
        csv += std::to_string(n) + "," + fmt(rep.coefficients[n]) + "," +
               fmt(rep.coefficient_tails[n]) + "\n";
    }
  }
  write_output(out_path, csv);
  return 0;
}

// ---------------------------------------------------------------- project

int cmd_project(const std::string& route, double c, double alpha,
                bool have_alpha, const std::string& fn,
                const std::string& grid_spec, const std::string& out_path,
                const std::string& config) {
  if (!(c > 0.0)) throw ConfigError("--c must be positive");
  const std::vector<double> out_grid = parse_grid(grid_spec);
  SampledFunction res;
  if (route == "sinc" || route == "hilbert") {
    const SampledFunction f = resolve_function(fn, c, nullptr, nullptr);
    res = transforms::project_fourier(f, Bandwidth{c},
                                      route == "sinc"
                                          ? transforms::FourierRoute::Sinc
                                          : transforms::FourierRoute::Hilbert,
                                      out_grid);
  } else if (route == "lommel" || route == "weighted" || route == "spectral") {
    if (!have_alpha) throw ConfigError("--alpha is required for Hankel routes");
    // a minimal basis shell so builtins resolve in the Hankel family
    prolate::CircularProlateBasis shell{Order{alpha}, Bandwidth{c}, 1 << 20,
                                        {}, {}, 10};
    const SampledFunction f = resolve_function(fn, c, nullptr, &shell);
    const transforms::HankelRoute r =
        route == "lommel" ? transforms::HankelRoute::Lommel
        : route == "weighted" ? transforms::HankelRoute::WeightedHilbert
                              : transforms::HankelRoute::Spectral;
    res = transforms::project_hankel(f, Order{alpha}, Bandwidth{c}, r,
                                     out_grid);
  } else {
    throw ConfigError(
        "--route must be sinc, hilbert, lommel, weighted, or spectral");
  }
  std::string csv = provenance(config) + "x,value\n";
  for (std::size_t i = 0; i < res.grid.size(); ++i)
    csv += fmt(res.grid[i]) + "," + fmt(res.values[i]) + "\n";
  write_output(out_path, csv);
  return 0;
}

// ------------------------------------------------------------------ rates

int cmd_rates(const std::string& p_list, int nmax, const std::string& out_path,
              const std::string& config) {
  if (nmax < 20) throw ConfigError("--nmax must be at least 20");
  const std::vector<double> ps = parse_list(p_list);
  std::string csv = provenance(config) + "p,slope\n";
  for (double p : ps) {
    if (!(p >= 1.0)) throw ConfigError("rates needs p >= 1");
    // log-spaced orders: the fit is in log n, and the integration window
    // (and cost) of each norm grows quadratically with n
    std::vector<double> ns, norms;
    for (double x = 10.0; x < nmax * 0.999; x *= 1.21)
      ns.push_back(std::round(x));
    ns.push_back(nmax);
    for (double n : ns)
      norms.push_back(bases::lp_norm_bessel(static_cast<int>(n), p,
                                            bases::Family::Fourier,
                                            Order{0.0}, Bandwidth{1.0})
                          .value);
    csv += fmt(p) + "," + fmt(bases::fit_loglog_slope(ns, norms)) + "\n";
  }
  write_output(out_path, csv);
  return 0;
}

// --------------------------------------------------------------- apweight

int cmd_apweight(double beta, double p, int depth, double a, double b,
                 const std::string& out_path, const std::string& config) {
  if (!(p > 1.0)) throw ConfigError("--p must be > 1");
  if (depth < 1 || depth > 16) throw ConfigError("--depth must be in [1,16]");
  if (!(b > a) || a < 0.0) throw ConfigError("need 0 <= a < b");
  const transforms::ApWeightReport rep = transforms::muckenhoupt_estimate(
      transforms::WeightSpec::power_weight(beta), p, a, b, depth);
  write_output(out_path, provenance(config) + transforms::to_csv(rep));
  return 0;
}

// --------------------------------------------------------------- normscan

int cmd_normscan(const std::string& op, double c, double alpha,
                 bool have_alpha, double p, double q, int count,
                 const std::string& out_path, const std::string& config) {
  if (!(c > 0.0)) throw ConfigError("--c must be positive");
  if (count < 1 || count > 64) throw ConfigError("--count must be in [1,64]");
  if (!(p >= 1.0) || !(q >= 1.0)) throw ConfigError("need p, q >= 1");
  std::vector<SampledFunction> family;
  std::vector<std::string> labels;
  transforms::Projector proj;
  if (op == "fourier") {
    proj = transforms::Projector::Fourier;
    for (int n = 0; n < count; ++n) {
      family.push_back(sample_builtin_line(
          [&](double x) { return bases::spherical_j(n, Bandwidth{c}, x); },
          40.0, 0.01));
      labels.push_back("jn:" + std::to_string(n));
    }
  } else if (op == "hankel") {
    proj = transforms::Projector::Hankel;
    if (!have_alpha) throw ConfigError("--alpha is required for --op hankel");
    for (int n = 0; n < count; ++n) {
      family.push_back(sample_builtin_halfline(
          [&](double x) {
            return bases::spherical_j_hankel(n, Order{alpha}, Bandwidth{c},
                                             x);
          },
          40.0, 0.01));
      labels.push_back("jn:" + std::to_string(n));
    }
  } else {
    throw ConfigError("--op must be fourier or hankel");
  }
  const transforms::NormRateReport rep = transforms::operator_norm_scan(
      proj, Order{have_alpha ? alpha : 0.0}, Bandwidth{c}, p, q, family,
      labels);
  write_output(out_path, provenance(config) + transforms::to_csv(rep));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  // deterministic regardless of the host: the env var caps worker threads
  // (Eigen is the only internal consumer)
  if (const char* tn = std::getenv("PROLATEKIT_THREADS")) {
    const int n = std::atoi(tn);
    if (n < 1) {
      std::cerr << "PROLATEKIT_THREADS must be a positive integer\n";
      return 2;
    }
    Eigen::setNbThreads(n);
  }

  CLI::App app{"prolate spheroidal toolkit"};
  app.require_subcommand(1);

  std::string family = "fourier", out_path, basis_path, fn, route = "sinc";
  std::string grid_spec = "0:2:201", p_list = "2";
  double c = 0.0, alpha = 0.0, p = 2.0, q = 2.0, beta = 0.0;
  double wa = 0.0, wb = 8.0;
  int K = 0, N_max = 0, nmax = 80, depth = 12, count = 8;
  bool converge = false;

  auto* sb = app.add_subcommand("basis", "construct a prolate basis (JSON)");
  sb->add_option("--family", family, "fourier or hankel");
  sb->add_option("--c", c, "bandwidth")->required();
  sb->add_option("--K", K, "truncation order (default: past the plunge)");
  auto* sb_alpha = sb->add_option("--alpha", alpha, "Hankel order");
  sb->add_option("--out", out_path, "output path (default stdout)");

  auto* se = app.add_subcommand("expand", "expansion coefficients (CSV)");
  se->add_option("--basis", basis_path, "basis JSON file")->required();
  se->add_option("--function", fn, "builtin:... or CSV path")->required();
  se->add_option("--N", N_max, "highest coefficient index")->required();
  se->add_option("--p", p, "L^p index for the convergence report");
  se->add_flag("--converge", converge,
               "emit the full convergence report instead of coefficients");
  se->add_option("--out", out_path, "output path (default stdout)");

  auto* sp = app.add_subcommand("project", "band-limiting projection (CSV)");
  sp->add_option("--route", route, "sinc|hilbert|lommel|weighted|spectral");
  sp->add_option("--c", c, "bandwidth")->required();
  auto* sp_alpha = sp->add_option("--alpha", alpha, "Hankel order");
  sp->add_option("--function", fn, "builtin:... or CSV path")->required();
  sp->add_option("--grid", grid_spec, "output grid a:b:count");
  sp->add_option("--out", out_path, "output path (default stdout)");

  auto* sr = app.add_subcommand("rates", "Bessel L^p norm slopes (CSV)");
  sr->add_option("--p", p_list, "comma-separated p values");
  sr->add_option("--nmax", nmax, "highest order in the fit");
  sr->add_option("--out", out_path, "output path (default stdout)");

  auto* sw = app.add_subcommand("apweight", "Muckenhoupt bracket scan (CSV)");
  sw->add_option("--beta", beta, "power-weight exponent")->required();
  sw->add_option("--p", p, "Lebesgue index")->required();
  sw->add_option("--depth", depth, "dyadic depth");
  sw->add_option("--a", wa, "interval left endpoint");
  sw->add_option("--b", wb, "interval right endpoint");
  sw->add_option("--out", out_path, "output path (default stdout)");

  auto* sn = app.add_subcommand("normscan", "projector norm-ratio scan (CSV)");
  sn->add_option("--op", family, "fourier or hankel");
  sn->add_option("--c", c, "bandwidth")->required();
  auto* sn_alpha = sn->add_option("--alpha", alpha, "Hankel order");
  sn->add_option("--p", p, "input norm index");
  sn->add_option("--q", q, "output norm index");
  sn->add_option("--count", count, "family size (j_0 .. j_{count-1})");
  sn->add_option("--out", out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  // canonical config line: argv joined, for the provenance hash; --out is
  // excluded so identical computations stay byte-identical wherever they
  // are written
  std::string config;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--out") {
      ++i;
      continue;
    }
    if (!config.empty()) config += ' ';
    config += arg;
  }

  try {
    if (sb->parsed())
      return cmd_basis(family, c, K, alpha, sb_alpha->count() > 0, out_path,
                       config);
    if (se->parsed())
      return cmd_expand(basis_path, fn, N_max, p, converge, out_path, config);
    if (sp->parsed())
      return cmd_project(route, c, alpha, sp_alpha->count() > 0, fn,
                         grid_spec, out_path, config);
    if (sr->parsed()) return cmd_rates(p_list, nmax, out_path, config);
    if (sw->parsed())
      return cmd_apweight(beta, p, depth, wa, wb, out_path, config);
    if (sn->parsed())
      return cmd_normscan(family, c, alpha, sn_alpha->count() > 0, p, q,
                          count, out_path, config);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 4;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
