// gint: command-line front end for the generalized-integral library.
//
// Exit status: 0 success, 1 usage or numeric error, 2 verification failure.

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gint/closedforms.hpp"
#include "gint/error.hpp"
#include "gint/genquad.hpp"
#include "gint/pointgreen.hpp"
#include "gint/specfun.hpp"
#include "gint/verify.hpp"

namespace {

using namespace gint;
using cplx = std::complex<double>;

constexpr double kEps = std::numeric_limits<double>::epsilon();

// ------------------------------------------------------------- output

using Field = std::variant<double, long, bool, std::string>;
using Record = std::vector<std::pair<std::string, Field>>;

std::string fmt_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (static_cast<unsigned char>(c) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", c);
      out += buf;
    } else {
      out += c;
    }
  }
  return out + "\"";
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

class Writer {
 public:
  explicit Writer(bool json) : json_(json) {}

  void write(const Record& r) {
    if (json_) {
      std::string line = "{";
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) line += ", ";
        line += json_escape(r[i].first) + ": " + render(r[i].second, true);
      }
      std::printf("%s}\n", line.c_str());
      return;
    }
    if (!header_done_) {
      for (std::size_t i = 0; i < r.size(); ++i) std::printf("%s%s", i ? "," : "", r[i].first.c_str());
      std::printf("\n");
      header_done_ = true;
    }
    for (std::size_t i = 0; i < r.size(); ++i)
      std::printf("%s%s", i ? "," : "", render(r[i].second, false).c_str());
    std::printf("\n");
  }

 private:
  static std::string render(const Field& f, bool json) {
    if (auto d = std::get_if<double>(&f)) {
      const std::string s = fmt_double(*d);
      return json && !std::isfinite(*d) ? json_escape(s) : s;
    }
    if (auto l = std::get_if<long>(&f)) return std::to_string(*l);
    if (auto b = std::get_if<bool>(&f)) return *b ? "true" : "false";
    const auto& s = std::get<std::string>(f);
    return json ? json_escape(s) : csv_quote(s);
  }

  bool json_;
  bool header_done_ = false;
};

// ------------------------------------------------------------- parsing helpers

double default_tolerance() {
  if (const char* env = std::getenv("GINT_TOL")) {
    char* end = nullptr;
    const double t = std::strtod(env, &end);
    if (end != env && *end == '\0' && t > 0.0) return t;
    throw CLI::ValidationError("GINT_TOL", std::string("not a positive number: ") + env);
  }
  return 1e-12;
}

// "0.7", "0.7i", "-2i", "i".
cplx parse_spectral(const std::string& s) {
  if (s.empty()) throw CLI::ValidationError("--lambda", "empty value");
  const bool imag = s.back() == 'i';
  std::string body = imag ? s.substr(0, s.size() - 1) : s;
  if (body.empty() || body == "+" || body == "-") body += "1";
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(body, &pos);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--lambda", "cannot parse '" + s + "'");
  }
  if (pos != body.size()) throw CLI::ValidationError("--lambda", "cannot parse '" + s + "'");
  return imag ? cplx(0.0, v) : cplx(v, 0.0);
}

// "a,b,c" or "start:stop:count" (inclusive, linear).
std::vector<double> parse_grid(const std::string& flag, const std::string& s) {
  std::vector<double> out;
  auto number = [&](const std::string& t) {
    std::size_t pos = 0;
    double v;
    try {
      v = std::stod(t, &pos);
    } catch (const std::exception&) {
      throw CLI::ValidationError(flag, "cannot parse '" + t + "'");
    }
    if (pos != t.size()) throw CLI::ValidationError(flag, "cannot parse '" + t + "'");
    return v;
  };
  if (s.find(':') != std::string::npos) {
    const auto parts = CLI::detail::split(s, ':');
    if (parts.size() != 3) throw CLI::ValidationError(flag, "range must be start:stop:count");
    const double a = number(parts[0]), b = number(parts[1]);
    const int n = static_cast<int>(number(parts[2]));
    if (n < 1) throw CLI::ValidationError(flag, "count must be >= 1");
    for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    return out;
  }
  for (const auto& t : CLI::detail::split(s, ',')) out.push_back(number(t));
  return out;
}

std::pair<int, int> parse_int_range(const std::string& flag, const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const int d = std::stoi(s);
      return {d, d};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw CLI::ValidationError(flag, "expected N or N..M, got '" + s + "'");
  }
}

pointgreen::GeometryKind parse_geometry(const std::string& s) {
  if (s == "euclidean") return pointgreen::GeometryKind::euclidean;
  if (s == "hyperbolic") return pointgreen::GeometryKind::hyperbolic;
  return pointgreen::GeometryKind::spherical;
}

// ------------------------------------------------------------- subcommands

struct Common {
  std::string format = "csv";
  double tol = 0.0;
  std::uint64_t seed = verify::kDefaultSeed;
};

struct EvalArgs {
  std::string fn;
  double alpha = 0.0, w = 0.0, x = 0.0, a = 1.0, b = 1.0;
  std::string lambda = "0";
  int n = 0;
};

int run_eval(const EvalArgs& e, Writer& out) {
  Record r{{"fn", e.fn}};
  double value = 0.0, tol = 4.0 * kEps;
  if (e.fn == "bessel-k") {
    value = specfun::bessel_k(e.alpha, e.x);
    r.insert(r.end(), {{"alpha", e.alpha}, {"x", e.x}});
  } else if (e.fn == "gamma") {
    value = specfun::gamma(e.x);
    r.push_back({"x", e.x});
  } else if (e.fn == "digamma") {
    value = specfun::digamma(e.x);
    r.push_back({"x", e.x});
  } else if (e.fn == "pochhammer") {
    value = specfun::pochhammer(cplx(e.x, 0.0), e.n).real();
    r.insert(r.end(), {{"x", e.x}, {"n", static_cast<long>(e.n)}});
  } else if (e.fn == "gegenbauer-s") {
    const auto res = specfun::gegenbauer_s_eval(e.alpha, parse_spectral(e.lambda), e.w);
    value = res.value;
    tol = 4.0 * kEps * res.condition;
    r.insert(r.end(), {{"alpha", e.alpha}, {"lambda", e.lambda}, {"w", e.w},
                       {"route", std::string(specfun::to_string(res.route))}});
  } else if (e.fn == "gegenbauer-z") {
    const cplx l = parse_spectral(e.lambda);
    if (l.imag() != 0.0) throw CLI::ValidationError("--lambda", "gegenbauer-z takes a real lambda");
    const auto res = specfun::gegenbauer_z_eval(e.alpha, l.real(), e.w);
    value = res.value;
    tol = 4.0 * kEps * res.condition;
    r.insert(r.end(), {{"alpha", e.alpha}, {"lambda", e.lambda}, {"w", e.w},
                       {"route", std::string(specfun::to_string(res.route))}});
  }
  r.push_back({"value", value});
  r.push_back({"tolerance", tol});
  out.write(r);
  return 0;
}

struct IntegrateArgs {
  std::string integrand;
  double alpha = 0.0, a = 1.0, b = 1.0, l1 = 1.0, l2 = 1.0, s = 0.0, rate = 1.0, split = 1.0;
};

int run_integrate(const IntegrateArgs& in, const Common& c, Writer& out) {
  genquad::GenOptions opts;
  opts.rel_tol = c.tol;
  genquad::GenResult res;
  Record r{{"integrand", in.integrand}};
  if (in.integrand == "bessel-product") {
    res = genquad::gen_integrate(genquad::bessel_product_integrand(in.alpha, in.a, in.b), in.split, opts);
    r.insert(r.end(), {{"alpha", in.alpha}, {"a", in.a}, {"b", in.b}});
  } else if (in.integrand == "gamma-power") {
    res = genquad::gen_integrate(genquad::power_exponential(in.s, in.rate), in.split, opts);
    r.insert(r.end(), {{"s", in.s}, {"rate", in.rate}});
  } else {
    const auto kind =
        in.integrand == "gegenbauer-s" ? genquad::GegenbauerKind::S : genquad::GegenbauerKind::Z;
    res = genquad::gen_bilinear_gegenbauer(kind, in.alpha, in.l1, in.l2, 0.0, opts);
    r.insert(r.end(), {{"alpha", in.alpha}, {"l1", in.l1}, {"l2", in.l2}});
  }
  r.push_back({"value", res.value});
  r.push_back({"anomaly", res.anomaly});
  r.push_back({"tolerance_achieved", res.error});
  out.write(r);
  return 0;
}

struct TableArgs {
  std::string formula;
  std::string alpha = "0.5", p1 = "1", p2 = "2";
};

int run_table(const TableArgs& t, const Common& c, Writer& out) {
  using closedforms::Formula;
  genquad::GenOptions opts;
  opts.rel_tol = c.tol;
  const auto alphas = parse_grid("--alpha", t.alpha);
  const auto p1s = parse_grid("--p1", t.p1);
  const bool square = t.formula == "mac3" || t.formula == "mac4";
  const auto p2s = square ? std::vector<double>{0.0} : parse_grid("--p2", t.p2);
  const std::map<std::string, Formula> formulas{
      {"mac1", Formula::mac_bilinear}, {"mac2", Formula::mac_bilinear}, {"mac3", Formula::mac_square},
      {"mac4", Formula::mac_square},   {"geg1", Formula::geg_s},        {"geg2", Formula::geg_z}};
  const Formula f = formulas.at(t.formula);
  for (double alpha : alphas)
    for (double p1 : p1s)
      for (double p2 : p2s) {
        const double q2 = square ? p1 : p2;
        Record r{{"formula", t.formula}, {"alpha", alpha}, {"p1", p1}};
        if (!square) r.push_back({"p2", p2});
        double closed = 0.0;
        std::string path = "closed";
        try {
          closed = closedforms::evaluate(f, {alpha, p1, q2});
        } catch (const NumericError& e) {
          if (e.code() != ErrorCode::redirect) throw;
          closed = closedforms::limit_diagonal(f, {alpha, p1, q2}, closedforms::LimitVariable::spectral)
                       .value;
          path = "extrapolated";
        }
        genquad::GenResult q;
        switch (f) {
          case Formula::mac_bilinear:
          case Formula::mac_square:
            q = genquad::gen_bilinear_macdonald(alpha, p1, q2, opts);
            break;
          case Formula::geg_s:
            q = genquad::gen_bilinear_gegenbauer(genquad::GegenbauerKind::S, alpha, p1, q2, 0.0, opts);
            break;
          case Formula::geg_z:
            q = genquad::gen_bilinear_gegenbauer(genquad::GegenbauerKind::Z, alpha, p1, q2, 0.0, opts);
            break;
        }
        r.push_back({"closed_form", closed});
        r.push_back({"closed_path", path});
        r.push_back({"quadrature", q.value});
        r.push_back({"rel_diff", std::abs(q.value - closed) / std::abs(closed)});
        r.push_back({"tolerance", q.error / std::abs(q.value)});
        out.write(r);
      }
  return 0;
}

int run_verify(const std::string& suite, int criterion, const Common& c, Writer& out) {
  const std::vector<int> list = criterion > 0 ? std::vector<int>{criterion} : verify::criteria_for_suite(suite);
  bool ok = true;
  for (int n : list) {
    const auto checks = verify::run_criterion(n, {c.seed});
    ok = ok && verify::all_pass(checks);
    for (const auto& k : checks) {
      out.write({{"criterion", static_cast<long>(k.criterion)},
                 {"title", verify::criterion_title(k.criterion)},
                 {"check", k.name},
                 {"value", k.value},
                 {"reference", k.reference},
                 {"error", k.error},
                 {"tolerance", k.tolerance},
                 {"measure", std::string(k.absolute ? "absolute" : "relative")},
                 {"pass", k.pass},
                 {"note", k.note}});
    }
  }
  return ok ? 0 : 2;
}

int run_sigma(const std::string& geometry, const std::string& range, double beta, Writer& out) {
  const auto [d0, d1] = parse_int_range("--dim-range", range);
  if (d0 < 1 || d1 < d0) throw CLI::ValidationError("--dim-range", "need 1 <= N <= M");
  const pointgreen::GeometryKind kind = parse_geometry(geometry);
  for (int d = d0; d <= d1; ++d) {
    Record r{{"geometry", geometry}, {"d", static_cast<long>(d)}, {"beta", beta}};
    if (kind == pointgreen::GeometryKind::euclidean) {
      const auto chk = pointgreen::sigma_derivative_check(d, beta);
      r.push_back({"sigma", pointgreen::sigma(d, beta)});
      r.push_back({"dsigma_lhs", chk.lhs});
      r.push_back({"dsigma_rhs", chk.rhs});
      r.push_back({"rel_diff", chk.rel_diff()});
    } else {
      // Curved: Sigma normalized to vanish at rho = 1; only the integral form of dSigma exists.
      const pointgreen::Geometry g{kind, d};
      const double ds = pointgreen::sigma_derivative_curved(g, beta);
      r.push_back({"sigma", pointgreen::sigma_numeric_curved(g, beta)});
      r.push_back({"dsigma_lhs", std::numeric_limits<double>::quiet_NaN()});
      r.push_back({"dsigma_rhs", ds});
      r.push_back({"rel_diff", std::numeric_limits<double>::quiet_NaN()});
    }
    out.write(r);
  }
  return 0;
}

struct GreenArgs {
  std::string geometry = "euclidean";
  int dim = 3;
  double beta = 1.0;
  double gamma = pointgreen::kNoCoupling;
  std::string along = "0.1:2:20";
  double source = 0.5;
};

// x runs along the geodesic from the base point in direction e1; the source y
// sits at distance `source` along e2 (along -e1 when d = 1).
int run_green(const GreenArgs& a, Writer& out) {
  using namespace pointgreen;
  const Geometry g{parse_geometry(a.geometry), a.dim};
  const auto s = parse_grid("--along", a.along);
  std::vector<double> ydir(a.dim, 0.0);
  if (a.dim == 1)
    ydir[0] = -1.0;
  else
    ydir[1] = 1.0;
  const SpacePoint y = SpacePoint::polar(g, a.source, ydir);
  const KreinKernelSpec spec{g, a.beta, a.gamma};
  for (double arc : s) {
    const SpacePoint x = SpacePoint::polar(g, arc);
    out.write({{"arclength", arc}, {"kernel", krein_green(spec, x, y)}, {"tolerance", 1e-12}});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized integrals, Macdonald/Gegenbauer functions and point-interaction kernels"};
  app.require_subcommand(1);
  Common common;
  std::optional<double> tol_flag;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "csv or jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}))
        ->capture_default_str();
    sub->add_option("--tol", tol_flag, "relative tolerance (default: $GINT_TOL or 1e-12)")
        ->check(CLI::PositiveNumber);
  };

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "evaluate a special function");
  eval->add_option("--fn", ev.fn)
      ->required()
      ->check(CLI::IsMember({"bessel-k", "gamma", "digamma", "pochhammer", "gegenbauer-s", "gegenbauer-z"}));
  eval->add_option("--alpha", ev.alpha);
  eval->add_option("--lambda", ev.lambda, "real, or imaginary with suffix i (e.g. 0.7i)");
  eval->add_option("--w", ev.w);
  eval->add_option("--x", ev.x);
  eval->add_option("--n", ev.n);
  add_common(eval);

  IntegrateArgs ia;
  auto* integ = app.add_subcommand("integrate", "generalized integral of a built-in integrand");
  integ->add_option("--integrand", ia.integrand)
      ->required()
      ->check(CLI::IsMember({"bessel-product", "gegenbauer-s", "gegenbauer-z", "gamma-power"}));
  integ->add_option("--alpha", ia.alpha);
  integ->add_option("--a", ia.a);
  integ->add_option("--b", ia.b);
  integ->add_option("--l1", ia.l1);
  integ->add_option("--l2", ia.l2);
  integ->add_option("--s", ia.s, "gamma-power: r^(s-1) e^(-rate r)");
  integ->add_option("--rate", ia.rate);
  integ->add_option("--split", ia.split)->check(CLI::PositiveNumber);
  add_common(integ);

  TableArgs ta;
  auto* table = app.add_subcommand("table", "closed form against quadrature over a grid");
  table->add_option("--formula", ta.formula)
      ->required()
      ->check(CLI::IsMember({"mac1", "mac2", "mac3", "mac4", "geg1", "geg2"}));
  table->add_option("--alpha", ta.alpha, "list a,b,c or range start:stop:count")->capture_default_str();
  table->add_option("--p1", ta.p1)->capture_default_str();
  table->add_option("--p2", ta.p2)->capture_default_str();
  add_common(table);

  std::string suite = "all";
  int criterion = 0;
  auto* ver = app.add_subcommand("verify", "run acceptance checks");
  ver->add_option("--suite", suite)
      ->check(CLI::IsMember({"macdonald", "gegenbauer", "genquad", "symmetries", "sigma", "krein",
                             "limits", "all"}))
      ->capture_default_str();
  ver->add_option("--criterion", criterion)->check(CLI::Range(1, 9));
  ver->add_option("--seed", common.seed)->capture_default_str();
  add_common(ver);

  std::string sgeom = "euclidean", srange = "1..8";
  double sbeta = 1.0;
  auto* sig = app.add_subcommand("sigma", "Sigma_d and its rho-derivative checks");
  sig->add_option("--geometry", sgeom)
      ->check(CLI::IsMember({"euclidean", "hyperbolic", "spherical"}))
      ->capture_default_str();
  sig->add_option("--dim-range", srange)->capture_default_str();
  sig->add_option("--beta", sbeta)->check(CLI::PositiveNumber)->capture_default_str();
  add_common(sig);

  GreenArgs ga;
  auto* green = app.add_subcommand("green", "Krein kernel along a geodesic");
  green->add_option("--geometry", ga.geometry)
      ->check(CLI::IsMember({"euclidean", "hyperbolic", "spherical"}))
      ->capture_default_str();
  green->add_option("--dim", ga.dim)->check(CLI::PositiveNumber)->capture_default_str();
  green->add_option("--beta", ga.beta)->check(CLI::PositiveNumber)->capture_default_str();
  green->add_option("--gamma", ga.gamma, "coupling (omit for the free kernel)");
  green->add_option("--along", ga.along, "arclengths: list or start:stop:count")->capture_default_str();
  green->add_option("--source", ga.source, "distance of the source point from the base point")
      ->capture_default_str();
  add_common(green);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    common.tol = tol_flag ? *tol_flag : default_tolerance();
    Writer out(common.format == "jsonl");
    if (eval->parsed()) return run_eval(ev, out);
    if (integ->parsed()) {
      // integrate emits JSON unless csv is asked for explicitly.
      Writer jout(common.format == "jsonl" || integ->count("--format") == 0);
      return run_integrate(ia, common, jout);
    }
    if (table->parsed()) return run_table(ta, common, out);
    if (ver->parsed()) return run_verify(suite, criterion, common, out);
    if (sig->parsed()) return run_sigma(sgeom, srange, sbeta, out);
    if (green->parsed()) return run_green(ga, out);
  } catch (const CLI::Error& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 1;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "error %s: %s\n", e.qualified_code().c_str(), e.what());
    return 1;
  }
  return 1;
}
