// heun-forge: command-line front end for the series-solution library.
//
// Subcommands:
//   eigen   eigenvalue correction series for index n
//   poly    polynomial coefficient blocks of the series solution
//   verify  run one of the named self-check suites
//   eval    evaluate psi, P, E and the equation residual at a point
//
// Output is JSON (default) or CSV.  JSON objects are emitted with keys in
// byte order and floats printed with 17 significant digits, so identical
// inputs produce byte-identical output unless --timing is given.
//
// Exit codes: 0 success, 1 usage, 2 resonant input, 3 precondition violated,
// 4 internal fault (including a failing verify suite).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "heunforge/solution.hpp"
#include "heunforge/verify.hpp"

namespace {

using heunforge::Cx;
using heunforge::Nome;
using heunforge::Params;
using heunforge::Rational;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int n = 0;
  std::string g;
  std::string kappa = "0";
  int order = 8;
  bool order_set = false;
  std::string mode = "alg1";
  std::string scalar = "rational";
  std::string format = "json";
  std::string q, tau, x, omega1;
  std::string suite;
  std::string out;
  double eps_eq = -1.0;  // <= 0 keeps the library default
  double eps_res = -1.0;
  double fd_step = 1e-3;
  bool timing = false;
};

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string enc_json(const Rational& v) { return "\"" + v.str() + "\""; }
std::string enc_json(const Cx& v) { return "[" + fmt17(v.re()) + ", " + fmt17(v.im()) + "]"; }
std::string enc_csv(const Rational& v) { return v.str(); }
std::string enc_csv(const Cx& v) { return fmt17(v.re()) + "," + fmt17(v.im()); }

std::string jstr(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\\\"";
    else if (c == '\\') out += "\\\\";
    else if (static_cast<unsigned char>(c) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
      out += buf;
    } else out += c;
  }
  return out + "\"";
}

// Minimal JSON object builder; callers insert keys in byte order themselves.
class Json {
 public:
  void put(const std::string& key, const std::string& raw) {
    if (!body_.empty()) body_ += ", ";
    body_ += "\"" + key + "\": " + raw;
  }
  std::string str() const { return "{" + body_ + "}"; }

 private:
  std::string body_;
};

std::string arr(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out + "]";
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_real(const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw UsageError("malformed number '" + s + "'");
    return v;
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("malformed number '" + s + "'");
  }
}

// "a" -> a, "a,b" -> a + b i
Cx parse_cx(const std::string& s) {
  const std::size_t comma = s.find(',');
  if (comma == std::string::npos) return Cx(parse_real(s));
  return Cx(parse_real(s.substr(0, comma)), parse_real(s.substr(comma + 1)));
}

Rational parse_rat(const std::string& s) {
  try {
    return Rational::parse(s);
  } catch (const std::exception&) {
    throw UsageError("malformed rational '" + s + "'");
  }
}

template <class S>
Params<S> make_params(const Options& o);

template <>
Params<Rational> make_params<Rational>(const Options& o) {
  const auto t = split(o.g, ',');
  if (t.size() != 4)
    throw UsageError("--g expects g0,g1,g2,g3 (got " + std::to_string(t.size()) + " values)");
  return Params<Rational>(parse_rat(t[0]), parse_rat(t[1]), parse_rat(t[2]), parse_rat(t[3]),
                          parse_rat(o.kappa));
}

template <>
Params<Cx> make_params<Cx>(const Options& o) {
  const auto t = split(o.g, ',');
  if (t.size() == 4)
    return Params<Cx>(Cx(parse_real(t[0])), Cx(parse_real(t[1])), Cx(parse_real(t[2])),
                      Cx(parse_real(t[3])), parse_cx(o.kappa));
  if (t.size() == 8)
    return Params<Cx>(Cx(parse_real(t[0]), parse_real(t[1])), Cx(parse_real(t[2]), parse_real(t[3])),
                      Cx(parse_real(t[4]), parse_real(t[5])), Cx(parse_real(t[6]), parse_real(t[7])),
                      parse_cx(o.kappa));
  throw UsageError("--g expects 4 couplings (or 8 interleaved re,im parts with --scalar complex)");
}

template <class S>
std::string params_json(const Params<S>& p) {
  std::vector<std::string> g;
  for (int v = 0; v < 4; ++v) g.push_back(enc_json(p.g[static_cast<std::size_t>(v)]));
  Json j;
  j.put("g", arr(g));
  j.put("kappa", enc_json(p.kappa));
  return j.str();
}

template <class S>
std::string csv_value_header() {
  if constexpr (std::is_same_v<S, Rational>) return "value";
  else return "re,im";
}

double secs_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void warn_hypothesis(bool ok) {
  if (!ok)
    std::fprintf(stderr,
                 "heun-forge: warning: hypothesis checks did not certify this parameter set\n");
}

template <class S>
std::string run_eigen(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto p = make_params<S>(o);
  const auto sol = heunforge::assemble(o.n, p, o.order, heunforge::mode_from_name(o.mode));
  warn_hypothesis(sol.hypothesis_ok);

  if (o.format == "csv") {
    std::string out = "ell," + csv_value_header<S>() + "\n";
    for (int l = 0; l <= o.order; ++l)
      out += std::to_string(l) + "," + enc_csv(sol.eigen.coeff(l)) + "\n";
    return out;
  }
  std::vector<std::string> coeffs;
  for (int l = 0; l <= o.order; ++l) coeffs.push_back(enc_json(sol.eigen.coeff(l)));
  Json j;
  j.put("E0", enc_json(sol.eigen.coeff(0)));
  j.put("E_coeffs", arr(coeffs));
  j.put("mode", jstr(o.mode));
  j.put("n", std::to_string(o.n));
  j.put("order", std::to_string(o.order));
  j.put("params", params_json(p));
  j.put("resonance_report", "[]");
  j.put("scalar", jstr(o.scalar));
  j.put("schema", "\"heun-forge/1\"");
  if (o.timing) j.put("timing", fmt17(secs_since(t0)));
  return j.str() + "\n";
}

template <class S>
std::string run_poly(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto p = make_params<S>(o);
  const auto sol = heunforge::assemble(o.n, p, o.order, heunforge::mode_from_name(o.mode));
  warn_hypothesis(sol.hypothesis_ok);

  if (o.format == "csv") {
    std::string out = "ell,power," + csv_value_header<S>() + "\n";
    for (int l = 0; l <= o.order; ++l)
      for (int k = 0; k <= sol.poly[static_cast<std::size_t>(l)].degree(); ++k)
        out += std::to_string(l) + "," + std::to_string(k) + "," +
               enc_csv(sol.poly[static_cast<std::size_t>(l)].coeff(k)) + "\n";
    return out;
  }
  std::vector<std::string> blocks;
  for (int l = 0; l <= o.order; ++l) {
    const auto& pl = sol.poly[static_cast<std::size_t>(l)];
    std::vector<std::string> cs;
    for (int k = 0; k <= pl.degree(); ++k) cs.push_back(enc_json(pl.coeff(k)));
    blocks.push_back(arr(cs));
  }
  Json j;
  j.put("blocks", arr(blocks));
  j.put("mode", jstr(o.mode));
  j.put("n", std::to_string(o.n));
  j.put("norm", enc_json(sol.norm));
  j.put("order", std::to_string(o.order));
  j.put("params", params_json(p));
  j.put("scalar", jstr(o.scalar));
  j.put("schema", "\"heun-forge/1\"");
  if (o.timing) j.put("timing", fmt17(secs_since(t0)));
  return j.str() + "\n";
}

template <class S>
std::string run_eval(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto p = make_params<S>(o);
  const auto sol = heunforge::assemble(o.n, p, o.order, heunforge::mode_from_name(o.mode));
  warn_hypothesis(sol.hypothesis_ok);

  const Nome nm = !o.tau.empty() ? Nome::from_tau(parse_cx(o.tau))
                : !o.q.empty()   ? Nome::from_q(parse_cx(o.q))
                                 : Nome::from_q(Cx());
  const Cx x = parse_cx(o.x);
  Cx E, P, psi, res;
  if (!o.omega1.empty()) {
    // x is taken in the omega_1 convention; map to the standard half-period pi.
    const Cx om1 = parse_cx(o.omega1);
    const heunforge::ScaleMap sm(om1);
    const Cx xs = sm.x_to_standard(x);
    E = sm.energy_factor() * heunforge::total_E(sol, nm);
    psi = sm.psi_factor() * heunforge::eval_psi(sol, xs, nm);
    P = heunforge::eval_P(sol, Cx(std::cos(xs.cplx())), nm);
    res = heunforge::residual_scaled(sol, x, nm, o.fd_step, om1);
  } else {
    E = heunforge::total_E(sol, nm);
    psi = heunforge::eval_psi(sol, x, nm);
    P = heunforge::eval_P(sol, Cx(std::cos(x.cplx())), nm);
    res = heunforge::residual(sol, x, nm, o.fd_step);
  }

  if (o.format == "csv") {
    std::string out = "field,re,im\n";
    out += "E," + enc_csv(E) + "\n";
    out += "P," + enc_csv(P) + "\n";
    out += "psi," + enc_csv(psi) + "\n";
    out += "residual," + enc_csv(res) + "\n";
    return out;
  }
  Json j;
  j.put("E", enc_json(E));
  j.put("P", enc_json(P));
  j.put("mode", jstr(o.mode));
  j.put("n", std::to_string(o.n));
  if (!o.omega1.empty()) j.put("omega1", enc_json(parse_cx(o.omega1)));
  j.put("order", std::to_string(o.order));
  j.put("params", params_json(p));
  j.put("psi", enc_json(psi));
  j.put("q", enc_json(nm.q));
  j.put("residual", enc_json(res));
  j.put("scalar", jstr(o.scalar));
  j.put("schema", "\"heun-forge/1\"");
  j.put("tau", nm.has_tau ? enc_json(nm.tau) : "null");
  if (o.timing) j.put("timing", fmt17(secs_since(t0)));
  j.put("x", enc_json(x));
  return j.str() + "\n";
}

std::string run_verify(const Options& o, int& rc) {
  const auto t0 = std::chrono::steady_clock::now();
  heunforge::verify::SuiteOptions sopt;
  if (!o.q.empty()) sopt.qmag = parse_real(o.q);
  if (o.order_set) sopt.order = o.order;
  sopt.fd_step = o.fd_step;
  const auto r = heunforge::verify::run(o.suite, sopt);
  rc = r.pass ? 0 : 4;
  if (!r.pass)
    std::fprintf(stderr, "heun-forge: verify: suite '%s' failed (max deviation %.3e)\n",
                 r.suite.c_str(), r.max_deviation);

  if (o.format == "csv") {
    return "suite,cases,max_deviation,pass\n" + r.suite + "," + std::to_string(r.cases) + "," +
           fmt17(r.max_deviation) + "," + (r.pass ? "true" : "false") + "\n";
  }
  Json j;
  j.put("cases", std::to_string(r.cases));
  j.put("max_deviation", fmt17(r.max_deviation));
  j.put("notes", jstr(r.notes));
  j.put("pass", r.pass ? "true" : "false");
  j.put("schema", "\"heun-forge/1\"");
  j.put("suite", jstr(r.suite));
  if (o.timing) j.put("timing", fmt17(secs_since(t0)));
  return j.str() + "\n";
}

std::string resonance_json(const heunforge::ResonanceError& e) {
  std::vector<std::string> hits;
  for (const auto& h : e.hits()) {
    Json hj;
    hj.put("ell", std::to_string(h.ell));
    hj.put("m", std::to_string(h.m));
    hits.push_back(hj.str());
  }
  Json err;
  err.put("hits", arr(hits));
  err.put("n", std::to_string(e.n()));
  err.put("type", "\"resonance\"");
  Json top;
  top.put("error", err.str());
  top.put("schema", "\"heun-forge/1\"");
  return top.str() + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"truncated series solutions of the non-stationary Heun equation"};
  app.require_subcommand(1);

  auto* eig = app.add_subcommand("eigen", "eigenvalue correction series for index n");
  auto* pol = app.add_subcommand("poly", "polynomial coefficient blocks of the series solution");
  auto* ver = app.add_subcommand("verify", "run a named self-check suite");
  auto* evl = app.add_subcommand("eval", "evaluate psi, P, E and the equation residual");

  const std::vector<std::string> modes = {"alg1", "alg2", "thm1", "thm2", "bridge"};
  for (auto* c : {eig, pol, evl}) {
    c->add_option("--n", o.n, "series index")->required();
    c->add_option("--g", o.g, "couplings g0,g1,g2,g3")->required();
    c->add_option("--kappa", o.kappa, "scale-derivative coupling")->capture_default_str();
    c->add_option("--order", o.order, "truncation order in the nome")->capture_default_str();
    c->add_option("--mode", o.mode, "construction backend")
        ->capture_default_str()
        ->check(CLI::IsMember(modes));
    c->add_option("--scalar", o.scalar, "arithmetic domain")
        ->capture_default_str()
        ->check(CLI::IsMember({"rational", "complex"}));
  }
  ver->add_option("--suite", o.suite, "suite name")
      ->required()
      ->check(CLI::IsMember(heunforge::verify::names()));
  ver->add_option("--q", o.q, "nome magnitude used by suites that probe at q != 0");
  ver->add_option("--order", o.order, "override the suite's default truncation order");
  ver->add_option("--fd-step", o.fd_step, "finite-difference step")->capture_default_str();

  auto* opt_q = evl->add_option("--q", o.q, "nome (RE or RE,IM)");
  auto* opt_tau = evl->add_option("--tau", o.tau, "modular parameter RE,IM (sets q = e^{i pi tau})");
  opt_q->excludes(opt_tau);
  opt_tau->excludes(opt_q);
  evl->add_option("--x", o.x, "evaluation point RE or RE,IM")->required();
  evl->add_option("--omega1", o.omega1,
                  "half-period: read x in the omega_1 convention (needs q != 0)");
  evl->add_option("--fd-step", o.fd_step, "finite-difference step")->capture_default_str();

  for (auto* c : {eig, pol, ver, evl}) {
    c->add_option("--format", o.format, "output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "csv"}));
    c->add_option("--out", o.out, "write output to a file instead of stdout");
    c->add_flag("--timing", o.timing, "include wall-clock timing (breaks byte determinism)");
    c->add_option("--eps-eq", o.eps_eq, "override the floating equality tolerance");
    c->add_option("--eps-res", o.eps_res, "override the floating residue tolerance");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  const CLI::App* active = app.get_subcommands().front();
  o.order_set = active->count("--order") > 0;

  std::ofstream fout;
  std::ostream* os = &std::cout;
  if (!o.out.empty()) {
    fout.open(o.out, std::ios::binary);
    if (!fout) {
      std::fprintf(stderr, "heun-forge: cannot open '%s' for writing\n", o.out.c_str());
      return 1;
    }
    os = &fout;
  }
  if (o.eps_eq > 0) heunforge::FloatTol::eps_eq = o.eps_eq;
  if (o.eps_res > 0) heunforge::FloatTol::eps_res = o.eps_res;

  const bool rational = (o.scalar == "rational");
  try {
    if (o.order < 0) throw UsageError("--order must be >= 0");
    std::string payload;
    int rc = 0;
    if (app.got_subcommand(eig))
      payload = rational ? run_eigen<Rational>(o) : run_eigen<Cx>(o);
    else if (app.got_subcommand(pol))
      payload = rational ? run_poly<Rational>(o) : run_poly<Cx>(o);
    else if (app.got_subcommand(evl))
      payload = rational ? run_eval<Rational>(o) : run_eval<Cx>(o);
    else
      payload = run_verify(o, rc);
    *os << payload;
    return rc;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "heun-forge: %s\n", e.what());
    return 1;
  } catch (const heunforge::ResonanceError& e) {
    *os << resonance_json(e);
    std::fprintf(stderr, "heun-forge: %s\n", e.what());
    return 2;
  } catch (const heunforge::ZeroDenominator& e) {
    std::fprintf(stderr, "heun-forge: %s\n", e.what());
    return 3;
  } catch (const heunforge::PreconditionError& e) {
    std::fprintf(stderr, "heun-forge: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "heun-forge: internal error: %s\n", e.what());
    return 4;
  }
}
