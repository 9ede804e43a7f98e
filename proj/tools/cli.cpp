#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "toral/algebra.hpp"
#include "toral/errors.hpp"
#include "toral/parse.hpp"

namespace toral::cli {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// Angle in [0, 2 pi); values within 1e-12 of 2 pi fold to 0.
double angle(std::complex<double> z) {
  double a = std::arg(z);
  if (a < 0) a += kTwoPi;
  if (a > kTwoPi - 1e-12) a = 0;
  return a;
}

struct Globals {
  std::optional<double> tol;
  int precision = 12;
  std::uint64_t seed = 1;
  bool json = false, quiet = false, timing = false;
  std::string file;
};

/// What a command produces before it is printed.
struct Outcome {
  std::string status = "ok";
  json payload;
  std::string human;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Polynomial from the positional argument or, failing that, from --file
// (lines joined; '#' starts a comment).
MultiPoly read_poly(const Globals& g, const std::string& arg) {
  if (!arg.empty()) return parse(arg);
  if (g.file.empty()) throw DomainError("no polynomial given");
  std::istringstream in(slurp(g.file));
  std::string line, text;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    text += line + " ";
  }
  return parse(text);
}

json read_json(const Globals& g, const std::string& arg) {
  std::string path = arg.empty() ? g.file : arg;
  if (path.empty()) throw DomainError("no input file given");
  try {
    return json::parse(slurp(path));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what(), e.byte);
  }
}

Exponent parse_exponent(const std::string& s) {
  Exponent h;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      h.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw ParseError("bad exponent '" + s + "'", 0);
    }
  }
  if (h.size() != 2) throw ParseError("exponent needs two entries: '" + s + "'", 0);
  return h;
}

std::pair<GaussianRational, GaussianRational> parse_point(const std::string& s) {
  auto c = s.find(',');
  if (c == std::string::npos) throw ParseError("point needs the form a,b: '" + s + "'", 0);
  return {parse_scalar(s.substr(0, c)), parse_scalar(s.substr(c + 1))};
}

// z^h reflect(p) / p. Essentially symmetric factors of p cancel up to a constant,
// so only the remaining part has to be stable; the symmetric part is padded back on.
RationalInner inner_from(const MultiPoly& p, const Exponent& h) {
  Factorization f = factor_irreducible(p);
  MultiPoly core(p.nvars(), f.unit), sym(p.nvars(), GaussianRational(1));
  for (const auto& [g, m] : f.factors) {
    MultiPoly& part = essential_symmetry(g).symmetric ? sym : core;
    for (int k = 0; k < m; ++k) part = part * g;
  }
  if (sym.is_constant()) return make_inner(p, h);
  return pad(make_inner(core, h), sym);
}

// "p;h1,h2" -> inner function; h defaults to 0,0.
RationalInner parse_inner_arg(const std::string& s) {
  auto c = s.find(';');
  Exponent h = c == std::string::npos ? Exponent{0, 0} : parse_exponent(s.substr(c + 1));
  return inner_from(parse(s.substr(0, c)), h);
}

std::string fmt(double x, int digits) {
  std::ostringstream o;
  o << std::setprecision(digits) << x;
  return o.str();
}

std::string point_text(const TorusPoint& t, int digits) {
  auto c = [&](std::complex<double> z) {
    return fmt(z.real(), digits) + (std::signbit(z.imag()) ? "-" : "+") + fmt(std::abs(z.imag()), digits) + "i";
  };
  return "(" + c(t.z1.center) + ", " + c(t.z2.center) + ")  +/- " + fmt(std::max(t.z1.radius, t.z2.radius), 3);
}

std::string exponent_text(const Exponent& e) {
  std::string s = "(";
  for (std::size_t k = 0; k < e.size(); ++k) s += (k ? "," : "") + std::to_string(e[k]);
  return s + ")";
}

Outcome from_tri(Tri t, json payload, std::string human) {
  Outcome o{"ok", std::move(payload), std::move(human)};
  if (t == Tri::Unknown) o.status = "inconclusive";
  return o;
}

// ---- commands ----

Outcome cmd_parse(const MultiPoly& p) {
  json j{{"polynomial", p.to_string()}, {"nvars", p.nvars()}};
  if (!p.is_zero()) {
    j["total_degree"] = p.total_degree();
    j["multidegree"] = p.multidegree();
  }
  return {"ok", j, p.to_string()};
}

Outcome cmd_reflect(const MultiPoly& p) {
  MultiPoly r = reflect(p);
  return {"ok", {{"polynomial", p.to_string()}, {"reflection", r.to_string()}}, r.to_string()};
}

Outcome cmd_symmetry(const MultiPoly& p) {
  SymmetryResult s = essential_symmetry(p);
  json mm = json::array();
  for (const auto& e : s.mismatch) mm.push_back(e);
  json j{{"polynomial", p.to_string()}, {"symmetric", s.symmetric}, {"tau", s.tau ? json(s.tau->to_string()) : json()},
         {"mismatch", mm}};
  std::string h = s.symmetric ? "essentially symmetric, tau = " + s.tau->to_string() : "not essentially symmetric";
  if (!s.symmetric && !s.mismatch.empty()) {
    h += "; mismatch at";
    for (const auto& e : s.mismatch) h += " " + exponent_text(e);
  }
  return {"ok", j, h};
}

Outcome cmd_classify(const MultiPoly& p, const std::vector<std::string>& pts) {
  std::vector<std::pair<GaussianRational, GaussianRational>> points;
  for (const auto& s : pts) points.push_back(parse_point(s));
  SetClassification c = classify(p, points);
  json j = to_json(c);
  j["verdict"] = to_string(c.set_verdict);
  if (c.factors.size() == 1 && points.empty()) j["evidence"] = evidence_kind(c.factors[0].certificate.evidence);
  std::string h = "verdict: " + to_string(c.set_verdict);
  for (const auto& f : c.factors) {
    h += "\n  " + f.factor.to_string() + (f.multiplicity > 1 ? "  ^" + std::to_string(f.multiplicity) : "") + ": " +
         to_string(f.certificate.verdict) + " (" + evidence_kind(f.certificate.evidence) + ")";
  }
  for (const auto& pc : c.points)
    h += "\n  point (" + pc.z1.to_string() + ", " + pc.z2.to_string() + "): " + (pc.on_torus ? "Toral" : "Atoral");
  return {"ok", j, h};
}

Outcome cmd_split(const MultiPoly& p) {
  Split s = toral_atoral_split(p);
  json j{{"toral", s.toral.to_string()}, {"atoral", s.atoral.to_string()}, {"unit", s.unit.to_string()}};
  return {"ok", j, "toral: " + s.toral.to_string() + "\natoral: " + s.atoral.to_string() + "\nunit: " + s.unit.to_string()};
}

Outcome cmd_torus(const MultiPoly& p, const Globals& g, int samples) {
  TorusIntersection t = torus_intersection(p, samples);
  DisjointnessResult d = disjoint_from_bidisks(p, g.tol.value_or(1e-6));
  json j{{"polynomial", p.to_string()}, {"intersection", to_json(t)}, {"disjoint_from_bidisks", to_json(d)}};
  std::string h = std::string("torus trace: ") + (t.one_dimensional ? "one-dimensional" : "finite") + ", " +
                  std::to_string(t.finite_points.size()) + " isolated point(s)";
  for (const auto& pt : t.finite_points) h += "\n  " + point_text(pt, g.precision);
  h += "\ndisjoint from D^2 and E^2: " + to_string(d.status);
  if (d.witness) h += "\n  witness in " + d.region + ": " + point_text(*d.witness, g.precision);
  if (!d.reason.empty()) h += "\n  " + d.reason;
  return from_tri(d.status, j, h);
}

Outcome cmd_distinguished(const MultiPoly& p, const Globals& g) {
  DistinguishedResult r = distinguished_variety_check(p, g.tol.value_or(1e-6));
  std::string h = "distinguished variety: " + to_string(r.status) + "\n  " + r.reason;
  if (r.counterexample) h += "\n  counterexample: " + point_text(*r.counterexample, g.precision);
  return from_tri(r.status, to_json(r), h);
}

std::string inner_text(const RationalInner& phi) {
  std::string h = "phi = (" + phi.tau.to_string() + ") * z^" + exponent_text(phi.h) + " * (" + reflect(phi.p).to_string() +
                  ") / (" + phi.p.to_string() + ")";
  return h + "\nnumerator: " + phi.numerator.to_string();
}

Outcome cmd_inner_make(const MultiPoly& p, const Exponent& h, const Globals& g) {
  RationalInner phi = make_inner(p, h);
  InnerSampleReport s = verify_inner(phi, 200, g.seed);
  json j = to_json(phi);
  j["sampled"] = {{"samples", s.samples_used}, {"max_deviation", s.max_deviation}, {"max_radius_bound", s.max_radius_bound}};
  return {"ok", j, inner_text(phi) + "\nmax ||phi| - 1| on " + std::to_string(s.samples_used) + " torus samples: " +
                       fmt(s.max_deviation, 3)};
}

Outcome cmd_inner_canon(const MultiPoly& p, const Exponent& h) {
  RationalInner c = canonicalize(inner_from(p, h));
  return {"ok", to_json(c), inner_text(c)};
}

Outcome cmd_inner_equal(const std::string& a, const std::string& b) {
  RationalInner x = parse_inner_arg(a), y = parse_inner_arg(b);
  auto c = essentially_equal(x, y);
  json j{{"equal", c.has_value()}, {"constant", c ? json(c->to_string()) : json()}};
  return {"ok", j, c ? "essentially equal, phi = (" + c->to_string() + ") * psi" : "not essentially equal"};
}

Outcome cmd_inner_singular(const MultiPoly& p, const Exponent& h, const Globals& g) {
  auto s = singular_set(inner_from(p, h));
  json pts = json::array();
  std::string txt = std::to_string(s.size()) + " singular point(s)";
  for (const auto& t : s) {
    pts.push_back(to_json(t));
    txt += "\n  " + point_text(t, g.precision);
  }
  return {"ok", {{"singular_set", pts}}, txt};
}

Outcome cmd_inner_level(const MultiPoly& p, const Exponent& h, const std::string& alpha) {
  LevelSetReport r = level_set_classify(inner_from(p, h), parse_scalar(alpha));
  std::string txt = "level set phi = " + r.alpha.to_string() + " (" + to_string(r.location) + "): " + to_string(r.verdict) +
                    "\n  polynomial: " + r.level_polynomial.to_string();
  return {"ok", to_json(r), txt};
}

PickProblem read_problem(const Globals& g, const std::string& arg) { return pick_problem_from_json(read_json(g, arg)); }

SolveOptions solve_options(const Globals& g) {
  SolveOptions o;
  if (g.tol) o.tol = *g.tol;
  return o;
}

Outcome cmd_pick_solve(const PickProblem& pr, const Globals& g) {
  SolveResult r = solvable(pr, solve_options(g));
  json j{{"feasible", r.status == Feasibility::Feasible}, {"status", to_string(r.status)}, {"margin", r.margin},
         {"margin_upper", r.margin_upper}};
  std::string h = "solvable: " + to_string(r.status);
  Outcome o{"ok", {}, ""};
  if (r.status == Feasibility::Inconclusive) o.status = "inconclusive";
  if (r.status != Feasibility::Inconclusive) {
    ExtremalReport e = is_extremal(pr, 1e-4);
    j["rho_star"] = e.norm.rho_star;
    j["extremal"] = e.extremal;
    h += "\nrho* = " + fmt(e.norm.rho_star, g.precision) + (e.extremal ? " (extremal)" : " (not extremal)");
  }
  if (r.certificate) j["certificate"] = to_json(*r.certificate, pr);
  o.payload = j;
  o.human = h;
  return o;
}

Outcome cmd_pick_norm(const PickProblem& pr, const Globals& g) {
  NormResult n = minimal_norm(pr, g.tol.value_or(1e-5));
  json j{{"rho_star", n.rho_star}, {"lower", n.lower}, {"upper", n.upper}, {"probes", n.probes},
         {"inconclusive_probes", n.inconclusive_probes}};
  if (n.certificate) j["certificate"] = to_json(*n.certificate, pr, n.certificate_scale);
  return {"ok", j,
          "rho* = " + fmt(n.rho_star, g.precision) + " in [" + fmt(n.lower, g.precision) + ", " + fmt(n.upper, g.precision) +
              "]"};
}

Outcome cmd_pick_extremal(const PickProblem& pr, const Globals& g, bool minimality) {
  ExtremalReport e = is_extremal(pr, g.tol.value_or(1e-4), minimality);
  json j{{"extremal", e.extremal}, {"margin", e.margin}, {"rho_star", e.norm.rho_star}};
  if (e.minimal) j["minimal"] = *e.minimal;
  if (e.norm.certificate) j["certificate"] = to_json(*e.norm.certificate, pr, e.norm.certificate_scale);
  std::string h = std::string(e.extremal ? "extremal" : "not extremal") + ", rho* = " + fmt(e.norm.rho_star, g.precision);
  if (e.minimal) h += *e.minimal ? ", minimal" : ", not minimal";
  return {"ok", j, h};
}

Outcome cmd_pick_uniqueness(const std::vector<std::string>& given, const std::string& nodes_file, const Globals& g) {
  std::vector<RationalInner> sols;
  for (const auto& s : given) sols.push_back(parse_inner_arg(s));
  std::vector<Node> nodes;
  if (!nodes_file.empty()) nodes = read_problem(g, nodes_file).nodes;
  UniquenessReport u = uniqueness_candidate(sols, nodes);
  json j = to_json(u);
  std::string h;
  if (u.whole_bidisk) {
    h = "all supplied solutions coincide: candidate is the whole bidisk";
  } else {
    h = "B = " + u.B.to_string() + "\nV = " + u.V.to_string();
    if (!u.V.is_constant()) {
      SetVerdict v = classify(u.V).set_verdict;
      j["V_verdict"] = to_string(v);
      h += "  (" + to_string(v) + ")";
    }
    if (!nodes.empty()) h += std::string("\nnodes on V: ") + (u.nodes_on_V ? "yes" : "no");
  }
  if (!u.note.empty()) h += "\n" + u.note;
  return {"ok", j, h};
}

Outcome cmd_plot(const MultiPoly& p, const std::string& path, int samples, const Globals& g) {
  auto rows = plot_rows(p, samples);
  if (path.empty() || path == "-") {
    std::ostringstream o;
    write_csv(rows, o, g.precision);
    return {"ok", {{"rows", rows.size()}, {"csv", o.str()}}, o.str()};
  }
  std::ofstream f(path);
  if (!f) throw DomainError("cannot write " + path);
  write_csv(rows, f, g.precision);
  if (!f) throw InternalError("write to " + path + " failed");
  return {"ok", {{"rows", rows.size()}, {"path", path}}, std::to_string(rows.size()) + " rows written to " + path};
}

int exit_for(const std::string& status) {
  if (status == "ok") return Ok;
  if (status == "inconclusive") return Inconclusive;
  return Internal;
}

}  // namespace

std::vector<PlotRow> plot_rows(const MultiPoly& p, int samples) {
  if (p.nvars() != 2) throw DomainError("plot needs a polynomial in z1, z2");
  if (p.is_zero()) throw DomainError("the zero polynomial vanishes everywhere");
  if (samples < 1) throw DomainError("samples must be positive");
  std::vector<PlotRow> rows;
  if (p.is_constant()) return rows;
  int branch = 0;
  std::vector<TorusPoint> isolated;
  for (const auto& [f, m] : factor_irreducible(p).factors) {
    ToralityCertificate c = classify_irreducible(f);
    if (c.verdict == Verdict::Toral) {
      std::size_t var = f.depends_on(1) ? 1 : 0;
      for (int k = 0; k < samples; ++k) {
        double t = kTwoPi * k / samples;
        FiberReport rep;
        try {
          rep = fiber_report(f, t, var);
        } catch (const PrecisionError&) {
          continue;  // fiber through a singular point
        }
        for (std::size_t j = 0; j < rep.roots.size(); ++j) {
          if (rep.status[j] != CircleStatus::On) continue;
          double a = angle(rep.roots[j].value.center);
          rows.push_back(var == 1 ? PlotRow{t, a, branch} : PlotRow{a, t, branch});
        }
      }
      ++branch;
    } else if (const auto* ns = std::get_if<evidence::NotSymmetric>(&c.evidence)) {
      isolated.insert(isolated.end(), ns->trace.begin(), ns->trace.end());
    } else if (const auto* ft = std::get_if<evidence::FiniteTrace>(&c.evidence)) {
      isolated.insert(isolated.end(), ft->candidates.begin(), ft->candidates.end());
    }
  }
  std::vector<std::pair<double, double>> seen;
  for (const auto& t : isolated) {
    double a = angle(t.z1.center), b = angle(t.z2.center);
    bool dup = std::any_of(seen.begin(), seen.end(),
                           [&](const auto& s) { return std::abs(s.first - a) < 1e-9 && std::abs(s.second - b) < 1e-9; });
    if (dup) continue;
    seen.emplace_back(a, b);
    rows.push_back({a, b, branch++});
  }
  std::sort(rows.begin(), rows.end(), [](const PlotRow& x, const PlotRow& y) {
    return std::tie(x.branch, x.theta, x.phi) < std::tie(y.branch, y.theta, y.phi);
  });
  return rows;
}

void write_csv(const std::vector<PlotRow>& rows, std::ostream& out, int digits) {
  out << "theta,phi,branch\n";
  for (const auto& r : rows) out << fmt(r.theta, digits) << ',' << fmt(r.phi, digits) << ',' << r.branch << '\n';
}

std::vector<VerifyResult> verify_all(const json& j) {
  std::vector<VerifyResult> out;
  if (j.is_object()) {
    auto k = j.find("kind");
    if (k != j.end() && k->is_string() && (*k == "ToralityCertificate" || *k == "AglerCertificate")) {
      out.push_back(verify_certificate(j));
    }
    for (const auto& [key, v] : j.items()) {
      auto sub = verify_all(v);
      out.insert(out.end(), sub.begin(), sub.end());
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      auto sub = verify_all(v);
      out.insert(out.end(), sub.begin(), sub.end());
    }
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Globals g;
  CLI::App app{"Torality, rational inner functions and Pick interpolation on the bidisk", "toral"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tol", g.tol, "Tolerance (command specific; library default when absent)");
  app.add_option("--precision", g.precision, "Significant digits for printed floating-point values")
      ->check(CLI::Range(1, 17));
  app.add_option("--seed", g.seed, "Seed for sampled checks");
  app.add_flag("--json", g.json, "Print the result as JSON");
  app.add_flag("--quiet", g.quiet, "Print nothing on success");
  app.add_flag("--timing", g.timing, "Include the run time in the result");
  app.add_option("--file", g.file, "Read the input from a file");

  std::string expr, expr2, path, alpha, hs = "0,0", nodes_file;
  std::vector<std::string> points, solutions;
  int samples = 64;
  bool minimality = false;
  std::function<Outcome()> action;

  auto poly_cmd = [&](const char* name, const char* help, std::function<Outcome(const MultiPoly&)> f) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("expr", expr, "Polynomial in z1, z2");
    c->callback([&, f] { action = [&, f] { return f(read_poly(g, expr)); }; });
    return c;
  };
  poly_cmd("parse", "Print the canonical form", cmd_parse);
  poly_cmd("reflect", "Print z^d conj(p(1/conj z))", cmd_reflect);
  poly_cmd("symmetry", "Test essential symmetry", cmd_symmetry);
  poly_cmd("classify", "Classify the zero set as toral, atoral or mixed",
           [&](const MultiPoly& p) { return cmd_classify(p, points); })
      ->add_option("--point", points, "Isolated point a,b of the set (repeatable)");
  poly_cmd("split", "Split into toral and atoral parts", cmd_split);
  poly_cmd("torus", "Torus intersection and bidisk disjointness",
           [&](const MultiPoly& p) { return cmd_torus(p, g, samples); })
      ->add_option("--samples", samples, "Samples per arc");
  auto* plot = poly_cmd("plot", "Write torus points of Z_p as CSV",
                        [&](const MultiPoly& p) { return cmd_plot(p, path, samples, g); });
  plot->add_option("-o,--output", path, "CSV path (default: stdout)");
  plot->add_option("--samples", samples, "Angles sampled per toral component");

  auto* inner = app.add_subcommand("inner", "Rational inner functions");
  inner->require_subcommand(1);
  inner->fallthrough();
  auto inner_cmd = [&](const char* name, const char* help, std::function<Outcome(const MultiPoly&, const Exponent&)> f) {
    auto* c = inner->add_subcommand(name, help);
    c->add_option("expr", expr, "Denominator p");
    c->add_option("--monomial", hs, "Exponent h1,h2 of the monomial factor z^h");
    c->callback([&, f] { action = [&, f] { return f(read_poly(g, expr), parse_exponent(hs)); }; });
    return c;
  };
  inner_cmd("make", "Build tau z^h reflect(p) / p", [&](const MultiPoly& p, const Exponent& h) {
    return cmd_inner_make(p, h, g);
  });
  inner_cmd("canon", "Canonical form", cmd_inner_canon);
  inner_cmd("singular", "Singular set on the torus", [&](const MultiPoly& p, const Exponent& h) {
    return cmd_inner_singular(p, h, g);
  });
  inner_cmd("level", "Classify a level set", [&](const MultiPoly& p, const Exponent& h) {
    return cmd_inner_level(p, h, alpha);
  })->add_option("--alpha", alpha, "Level value")->required();
  auto* eq = inner->add_subcommand("equal", "Test essential equality of two inner functions given as 'p;h1,h2'");
  eq->add_option("phi", expr, "First function")->required();
  eq->add_option("psi", expr2, "Second function")->required();
  eq->callback([&] { action = [&] { return cmd_inner_equal(expr, expr2); }; });

  auto* pick = app.add_subcommand("pick", "Pick interpolation on the bidisk");
  pick->require_subcommand(1);
  pick->fallthrough();
  auto pick_cmd = [&](const char* name, const char* help, std::function<Outcome(const PickProblem&)> f) {
    auto* c = pick->add_subcommand(name, help);
    c->add_option("problem", path, "Problem JSON file");
    c->callback([&, f] { action = [&, f] { return f(read_problem(g, path)); }; });
    return c;
  };
  pick_cmd("solve", "Search for an Agler certificate", [&](const PickProblem& pr) { return cmd_pick_solve(pr, g); });
  pick_cmd("norm", "Minimal interpolation norm", [&](const PickProblem& pr) { return cmd_pick_norm(pr, g); });
  pick_cmd("extremal", "Extremality test", [&](const PickProblem& pr) {
    return cmd_pick_extremal(pr, g, minimality);
  })->add_flag("--minimal", minimality, "Also test minimality");
  auto* uq = pick->add_subcommand("uniqueness", "Uniqueness candidate from solutions given as 'p;h1,h2'");
  uq->add_option("solutions", solutions, "Inner solutions")->required();
  uq->add_option("--nodes", nodes_file, "Problem file whose nodes are tested against V");
  uq->callback([&] { action = [&] { return cmd_pick_uniqueness(solutions, nodes_file, g); }; });
  auto* dv = pick->add_subcommand("distinguished", "Test whether Z_p cap D^2 is a distinguished variety");
  dv->add_option("expr", expr, "Polynomial in z1, z2");
  dv->callback([&] { action = [&] { return cmd_distinguished(read_poly(g, expr), g); }; });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return UnknownCommand;
  }

  std::string command;
  for (const auto* s = app.get_subcommands().front(); s; s = s->get_subcommands().empty() ? nullptr : s->get_subcommands().front())
    command += (command.empty() ? "" : " ") + s->get_name();

  auto fail = [&](int code, const std::string& kind, const std::string& msg) {
    if (g.json) {
      json j{{"command", command}, {"status", "error"}, {"payload", {{"error", kind}, {"message", msg}}}};
      if (code == Inconclusive) j["status"] = "inconclusive";
      out << j.dump(2) << '\n';
    }
    err << "toral " << command << ": " << msg << '\n';
    return code;
  };

  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = action();
  } catch (const ParseError& e) {
    return fail(InputError, "ParseError", e.what());
  } catch (const NotDivisibleError& e) {
    return fail(InputError, "NotDivisibleError", e.what());
  } catch (const DomainError& e) {
    return fail(InputError, "DomainError", e.what());
  } catch (const PrecisionError& e) {
    return fail(Inconclusive, "PrecisionError", e.what());
  } catch (const InternalError& e) {
    return fail(Internal, "InternalError", e.what());
  } catch (const std::exception& e) {
    return fail(Internal, "InternalError", e.what());
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  if (g.json) {
    json j{{"command", command}, {"status", o.status}, {"payload", o.payload}};
    if (g.timing) j["timing"] = ms;
    out << j.dump(2) << '\n';
  } else if (!g.quiet) {
    out << o.human;
    if (!o.human.empty() && o.human.back() != '\n') out << '\n';
    if (o.status != "ok") out << "status: " << o.status << '\n';
    if (g.timing) out << "time: " << fmt(ms, 3) << " ms\n";
  }
  return exit_for(o.status);
}

}  // namespace toral::cli
