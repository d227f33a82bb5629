// plusone command-line front end

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "plusone/equivalent.hpp"
#include "plusone/fibration.hpp"
#include "plusone/json_io.hpp"
#include "plusone/verify.hpp"

using namespace plusone;

namespace {

struct Opts {
  std::string input, other, out, backend = "exact", model;
  int order = 8;
  double tol = 1e-10;
  std::uint64_t seed = 1;
  std::vector<std::string> theta, params;
  std::string fixture, gamma = "1";
  std::vector<double> state{0, 0, 1}, points, grid{-0.5, 0.5, 0.25, 1.25, 20, 20};
  std::vector<std::string> basepoint;
  double h = 1e-3;
  int steps = 1000;
};

void emit(const Opts& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) fail(ErrorKind::BadInput, "cannot write " + o.out);
  f << text;
}

template <class S>
std::vector<S> parse_all(const std::vector<std::string>& v) {
  std::vector<S> r;
  for (auto& s : v) r.push_back(parse_complex<S>(s));
  return r;
}

template <class S>
std::array<S, 2> bp_of(const Opts& o, std::array<S, 2> dflt) {
  if (o.basepoint.empty()) return dflt;
  if (o.basepoint.size() != 2) fail(ErrorKind::BadInput, "--basepoint takes two values");
  return {parse_complex<S>(o.basepoint[0]), parse_complex<S>(o.basepoint[1])};
}

template <class S>
Cocycle<S> load_cocycle(const std::string& path, int N) {
  auto c = cocycle_from_json<S>(read_json(path));
  return N < c.order() ? c.truncated(N) : c;
}

// structure from --input or --model
template <class S>
ProjectiveStructure<S> load_structure(const Opts& o) {
  if (!o.input.empty()) return structure_from_json<S>(read_json(o.input));
  if (o.model.empty()) fail(ErrorKind::BadInput, "need --input or --model");
  std::array<S, 2> dflt = o.model == "sl2" ? std::array<S, 2>{S(1), S(0)} : std::array<S, 2>{S(0), S(0)};
  return catalog<S>(o.model, parse_all<S>(o.params), o.order, bp_of<S>(o, dflt)).structure;
}

template <class S>
Pencil<S> load_pencil(const Opts& o) {
  if (!o.input.empty()) return pencil_from_json<S>(read_json(o.input));
  const Trunc T = Trunc::Total;
  int N = o.order;
  using B = BiSeries<S>;
  if (o.fixture == "exy") return {B::constant(S(1), N, T), B(N, T), B(N, T), series_exp(B::x(N, T) * B::y(N, T)), {S(0), S(0)}};
  if (o.fixture == "nodal") return nodal_family<S>(parse_complex<S>(o.gamma), N).pencil;
  if (o.fixture == "sl2+") return sl2_pencils<S>(N).first;
  if (o.fixture == "sl2-") return sl2_pencils<S>(N).second;
  fail(ErrorKind::BadInput, "need --input or --fixture exy|nodal|sl2+|sl2-");
}

template <class S>
Json triples_json(const std::vector<Triple<S>>& w) {
  Json a = Json::array();
  for (auto& t : w) a.push_back(Json::array({scalar_pair(t[0]), scalar_pair(t[1]), scalar_pair(t[2])}));
  return a;
}

template <class S>
int run_algebra(const std::string& cmd, const Opts& o) {
  if (cmd == "normalize") {
    auto r = reduce_to_normal(load_cocycle<S>(o.input, o.order));
    emit(o, canonical(to_json(r.normal)));
  } else if (cmd == "act") {
    if (o.theta.size() != 4) fail(ErrorKind::BadInput, "--theta takes four scalars alpha beta gamma theta");
    auto v = parse_all<S>(o.theta);
    emit(o, canonical(to_json(act(GroupElement<S>{v[0], v[1], v[2], v[3]}, load_cocycle<S>(o.input, o.order)))));
  } else if (cmd == "equivalent") {
    auto w = equivalent(load_cocycle<S>(o.input, o.order), load_cocycle<S>(o.other, o.order), o.seed);
    Json j{{"equivalent", bool(w)}, {"witness", w ? to_json(*w) : Json(nullptr)}};
    emit(o, canonical(j));
  } else if (cmd == "fibrations") {
    auto r = detect(load_cocycle<S>(o.input, o.order), o.order, o.seed);
    Json j{{"classification", class_name(r.classification)},
           {"witnesses", triples_json(r.witnesses)},
           {"residual_count", r.residuals.size()}};
    emit(o, canonical(j));
  } else if (cmd == "liouville") {
    auto L = liouville(load_structure<S>(o));
    Json j{{"L1", to_json(L.L1)}, {"L2", to_json(L.L2)}, {"vanishes", L.L1.is_zero() && L.L2.is_zero()}};
    emit(o, canonical(j));
  } else if (cmd == "pencil") {
    emit(o, canonical(to_json(structure_from_pencil(load_pencil<S>(o)))));
  } else if (cmd == "curvature") {
    emit(o, canonical(Json{{"K", to_json(curvature(load_pencil<S>(o)))}}));
  }
  return 0;
}

Field load_field(const Opts& o) {
  if (!o.input.empty()) {
    auto P = structure_from_json<Float>(read_json(o.input));
    if (P.evaluator) return field_from(*P.evaluator);
    return field_from_series(P, 0.5);
  }
  if (o.model.empty()) fail(ErrorKind::BadInput, "need --input or --model");
  Evaluator e{o.model, {}};
  for (auto& p : o.params) e.params.push_back(parse_complex<Float>(p).to_complex());
  evaluate(e, 0.0, 0.0);
  return field_from(e);
}

std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

int run_numeric(const std::string& cmd, const Opts& o) {
  Field F = load_field(o);
  std::ostringstream out;
  if (cmd == "geodesic") {
    if (o.state.size() != 3) fail(ErrorKind::BadInput, "--state takes x y z");
    auto tr = integrate(F, GeoState{o.state[0], o.state[1], o.state[2], 0}, o.h, o.steps);
    out << "t,x,y,z\n";
    for (std::size_t k = 0; k < tr.samples.size(); ++k) {
      auto& s = tr.samples[k];
      out << num(double(k) * o.h) << "," << num(s.x) << "," << num(s.y) << "," << num(s.slope()) << "\n";
    }
  } else {
    if (o.points.size() != 8) fail(ErrorKind::BadInput, "--points takes x1 y1 ... x4 y4");
    if (o.grid.size() != 6) fail(ErrorKind::BadInput, "--grid takes x0 x1 y0 y1 nx ny");
    std::array<std::array<double, 2>, 4> p;
    for (int k = 0; k < 4; ++k) p[k] = {o.points[2 * k], o.points[2 * k + 1]};
    Grid g{o.grid[0], o.grid[1], o.grid[2], o.grid[3], int(o.grid[4]), int(o.grid[5])};
    auto f = cross_ratio_field(F, p, g);
    out << "x,y,re,im,valid\n";
    for (auto& c : f.cells)
      out << num(c.x) << "," << num(c.y) << "," << (c.valid ? num(c.value) : "nan") << ",0," << (c.valid ? 1 : 0) << "\n";
  }
  emit(o, out.str());
  return 0;
}

int run_verify(const Opts& o) {
  auto rep = verify_all(o.seed, o.order);
  Json checks = Json::array();
  for (auto& c : rep.checks) checks.push_back({{"id", c.id}, {"status", status_name(c.status)}, {"detail", c.detail}});
  emit(o, canonical(Json{{"checks", checks}, {"ok", rep.ok()}, {"seed", o.seed}}));
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"(+1)-neighborhood cocycles and planar projective structures"};
  app.require_subcommand(1);
  Opts o;
  auto common = [&](CLI::App* s) {
    s->add_option("--out", o.out, "write output here instead of stdout");
    s->add_option("--order", o.order, "truncation order")->check(CLI::Range(1, 64));
    s->add_option("--backend", o.backend, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    s->add_option("--tol", o.tol, "float tolerance");
    s->add_option("--seed", o.seed, "random seed");
  };
  auto* normalize = app.add_subcommand("normalize", "reduce a prenormal cocycle to normal form");
  normalize->add_option("--input", o.input, "cocycle JSON")->required();
  auto* actc = app.add_subcommand("act", "apply (alpha, beta, gamma, theta) to a normal form");
  actc->add_option("--input", o.input, "cocycle JSON")->required();
  actc->add_option("--theta", o.theta, "alpha beta gamma theta")->required()->expected(4);
  auto* equiv = app.add_subcommand("equivalent", "search a group element between two normal forms");
  equiv->add_option("--input", o.input, "first cocycle JSON")->required();
  equiv->add_option("--other", o.other, "second cocycle JSON")->required();
  auto* fibs = app.add_subcommand("fibrations", "detect transverse fibrations");
  fibs->add_option("--input", o.input, "cocycle JSON")->required();
  auto* liou = app.add_subcommand("liouville", "Liouville invariants of a structure");
  auto* pen = app.add_subcommand("pencil", "projective structure of a pencil");
  auto* curv = app.add_subcommand("curvature", "web curvature of a pencil");
  auto* geo = app.add_subcommand("geodesic", "integrate a geodesic (CSV t,x,y,z)");
  auto* cr = app.add_subcommand("crossratio", "cross-ratio grid (CSV x,y,re,im,valid)");
  auto* ver = app.add_subcommand("verify", "run the example checks");
  for (auto* s : {liou, geo, cr}) {
    s->add_option("--input", o.input, "structure JSON");
    s->add_option("--model", o.model, "catalog tag");
    s->add_option("--params", o.params, "model parameters");
  }
  liou->add_option("--basepoint", o.basepoint, "x0 y0")->expected(2);
  for (auto* s : {pen, curv}) {
    s->add_option("--input", o.input, "pencil JSON");
    s->add_option("--fixture", o.fixture, "exy, nodal, sl2+ or sl2-");
    s->add_option("--gamma", o.gamma, "nodal family parameter");
  }
  geo->add_option("--state", o.state, "x y z")->expected(3);
  geo->add_option("--step", o.h, "step size");
  geo->add_option("--steps", o.steps, "number of steps");
  cr->add_option("--points", o.points, "x1 y1 x2 y2 x3 y3 x4 y4")->required()->expected(8);
  cr->add_option("--grid", o.grid, "x0 x1 y0 y1 nx ny")->expected(6);
  for (auto* s : {normalize, actc, equiv, fibs, liou, pen, curv, geo, cr, ver}) common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (const char* env = std::getenv("PLUSONE_BACKEND")) {
    std::string b = env;
    if (b != "exact" && b != "float") {
      std::cerr << "PLUSONE_BACKEND must be exact or float\n";
      return 2;
    }
    o.backend = b;
  }
  Float::tolerance() = o.tol;
  std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "verify") return run_verify(o);
    if (cmd == "geodesic" || cmd == "crossratio") return run_numeric(cmd, o);
    return o.backend == "exact" ? run_algebra<Exact>(cmd, o) : run_algebra<Float>(cmd, o);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    std::cerr << "BadInput: " << e.what() << "\n";
    return 1;
  }
}
