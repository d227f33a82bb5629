#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "plusone/cocycle.hpp"
#include "plusone/flatpencil.hpp"
#include "plusone/symmetry.hpp"

namespace plusone {

using Json = nlohmann::json;

// Scalars: exact as "p/q" strings, float as numbers.
template <class S>
Json scalar_json(const S& v, bool imaginary) {
  if constexpr (S::is_exact) return (imaginary ? v.im : v.re).get_str();
  else return imaginary ? v.v.imag() : v.v.real();
}

template <class S>
S scalar_from(const Json& re, const Json& im) {
  auto text = [](const Json& j) -> std::string {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    fail(ErrorKind::BadInput, "exact scalar must be \"p/q\" or an integer, got " + j.dump());
  };
  if constexpr (S::is_exact) {
    return Exact::parse(text(re), text(im));
  } else {
    auto num = [&](const Json& j) { return j.is_number() ? j.get<double>() : Exact::parse_rational(text(j)).get_d(); };
    return Float(num(re), num(im));
  }
}

// "3", "-1/2", "i", "2-3/4i", "0.25+1e-3i"
template <class S>
S parse_complex(std::string s) {
  std::erase(s, ' ');
  if (s.empty()) fail(ErrorKind::BadInput, "empty scalar");
  auto real_part = [](const std::string& t) -> S {
    if constexpr (S::is_exact) return Exact(Exact::parse_rational(t));
    else {
      try {
        std::size_t used = 0;
        double d = std::stod(t, &used);
        if (used == t.size()) return Float(d);
      } catch (const std::exception&) {
      }
      if (t.find('/') != std::string::npos) return Float(Exact::parse_rational(t).get_d());
      fail(ErrorKind::BadInput, "not a number: " + t);
    }
  };
  if (s.back() != 'i') return real_part(s);
  std::string body = s.substr(0, s.size() - 1);
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;)
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      cut = k;
      break;
    }
  std::string re = cut == std::string::npos ? "0" : body.substr(0, cut);
  std::string im = cut == std::string::npos ? body : body.substr(cut);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  if (im[0] == '+') im = im.substr(1);
  return real_part(re) + real_part(im) * S::i();
}

template <class S>
Json scalar_pair(const S& v) {
  return Json::array({scalar_json(v, false), scalar_json(v, true)});
}

template <class S>
S scalar_from_pair(const Json& j) {
  if (j.is_array() && j.size() == 2) return scalar_from<S>(j[0], j[1]);
  if (j.is_string()) return parse_complex<S>(j.get<std::string>());
  return scalar_from<S>(j, Json(0));
}

template <class S>
Json to_json(const BiSeries<S>& f) {
  std::vector<std::tuple<int, int, S>> t;
  f.for_each([&](int m, int n, const S& c) { t.emplace_back(m, n, c); });
  std::sort(t.begin(), t.end(), [](auto& a, auto& b) {
    return std::get<1>(a) != std::get<1>(b) ? std::get<1>(a) < std::get<1>(b) : std::get<0>(a) < std::get<0>(b);
  });
  Json terms = Json::array();
  for (auto& [m, n, c] : t) terms.push_back({m, n, scalar_json(c, false), scalar_json(c, true)});
  return {{"N", f.order()}, {"terms", terms}};
}

template <class S>
BiSeries<S> series_from_json(const Json& j, Trunc mode) {
  if (!j.is_object() || !j.contains("N") || !j.contains("terms")) fail(ErrorKind::BadInput, "series needs N and terms");
  BiSeries<S> f(j.at("N").get<int>(), mode);
  for (auto& t : j.at("terms")) {
    if (!t.is_array() || t.size() != 4) fail(ErrorKind::BadInput, "term must be [m, n, re, im]");
    int m = t[0].get<int>(), n = t[1].get<int>();
    if (mode == Trunc::Total && (m < 0 || n < 0)) fail(ErrorKind::BadInput, "power series term with negative exponent");
    f.add(m, n, scalar_from<S>(t[2], t[3]));
  }
  return f;
}

template <class S>
Json to_json(const Cocycle<S>& c) {
  std::string form = c.is_normal() ? "normal" : c.is_prenormal() ? "prenormal" : "raw";
  return {{"N", c.order()}, {"a", to_json(c.a_part())["terms"]}, {"b", to_json(c.b_part())["terms"]}, {"form", form}};
}

template <class S>
Cocycle<S> cocycle_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("N")) fail(ErrorKind::BadInput, "cocycle needs N");
  int N = j.at("N").get<int>();
  auto part = [&](const char* k) {
    return series_from_json<S>(Json{{"N", N}, {"terms", j.value(k, Json::array())}}, Trunc::YDeg);
  };
  Cocycle<S> c = Cocycle<S>::from_deviation(part("a"), part("b"));
  if (j.contains("form")) {
    std::string f = j.at("form").get<std::string>();
    if (f == "normal" && !c.is_normal()) fail(ErrorKind::NotNormal, "cocycle marked normal is not");
    if (f == "prenormal" && !c.is_prenormal()) fail(ErrorKind::NotPrenormal, "cocycle marked prenormal is not");
  }
  return c;
}

template <class S>
Json to_json(const GroupElement<S>& t) {
  return Json::array({scalar_pair(t.alpha), scalar_pair(t.beta), scalar_pair(t.gamma), scalar_pair(t.theta)});
}

template <class S>
Json to_json(const ProjectiveStructure<S>& P) {
  Json ev = nullptr;
  if (P.evaluator) {
    Json ps = Json::array();
    for (auto& z : P.evaluator->params) ps.push_back({z.real(), z.imag()});
    ev = {{"id", P.evaluator->id}, {"params", ps}};
  }
  return {{"A", to_json(P.A)},
          {"B", to_json(P.B)},
          {"C", to_json(P.C)},
          {"D", to_json(P.D)},
          {"evaluator", ev},
          {"basepoint", Json::array({scalar_pair(P.basepoint[0]), scalar_pair(P.basepoint[1])})}};
}

template <class S>
std::array<S, 2> basepoint_from(const Json& j) {
  if (!j.contains("basepoint")) return {S(0), S(0)};
  auto& b = j.at("basepoint");
  if (!b.is_array() || b.size() != 2) fail(ErrorKind::BadInput, "basepoint must be [x0, y0]");
  return {scalar_from_pair<S>(b[0]), scalar_from_pair<S>(b[1])};
}

template <class S>
ProjectiveStructure<S> structure_from_json(const Json& j) {
  ProjectiveStructure<S> P;
  P.A = series_from_json<S>(j.at("A"), Trunc::Total);
  P.B = series_from_json<S>(j.at("B"), Trunc::Total);
  P.C = series_from_json<S>(j.at("C"), Trunc::Total);
  P.D = series_from_json<S>(j.at("D"), Trunc::Total);
  P.basepoint = basepoint_from<S>(j);
  if (j.contains("evaluator") && !j.at("evaluator").is_null()) {
    Evaluator e{j.at("evaluator").at("id").get<std::string>(), {}};
    for (auto& p : j.at("evaluator").value("params", Json::array())) {
      if (p.is_array()) e.params.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
      else e.params.emplace_back(p.get<double>(), 0.0);
    }
    P.evaluator = e;
  }
  return P;
}

template <class S>
Json to_json(const Pencil<S>& p) {
  return {{"omega0", {{"P", to_json(p.P)}, {"Q", to_json(p.Q)}}},
          {"omegaInf", {{"R", to_json(p.R)}, {"S", to_json(p.S)}}},
          {"basepoint", Json::array({scalar_pair(p.basepoint[0]), scalar_pair(p.basepoint[1])})}};
}

template <class S>
Pencil<S> pencil_from_json(const Json& j) {
  auto s = [](const Json& v) { return series_from_json<S>(v, Trunc::Total); };
  auto& w0 = j.at("omega0");
  auto& wi = j.at("omegaInf");
  return {s(w0.at("P")), s(w0.at("Q")), s(wi.at("R")), s(wi.at("S")), basepoint_from<S>(j)};
}

inline Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::BadInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    fail(ErrorKind::BadInput, path + ": " + e.what());
  }
}

// sorted keys (std::map) and shortest round-trip doubles
inline std::string canonical(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace plusone
