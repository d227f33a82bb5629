#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "plusone/errors.hpp"

namespace plusone {

// Closed-form (A, B, C, D) for the catalog models, used by the numeric flow.
struct Evaluator {
  std::string id;
  std::vector<std::complex<double>> params;
};

namespace detail {

inline std::complex<double> horner(const std::vector<std::complex<double>>& c, std::size_t lo, std::size_t hi,
                                   std::complex<double> x) {
  std::complex<double> acc = 0;
  for (std::size_t k = hi; k > lo; --k) acc = acc * x + c[k - 1];
  return acc;
}

}  // namespace detail

inline std::array<std::complex<double>, 4> evaluate(const Evaluator& e, std::complex<double> x, std::complex<double> y) {
  using Cd = std::complex<double>;
  const auto& p = e.params;
  auto need = [&](std::size_t n) {
    if (p.size() < n) fail(ErrorKind::EvaluatorDomain, "evaluator " + e.id + " needs " + std::to_string(n) + " parameters");
  };
  if (e.id == "iv") return {Cd(0), Cd(0), Cd(0), Cd(0)};
  if (e.id == "i.a") {
    need(1);
    std::size_t na = std::min(p.size() - 1, std::size_t(p[0].real() + 0.5));
    return {detail::horner(p, 1, 1 + na, x), detail::horner(p, 1 + na, p.size(), x), Cd(0), Cd(1)};
  }
  if (e.id == "i.b") return {detail::horner(p, 0, p.size(), x), Cd(0), std::exp(x), Cd(0)};
  if (e.id == "ii.a") {
    need(2);
    return {p[0] * std::exp(x), p[1], Cd(0), std::exp(-2.0 * x)};
  }
  if (e.id == "ii.b") {
    need(1);
    return {p[0] * std::exp(x), Cd(0), std::exp(-x), Cd(0)};
  }
  if (e.id == "iii") return {Cd(0), Cd(0.5), Cd(0), std::exp(-2.0 * x)};
  if (e.id == "sl2") return {-y * y * y, 3.0 * x * y * y, -3.0 * x * x * y, x * x * x};
  if (e.id == "pencil_exy") return {Cd(0), -y, -x, Cd(0)};
  fail(ErrorKind::UnknownTag, "no evaluator '" + e.id + "'");
}

}  // namespace plusone
