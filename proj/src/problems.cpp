#include "manakov/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace manakov {

ManakovProblem problem_manakov1() {
  ManakovProblem p;
  p.name = "manakov1";
  p.n = 3;
  p.beta = {1.0, 1.0, 1.0};
  const double sigma = 1.0, e = 2.0 / 3.0;
  p.gamma.resize(3, 3);
  p.gamma(0, 0) = sigma; p.gamma(0, 1) = e;     p.gamma(0, 2) = sigma;
  p.gamma(1, 0) = e;     p.gamma(1, 1) = sigma; p.gamma(1, 2) = e;
  p.gamma(2, 0) = sigma; p.gamma(2, 1) = e;     p.gamma(2, 2) = sigma;
  p.a = -4.0 * std::numbers::pi;
  p.b = 4.0 * std::numbers::pi;
  p.T = 100.0;

  const double a0 = 0.3, b0 = 0.3, c0 = 0.3 * std::sqrt(2.0);
  const double ell = 0.5, eps = 0.1, theta = 9.0 * std::numbers::pi / 4.0;
  p.psi0 = [=](double x) {
    return std::vector<std::complex<double>>{
        {a0 * (1.0 - eps * std::cos(ell * x)), 0.0},
        {b0 * (1.0 - eps * std::cos(ell * (x + theta))), 0.0},
        {c0 * (1.0 - eps * std::cos(ell * x)), 0.0},
    };
  };
  return p;
}

ManakovProblem problem_manakov2() {
  ManakovProblem p;
  p.name = "manakov2";
  p.n = 3;
  p.beta = {0.5, 0.5, 0.5};
  const double e = 2.0 / 3.0;
  p.gamma.resize(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) p.gamma(i, j) = 1.0 + e;
  p.a = -20.0;
  p.b = 85.0;
  p.T = 40.0;

  const double alpha[3] = {1.0, 0.6, 0.3};
  const double v[3] = {1.0, 0.1, -1.0};
  const double xc[3] = {0.0, 22.0, 50.0};
  p.psi0 = [=](double x) {
    std::vector<std::complex<double>> out(3);
    for (int j = 0; j < 3; ++j) {
      const double root = std::sqrt(2.0 * alpha[j]);
      const double amp = std::sqrt(2.0 * alpha[j] / (1.0 + e)) /
                         std::cosh(root * (x - xc[j]));
      out[j] = std::polar(amp, v[j] * (x - xc[j]));
    }
    return out;
  };
  return p;
}

ManakovProblem problem_by_name(const std::string& name) {
  if (name == "manakov1") return problem_manakov1();
  if (name == "manakov2") return problem_manakov2();
  throw std::invalid_argument("unknown problem: " + name);
}

}  // namespace manakov
