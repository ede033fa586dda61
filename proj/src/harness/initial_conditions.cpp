#include "sdamp/harness/initial_conditions.hpp"

#include <cmath>
#include <numbers>

#include "sdamp/error.hpp"
#include "sdamp/linkdv_analysis.hpp"

namespace sdamp::harness {

const std::vector<InitialCondition>& initial_condition_list() {
  static const std::vector<InitialCondition> list = {
      {"gauss", "1.3*exp(-x^2)", "KdV Gaussian pulse"},
      {"nls-gauss", "(1+x)*exp(i*x - 0.7*x^2)", "NLS modulated Gaussian"},
      {"riemann-step", "logistic(-10*x)", "step from 1 down to 0"},
      {"kawahara-step", "logistic(-10*x) - 1", "step from 0 down to -1"},
      {"two-soliton", "6*exp(-x^2)", "Gaussian shedding two solitons"},
      {"riemann-sech2", "-sech(x)^2", "negative sech^2 well"},
      {"soliton-shelf", "-logistic(10*x) + 1 + exp(-10*(x + 5)^2)", "bump on a step"},
      {"eckhaus-gauss", "exp(-x^2)", "Eckhaus Gaussian"},
      {"kdv-soliton", "2*sech(x)^2", "KdV soliton, kappa = 1"},
      {"nls-soliton", "sech(x)*exp(0.5*i*x)", "NLS bright soliton, eta = 1, v = 0.5"},
      {"linkdv-gauss", "exp(-x^2/4)/(2*sqrt(pi))", "inverse transform of exp(-k^2)"},
      {"zero", "0", "identically zero"},
  };
  return list;
}

Expression resolve_initial_condition(std::string_view ic) {
  if (ic.starts_with("expr:")) return Expression::parse(ic.substr(5));
  for (const auto& entry : initial_condition_list())
    if (entry.name == ic) return Expression::parse(entry.expression);
  throw ConfigError("unknown initial condition '" + std::string(ic) +
                    "' (use a registry name or expr:<expression>)");
}

bool has_analytic_solution(std::string_view ic, std::string_view model) {
  return ic == "zero" || (ic == "kdv-soliton" && model == "kdv") ||
         (ic == "nls-soliton" && model == "nls") || (ic == "linkdv-gauss" && model == "linkdv");
}

CVec analytic_solution(std::string_view ic, std::string_view model, const Grid& grid, double t) {
  if (!has_analytic_solution(ic, model))
    throw ConfigError("no analytic solution for initial condition '" + std::string(ic) +
                      "' under model '" + std::string(model) + "'");
  CVec q(grid.size());
  if (ic == "zero") return q;
  if (ic == "kdv-soliton") {
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double s = 1.0 / std::cosh(grid.point(i) - 4.0 * t);
      q[i] = 2.0 * s * s;
    }
    return q;
  }
  if (ic == "nls-soliton") {
    const double eta = 1.0, v = 0.5;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double x = grid.point(i);
      q[i] = eta / std::cosh(eta * (x - 2.0 * v * t)) *
             std::exp(cplx(0.0, v * x + (eta * eta - v * v) * t));
    }
    return q;
  }
  linkdv::WavePacketParams wp = linkdv::default_params(grid.half_width(), t);
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = linkdv::exact_solution(grid.point(i), t, wp);
  return q;
}

}  // namespace sdamp::harness
