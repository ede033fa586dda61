#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sdamp/damping.hpp"
#include "sdamp/error.hpp"
#include "sdamp/evolution.hpp"
#include "sdamp/models.hpp"
#include "test_util.hpp"

using namespace sdamp;
using namespace testutil;
using std::numbers::pi;

namespace {

CVec kdv_soliton(const Grid& g, double t) {
  return sample(g, [&](double x) {
    const double s = sech(x - 4.0 * t);
    return cplx(2.0 * s * s);
  });
}

CVec nls_soliton(const Grid& g, double eta, double v, double t) {
  return sample(g, [&](double x) {
    return eta * sech(eta * (x - 2 * v * t)) * std::exp(cplx(0, v * x + (eta * eta - v * v) * t));
  });
}

EvolveSpec undamped(PdeModel model, double dt, double t_final) {
  EvolveSpec s{.model = std::move(model), .dt = dt, .t_final = t_final, .damping = {},
               .snapshot_times = {}};
  return s;
}

}  // namespace

TEST_CASE("every model maps zero to zero") {
  const Grid g = make_grid(10.0, 64);
  for (const auto& name : model_names()) {
    const PdeModel m = make_model(name, g, RiemannContext{0.0, default_riemann_epsilon()});
    const SpectralField out = m.F(SpectralField::zeros(g));
    CAPTURE(name);
    CHECK(max_abs(out.coeffs) == 0.0);
  }
  CHECK_THROWS_AS(make_model("burgers", g), ConfigError);
}

TEST_CASE("linear symbols") {
  const Grid g = make_grid(100.0, 64);
  const PdeModel kdv = kdv_model(g);
  CHECK(std::abs(kdv.linear.entries[g.index_of(1)] - std::pow(cplx(0, pi / 100), 3)) < 1e-20);

  const PdeModel kaw = kawahara_model(g, {});
  for (std::size_t k = 0; k < g.size(); ++k) {
    const cplx d(0, pi * static_cast<double>(g.wavenumber(k)) / 100.0);
    cplx expected = std::pow(d, 3) + std::pow(d, 5);
    if (k == g.size() / 2) expected = 0.0;  // odd powers zero the Nyquist mode
    CHECK(std::abs(kaw.linear.entries[k] - expected) <= 1e-15 * (1 + std::abs(expected)));
    CHECK(kaw.linear.entries[k].real() == 0.0);
  }
  CHECK(model_uses_antiderivative("kawahara"));
  CHECK(model_uses_antiderivative("riemann-kdv"));
  CHECK_FALSE(model_uses_antiderivative("kdv"));
}

TEST_CASE("KdV soliton") {
  const Grid g = make_grid(30.0, 1024);
  const EvolutionResult r = evolve(kdv_soliton(g, 0.0), undamped(kdv_model(g), 1e-3, 1.0));
  CHECK(r.steps_taken == 1000);
  CHECK(max_diff(inverse(r.final_field), kdv_soliton(g, 1.0)) <= 1e-6);
}

TEST_CASE("NLS plane wave keeps its modulus") {
  const double L = 10.0;
  const Grid g = make_grid(L, 64);
  const double A = 0.8, k = 2 * pi / L;
  auto exact = [&](double t) {
    return sample(g, [&](double x) { return A * std::exp(cplx(0, k * x - (k * k - 2 * A * A) * t)); });
  };
  const EvolutionResult r = evolve(exact(0.0), undamped(nls_model(g), 1e-3, 0.5));
  const CVec q = inverse(r.final_field);
  double worst = 0.0;
  for (const auto& z : q) worst = std::max(worst, std::abs(std::abs(z) - A));
  CHECK(worst <= 1e-8);
  CHECK(max_diff(q, exact(0.5)) <= 1e-8);
}

TEST_CASE("NLS bright soliton") {
  const Grid g = make_grid(30.0, 1024);
  const EvolutionResult r = evolve(nls_soliton(g, 1.0, 1.0, 0.0), undamped(nls_model(g), 1e-3, 1.0));
  CHECK(max_diff(inverse(r.final_field), nls_soliton(g, 1.0, 1.0, 1.0)) <= 1e-6);
}

TEST_CASE("linearized KdV is a diagonal unitary evolution") {
  const Grid g = make_grid(20.0, 128);
  const CVec q0 = sample(g, [](double x) { return cplx(std::exp(-x * x) * (1 + 0.3 * x)); });
  const SpectralField c0 = forward(g, q0);
  const PdeModel lin = linear_kdv_model(g);
  const EvolutionResult r = evolve(c0, undamped(lin, 0.01, 3.0));
  const DiagonalSymbol e = exp_symbol(lin.linear, -3.0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(std::abs(std::abs(r.final_field.coeffs[k]) - std::abs(c0.coeffs[k])) <= 1e-12);
    CHECK(std::abs(r.final_field.coeffs[k] - c0.coeffs[k] * e.entries[k]) <= 1e-12);
  }
}

TEST_CASE("Eckhaus constant state rotates in phase") {
  const Grid g = make_grid(10.0, 32);
  const double A = 0.9;
  const EvolutionResult r =
      evolve(CVec(g.size(), cplx(A)), undamped(eckhaus_model(g), 1e-3, 1.0));
  const cplx expected = A * std::exp(cplx(0, std::pow(A, 4)));
  CHECK(max_diff(inverse(r.final_field), CVec(g.size(), expected)) <= 1e-8);
}

TEST_CASE("Eckhaus Gaussian with even decay mask stays bounded") {
  const Grid g = make_grid(200.0, 1024);
  EvolveSpec spec = undamped(eckhaus_model(g), 0.01, 10.0);
  spec.damping.mode = DampingMode::ExpOnly;
  spec.damping.f2 = 1000;
  ProfileParams even;
  even.gamma = GammaKind::Even;
  spec.damping.profile = DampingProfile::make(g, even);
  const EvolutionResult r =
      evolve(sample(g, [](double x) { return cplx(std::exp(-x * x)); }), spec);
  const CVec q = inverse(r.final_field);
  for (const auto& z : q) REQUIRE(std::isfinite(std::abs(z)));
  CHECK(max_abs(q) <= 2.0);
}

TEST_CASE("dealias flag zeroes the upper third") {
  const Grid g = make_grid(5.0, 64);
  std::mt19937_64 rng(11);
  PdeModel m = kdv_model(g);
  m.dealias = true;
  const SpectralField out = m.F(SpectralField(g, random_vector(g.size(), rng)));
  for (std::size_t k = 0; k < g.size(); ++k)
    if (std::abs(g.wavenumber(k)) > static_cast<long>(g.size() / 3)) CHECK(out.coeffs[k] == cplx(0.0));
}
