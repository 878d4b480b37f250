#include "doctest.h"
#include "samelson/flow.hpp"
#include "samelson/tanre.hpp"

using namespace samelson;

namespace {

struct Setup {
  LieAlgebra L;
  CartanData cd;
  SamelsonStructure S;
  MatD J, g;
};

Setup setup(const char* group, TorusJKind kind = TorusJKind::Default) {
  Setup s{build_algebra(parse_group(group)), {}, {}, {}, {}};
  s.cd = cartan_decomposition(s.L);
  s.S = build_samelson_structure(s.L, s.cd, torus_complex_structure(s.L, s.cd, kind));
  s.J = to_double(s.S.J);
  s.g = to_double(biinvariant_metric(s.S, s.L, std::vector<Rational>(s.S.components.size(), Rational(1))));
  return s;
}

double inf_norm(const MatD& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("Bismut flat metrics are fixed points") {
  Setup s = setup("A2");
  CHECK(inf_norm(flow_rhs(s.L, s.J, s.g)) < 1e-10);
  CHECK(inf_norm(flow_rhs(s.L, s.J, MatD(2.0 * s.g))) < 1e-10);
  Setup t = setup("A2+T2");
  CHECK(inf_norm(flow_rhs(t.L, t.J, family_metric(t.L, t.J, 1, 1, 0.3))) < 1e-10);
  Setup u = setup("A2+A2", TorusJKind::Product);
  MatD g2 = to_double(biinvariant_metric(u.S, u.L, {Rational(1), Rational(3)}));
  CHECK(inf_norm(flow_rhs(u.L, u.J, g2)) < 1e-10);
}

TEST_CASE("a fixed point run converges immediately") {
  Setup s = setup("A2");
  FlowConfig cfg;
  cfg.t_max = 1;
  FlowResult r = integrate_flow(s.L, s.J, s.g, cfg);
  CHECK(r.status == "converged");
  CHECK(r.steps == cfg.sustain);
  CHECK(inf_norm(MatD(r.end().g - s.g)) < 1e-12);
}

TEST_CASE("non-pluriclosed metrics are rejected") {
  Setup s = setup("A2");
  std::mt19937_64 rng(3);
  MatD g = random_hermitian_metric(s.g, s.J, 0.2, rng);
  REQUIRE(curvature_report<double>(s.L, s.J, g).pluriclosed_residual > 1e-4);
  CHECK_THROWS_AS(flow_rhs(s.L, s.J, g), std::domain_error);
  CHECK_THROWS_AS(integrate_flow(s.L, s.J, g, FlowConfig{}), std::domain_error);
  FlowConfig bad;
  bad.dt = 0;
  CHECK_THROWS_AS(integrate_flow(s.L, s.J, s.g, bad), std::invalid_argument);
}

TEST_CASE("Aeppli frame dimension matches the model") {
  for (const char* g : {"A2", "A1+A1", "A2+T2"}) {
    CAPTURE(g);
    Setup s = setup(g);
    AeppliFrame F = aeppli_frame(s.L, s.S);
    TanreModel M = build_model(s.L, s.cd, s.S, 4);
    CHECK(F.dimension == aeppli_h11(M).dimension);
    CHECK(F.metric_reps == static_cast<int>(s.S.components.size()));
    // the metric form of g itself has coordinate 1 on each unit component rep
    Eigen::VectorXd c = aeppli_coordinates(F, s.J, s.g);
    for (int k = 0; k < F.metric_reps; ++k) CHECK(c(k) == doctest::Approx(1.0));
    for (int k = F.metric_reps; k < F.dimension; ++k) CHECK(std::abs(c(k)) < 1e-12);
  }
}

TEST_CASE("perturbations are pluriclosed and Hermitian") {
  Setup s = setup("A2");
  AeppliFrame F = aeppli_frame(s.L, s.S);
  std::mt19937_64 rng(11);
  MatD g = pluriclosed_perturbation(F, s.J, s.g, 0.1, rng);
  CHECK(inf_norm(MatD(g - s.g)) == doctest::Approx(0.1 * inf_norm(s.g)));
  CHECK(inf_norm(MatD(s.J.transpose() * g * s.J - g)) < 1e-12);
  CHECK(curvature_report<double>(s.L, s.J, g).pluriclosed_residual < 1e-10);
  CHECK(inf_norm(flow_rhs(s.L, s.J, g)) > 1e-4);
}

TEST_CASE("perturbed su(3) flows back to a Bismut flat metric") {
  Setup s = setup("A2");
  AeppliFrame F = aeppli_frame(s.L, s.S);
  std::mt19937_64 rng(1);
  MatD g0 = pluriclosed_perturbation(F, s.J, s.g, 0.1, rng);
  FlowConfig cfg;
  FlowResult r = integrate_flow(s.L, s.J, g0, cfg, &F);
  CHECK(r.status == "converged");
  CHECK(r.end().t <= 100.0);
  CHECK(r.end().ricci11_norm < 1e-6);
  CHECK(r.end().flat_norm < 1e-5);
  CHECK((r.end().aeppli - r.start().aeppli).cwiseAbs().maxCoeff() < 1e-5);
  double worst_pc = 0;
  for (const auto& x : r.trajectory) worst_pc = std::max(worst_pc, x.pluriclosed_residual);
  CHECK(worst_pc < cfg.eps_pc);
  CHECK(torsion_residual(s.L, s.J, r) < 1e-6);
  CHECK(trajectory_csv(r).rfind("t,g_0_0", 0) == 0);
  nlohmann::json j = endpoint_json(r);
  CHECK(j["status"] == "converged");
  CHECK(j["aeppli_drift"].get<double>() < 1e-5);
}
