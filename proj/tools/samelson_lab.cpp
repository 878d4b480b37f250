// samelson-lab: command-line front end.
// Exit codes: 0 success, 1 failed check or computation error, 2 usage error.

#include "CLI11.hpp"
#include "samelson/flow.hpp"
#include "samelson/tanre.hpp"
#include "samelson/verify.hpp"

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace samelson;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string group = "A2";
  std::string torus_j = "default";
};

struct Built {
  LieAlgebra L;
  CartanData cd;
  SamelsonStructure S;
};

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Built build(const Common& c) {
  Built b;
  try {
    b.L = build_algebra(parse_group(c.group));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  b.cd = cartan_decomposition(b.L);
  MatR tj;
  if (c.torus_j == "default" || c.torus_j == "mixing" || c.torus_j == "product")
    tj = torus_complex_structure(b.L, b.cd, parse_torus_j_kind(c.torus_j));
  else
    tj = surd_matrix_from_json(read_json(c.torus_j));
  b.S = build_samelson_structure(b.L, b.cd, tj);
  spdlog::info("built {} (dimension {}, {} irreducible components)", c.group, b.L.dimension, b.S.components.size());
  return b;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw UsageError("cannot write " + out);
  f << text;
  spdlog::info("wrote {}", out);
}

MatD parse_metric(const nlohmann::json& j, const Built& b) {
  const MatD J = to_double(b.S.J);
  if (j.is_array()) {
    const auto n = static_cast<Eigen::Index>(j.size());
    MatD g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index k = 0; k < n; ++k) g(i, k) = j.at(i).at(k).get<double>();
    return g;
  }
  if (j.contains("lambda")) {
    std::vector<Rational> lambda;
    for (const auto& x : j["lambda"]) lambda.push_back(parse_rational(x.is_string() ? x.get<std::string>() : x.dump()));
    return to_double(biinvariant_metric(b.S, b.L, lambda));
  }
  if (j.contains("family")) {
    const auto& f = j["family"];
    return family_metric(b.L, J, f.at(0).get<double>(), f.at(1).get<double>(),
                         {f.at(2).get<double>(), f.size() > 3 ? f.at(3).get<double>() : 0.0});
  }
  throw UsageError("metric JSON must be a matrix, {\"lambda\": [...]} or {\"family\": [alpha, beta, re u, im u]}");
}

void configure_logging() {
  spdlog::set_default_logger(spdlog::stderr_logger_mt("samelson-lab"));
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* lvl = std::getenv("SAMELSON_LAB_LOG")) spdlog::set_level(spdlog::level::from_str(lvl));
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"samelson-lab: Samelson complex structures, Bismut geometry, pluriclosed flow, Aeppli cohomology"};
  app.require_subcommand(1);

  Common common;
  std::string out;
  std::uint64_t seed = 0;
  bool full = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--group", common.group, "group type, e.g. A2, A1+A1, A2+T2")->capture_default_str();
    sub->add_option("--torus-j", common.torus_j, "default, mixing, product or a JSON matrix file")->capture_default_str();
    sub->add_option("--out", out, "output file (stdout when omitted)");
  };

  CLI::App* algebra = app.add_subcommand("algebra", "build the algebra and complex structure, dump JSON");
  add_common(algebra);

  int truncation = 6;
  CLI::App* coh = app.add_subcommand("cohomology", "build the bigraded model and print its cohomology");
  add_common(coh);
  coh->add_option("--truncation", truncation, "bound on total degree")->capture_default_str()->check(CLI::Range(1, 12));
  coh->add_flag("--full", full, "JSON with the model and the zig-zag decomposition");

  FlowConfig cfg;
  std::string metric;
  double amplitude = 0.1;
  std::string endpoint;
  CLI::App* flow = app.add_subcommand("flow", "integrate the pluriclosed flow, write the CSV trace");
  add_common(flow);
  flow->add_option("--metric", metric, "JSON metric file; default: seeded perturbation of the bi-invariant metric");
  flow->add_option("--amplitude", amplitude, "relative perturbation size")->capture_default_str();
  flow->add_option("--dt", cfg.dt)->capture_default_str()->check(CLI::PositiveNumber);
  flow->add_option("--t-max", cfg.t_max)->capture_default_str()->check(CLI::PositiveNumber);
  flow->add_option("--tol", cfg.eps_conv, "convergence tolerance on |flow rhs|")->capture_default_str();
  flow->add_option("--seed", seed)->capture_default_str();
  flow->add_option("--endpoint", endpoint, "endpoint JSON file (stdout when omitted)");

  CLI::App* central = app.add_subcommand("solve-central", "solve the central square system");
  add_common(central);

  CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--seed", seed)->capture_default_str();
  verify->add_option("--out", out, "JSON report file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (algebra->parsed()) {
      Built b = build(common);
      nlohmann::json j{{"algebra", to_json(b.L)}, {"cartan", to_json(b.cd)}, {"samelson", to_json(b.S)}};
      emit(out, j.dump(2) + "\n");
    } else if (coh->parsed()) {
      Built b = build(common);
      TanreModel M = build_model(b.L, b.cd, b.S, truncation);
      CohomologyTable t = cohomology(M.complex);
      if (full) {
        nlohmann::json j{{"model", to_json(M)}, {"cohomology", to_json(t)}};
        nlohmann::json pieces = nlohmann::json::array();
        for (const auto& p : zigzag_decompose(M.complex).pieces) pieces.push_back(p.describe());
        j["zigzags"] = pieces;
        if (truncation >= 4) j["aeppli_h11"] = aeppli_h11(M).dimension;
        emit(out, j.dump(2) + "\n");
      } else {
        std::string text = text_grid(t);
        if (truncation >= 4) text += "h^{1,1}_A = " + std::to_string(aeppli_h11(M).dimension) + "\n";
        emit(out, text);
      }
    } else if (flow->parsed()) {
      cfg.validate();
      Built b = build(common);
      const MatD J = to_double(b.S.J);
      AeppliFrame F = aeppli_frame(b.L, b.S);
      MatD g0;
      if (!metric.empty()) {
        g0 = parse_metric(read_json(metric), b);
      } else {
        std::mt19937_64 rng(seed);
        MatD gb = to_double(biinvariant_metric(b.S, b.L, std::vector<Rational>(b.S.components.size(), Rational(1))));
        g0 = pluriclosed_perturbation(F, J, gb, amplitude, rng);
      }
      FlowResult run = integrate_flow(b.L, J, g0, cfg, &F);
      spdlog::info("flow {} after {} steps", run.status, run.steps);
      emit(out, trajectory_csv(run));
      nlohmann::json ep = endpoint_json(run);
      ep["torsion_residual"] = torsion_residual(b.L, J, run);
      if (endpoint.empty())
        std::cerr << ep.dump(2) << "\n";
      else
        emit(endpoint, ep.dump(2) + "\n");
      return run.converged ? 0 : 1;
    } else if (central->parsed()) {
      Built b = build(common);
      TanreModel M = build_model(b.L, b.cd, b.S, 2);
      CentralSystem cs = central_square_solve(M);
      nlohmann::json sols = nlohmann::json::array();
      for (std::size_t k = 0; k < cs.Q.size(); ++k) {
        nlohmann::json bs = nlohmann::json::array();
        for (const Surd& x : cs.b[k]) bs.push_back(to_string(x));
        sols.push_back({{"A", matrix_to_json(cs.A[k])}, {"Q", matrix_to_json(cs.Q[k])}, {"b", bs}});
      }
      nlohmann::json j{{"solution_dim", cs.solution_dim},
                       {"antisymmetric_dim", cs.antisymmetric_dim},
                       {"eigen_relations", cs.eigen_relations},
                       {"j_invariant", cs.j_invariant},
                       {"solutions", sols}};
      emit(out, j.dump(2) + "\n");
    } else if (verify->parsed()) {
      VerificationReport r = run_verify_suite(seed);
      std::cout << report_text(r);
      if (!out.empty()) emit(out, to_json(r).dump(2) + "\n");
      return r.all_pass() ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
