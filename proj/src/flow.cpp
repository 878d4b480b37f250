#include "samelson/flow.hpp"

#include "samelson/exact_linalg.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace samelson {

void FlowConfig::validate() const {
  if (!(dt > 0) || !(t_max > 0) || !(eps_conv > 0) || !(eps_pc > 0) || sustain < 1 || record_every < 1)
    throw std::invalid_argument("flow config: dt, t_max and tolerances must be positive");
}

namespace {

// psi(Jx, Jy, Jz) for an exact 3-form, using the sparsity of J.
Form<Surd> pullback3(const Form<Surd>& psi, const MatR& J) {
  const int n = psi.dim();
  std::vector<std::vector<std::pair<int, Surd>>> cols(n);
  for (int c = 0; c < n; ++c)
    for (int i = 0; i < n; ++i)
      if (!J(i, c).is_zero()) cols[c].push_back({i, J(i, c)});
  Form<Surd> out(n, 3);
  for (std::size_t r = 0; r < out.size(); ++r) {
    auto t = out.tuple(r);
    Surd v(0);
    for (auto [i, a] : cols[t[0]])
      for (auto [j, b] : cols[t[1]])
        for (auto [k, c] : cols[t[2]]) {
          Surd x = psi.at({i, j, k});
          if (!x.is_zero()) v += a * b * c * x;
        }
    out.component(r) = v;
  }
  return out;
}

MatR form_column(const Form<Surd>& f) {
  MatR c(static_cast<Eigen::Index>(f.size()), 1);
  for (std::size_t r = 0; r < f.size(); ++r) c(static_cast<Eigen::Index>(r), 0) = f.component(r);
  return c;
}

Form<Surd> column_form(const MatR& c, int n) {
  Form<Surd> f(n, 2);
  for (std::size_t r = 0; r < f.size(); ++r) f.component(r) = c(static_cast<Eigen::Index>(r), 0);
  return f;
}

// (1,1)-part of a real 2-form: (phi + phi(J., J.)) / 2
Form<Surd> part11_exact(const Form<Surd>& phi, const MatR& J) {
  MatR m = phi.to_matrix();
  MatR p = mul<Surd>(mul<Surd>(transpose<Surd>(J), m), J);
  MatR h = m + p;
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    for (Eigen::Index j = 0; j < h.cols(); ++j) h(i, j) /= Surd(2);
  return Form<Surd>::from_matrix(h);
}

}  // namespace

AeppliFrame aeppli_frame(const LieAlgebra& L, const SamelsonStructure& S) {
  const int n = L.dimension;
  const MatR& J = S.J;
  const auto N2 = static_cast<Eigen::Index>(Form<Surd>(n, 2).size());

  // real (1,1)-forms: phi(J., J.) = phi
  MatR inv = zeros<Surd>(N2, N2);
  for (Eigen::Index r = 0; r < N2; ++r) {
    Form<Surd> e(n, 2);
    e.component(static_cast<std::size_t>(r)) = Surd(1);
    MatR m = e.to_matrix();
    Form<Surd> p = Form<Surd>::from_matrix(mul<Surd>(mul<Surd>(transpose<Surd>(J), m), J));
    MatR col = form_column(p) - form_column(e);
    inv.col(r) = col.col(0);
  }
  MatR V = kernel<Surd>(inv);

  // pluriclosed: d(J d phi) = 0 on V
  const auto N4 = static_cast<Eigen::Index>(Form<Surd>(n, 4).size());
  MatR ddc = zeros<Surd>(N4, V.cols());
  for (Eigen::Index c = 0; c < V.cols(); ++c) {
    Form<Surd> phi = column_form(V.col(c), n);
    Form<Surd> dd = invariant_d<Surd>(L, pullback3(invariant_d<Surd>(L, phi), J));
    ddc.col(c) = form_column(dd).col(0);
  }
  AeppliFrame F;
  F.K = mul<Surd>(V, kernel<Surd>(ddc));

  // (d eta)^{1,1}
  MatR E = zeros<Surd>(N2, 0);
  for (int k = 0; k < n; ++k) {
    Vec<Surd> e(n);
    for (int i = 0; i < n; ++i) e(i) = Surd(i == k ? 1 : 0);
    E = hcat<Surd>(E, form_column(part11_exact(invariant_d<Surd>(L, Form<Surd>::from_vector(e)), J)));
  }
  F.E = column_basis<Surd>(E);

  // preferred representatives: component metric forms omega_c = g_c(J., .)
  MatR preferred = zeros<Surd>(N2, 0);
  for (std::size_t c = 0; c < S.components.size(); ++c) {
    // zero weights are rejected by biinvariant_metric, so isolate component c by difference
    std::vector<Rational> one(S.components.size(), Rational(1)), two = one;
    two[c] = Rational(2);
    MatR gc = biinvariant_metric(S, L, two) - biinvariant_metric(S, L, one);
    preferred = hcat<Surd>(preferred, form_column(Form<Surd>::from_matrix(mul<Surd>(transpose<Surd>(J), gc))));
  }
  MatR chosen = extend_basis<Surd>(F.E, preferred);
  F.metric_reps = static_cast<int>(chosen.cols());
  MatR rest = extend_basis<Surd>(hcat<Surd>(F.E, chosen), F.K);
  F.reps = hcat<Surd>(chosen, rest);
  F.dimension = static_cast<int>(F.reps.cols());

  // left inverse of [reps | E] on its column space
  MatR M = hcat<Surd>(F.reps, F.E);
  MatR Mt = transpose<Surd>(M);
  MatR left = mul<Surd>(inverse<Surd>(mul<Surd>(Mt, M)), Mt);
  F.coord_map = to_double(MatR(left.topRows(F.dimension)));
  return F;
}

Eigen::VectorXd omega_components(const MatD& J, const MatD& g) {
  Form<double> w = Form<double>::from_matrix(MatD(J.transpose() * g));
  Eigen::VectorXd v(static_cast<Eigen::Index>(w.size()));
  for (std::size_t r = 0; r < w.size(); ++r) v(static_cast<Eigen::Index>(r)) = w.component(r);
  return v;
}

Eigen::VectorXd aeppli_coordinates(const AeppliFrame& F, const MatD& J, const MatD& g) {
  return F.coord_map * omega_components(J, g);
}

namespace {

struct Velocity {
  MatD g;
  MatC beta;
};

struct Evaluation {
  Velocity v;
  CurvatureReport<double> rep;
};

Evaluation evaluate(const LieAlgebra& L, const MatD& J, const MatD& g) {
  Evaluation e;
  e.rep = curvature_report<double>(L, J, g);
  e.v.g = -e.rep.ricci11 * J;
  e.v.g = 0.5 * (e.v.g + e.v.g.transpose());  // symmetric up to roundoff already
  e.v.beta = complex_part20(J, e.rep.ricci);
  return e;
}

double inf_norm(const MatD& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

FlowSample sample(double t, const MatD& g, const MatC& beta, const CurvatureReport<double>& rep, const MatD& rhs,
                  const AeppliFrame* frame, const MatD& J) {
  FlowSample s;
  s.t = t;
  s.g = g;
  s.beta = beta;
  s.ricci11_norm = inf_norm(rep.ricci11);
  s.flat_norm = rep.flat_norm;
  s.pluriclosed_residual = rep.pluriclosed_residual;
  s.rhs_norm = inf_norm(rhs);
  if (frame) s.aeppli = aeppli_coordinates(*frame, J, g);
  return s;
}

bool positive_definite(const MatD& g) { return Eigen::LLT<MatD>(g).info() == Eigen::Success; }

}  // namespace

MatD flow_rhs(const LieAlgebra& L, const MatD& J, const MatD& g, double eps_pc) {
  Evaluation e = evaluate(L, J, g);
  if (e.rep.pluriclosed_residual > eps_pc * std::max(1.0, inf_norm(g)))
    throw std::domain_error("flow_rhs: metric is not pluriclosed (residual " + std::to_string(e.rep.pluriclosed_residual) +
                            ")");
  return e.v.g;
}

FlowResult integrate_flow(const LieAlgebra& L, const MatD& J, const MatD& g0, const FlowConfig& cfg,
                          const AeppliFrame* frame) {
  cfg.validate();
  const Eigen::Index n = g0.rows();
  FlowResult run;
  MatD g = g0;
  MatC beta = MatC::Zero(n, n);
  double t = 0;
  int below = 0;
  Evaluation k1 = evaluate(L, J, g);
  if (k1.rep.pluriclosed_residual > cfg.eps_pc * std::max(1.0, inf_norm(g)))
    throw std::domain_error("integrate_flow: initial metric is not pluriclosed");
  run.trajectory.push_back(sample(t, g, beta, k1.rep, k1.v.g, frame, J));
  const int max_steps = static_cast<int>(std::ceil(cfg.t_max / cfg.dt - 1e-9));
  const double h = cfg.dt;
  run.status = "t_max";
  for (int step = 0; step < max_steps; ++step) {
    Evaluation k2, k3, k4;
    try {
      k2 = evaluate(L, J, MatD(g + 0.5 * h * k1.v.g));
      k3 = evaluate(L, J, MatD(g + 0.5 * h * k2.v.g));
      k4 = evaluate(L, J, MatD(g + h * k3.v.g));
    } catch (const std::invalid_argument&) {
      run.status = "lost_positivity";
      break;
    }
    MatD g_next = g + h / 6.0 * (k1.v.g + 2.0 * k2.v.g + 2.0 * k3.v.g + k4.v.g);
    MatC beta_next = beta + h / 6.0 * (k1.v.beta + 2.0 * k2.v.beta + 2.0 * k3.v.beta + k4.v.beta);
    if (!positive_definite(g_next)) {
      run.status = "lost_positivity";
      break;
    }
    Evaluation next = evaluate(L, J, g_next);
    if (next.rep.pluriclosed_residual > cfg.eps_pc * std::max(1.0, inf_norm(g_next))) {
      run.status = "integrator_drift";
      break;
    }
    g = g_next;
    beta = beta_next;
    t = (step + 1) * h;
    k1 = next;
    ++run.steps;
    below = inf_norm(k1.v.g) < cfg.eps_conv ? below + 1 : 0;
    const bool done = below >= cfg.sustain;
    if (done || run.steps % cfg.record_every == 0 || step + 1 == max_steps)
      run.trajectory.push_back(sample(t, g, beta, k1.rep, k1.v.g, frame, J));
    if (done) {
      run.status = "converged";
      run.converged = true;
      break;
    }
  }
  if (run.trajectory.back().t != t) run.trajectory.push_back(sample(t, g, beta, k1.rep, k1.v.g, frame, J));
  return run;
}

namespace {

using Dense3 = std::vector<std::complex<double>>;

Dense3 dense(const Form<double>& re, const Form<double>* im) {
  const int n = re.dim();
  Dense3 out(static_cast<std::size_t>(n) * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        out[(static_cast<std::size_t>(i) * n + j) * n + k] = {re.at({i, j, k}), im ? im->at({i, j, k}) : 0.0};
      }
  return out;
}

// contract slot `slot` of t with the columns of P: out(.., a, ..) = sum_i P(i, a) t(.., i, ..)
Dense3 contract(const Dense3& t, const MatC& P, int slot, int n) {
  Dense3 out(t.size());
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i) {
      const std::complex<double> p = P(i, a);
      if (p == 0.0) continue;
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
          std::size_t src, dst;
          if (slot == 0) {
            src = (static_cast<std::size_t>(i) * n + u) * n + v;
            dst = (static_cast<std::size_t>(a) * n + u) * n + v;
          } else if (slot == 1) {
            src = (static_cast<std::size_t>(u) * n + i) * n + v;
            dst = (static_cast<std::size_t>(u) * n + a) * n + v;
          } else {
            src = (static_cast<std::size_t>(u) * n + v) * n + i;
            dst = (static_cast<std::size_t>(u) * n + v) * n + a;
          }
          out[dst] += p * t[src];
        }
    }
  return out;
}

// (2,1)-component: sum over placements of one conjugate projector
Dense3 part21(const Dense3& t, const MatD& J) {
  const int n = static_cast<int>(J.rows());
  const std::complex<double> I(0, 1);
  MatC P = 0.5 * (MatC::Identity(n, n) - I * J.cast<std::complex<double>>());
  MatC Pb = P.conjugate();
  Dense3 out(t.size());
  for (int bar = 0; bar < 3; ++bar) {
    Dense3 x = t;
    for (int slot = 0; slot < 3; ++slot) x = contract(x, slot == bar ? Pb : P, slot, n);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += x[i];
  }
  return out;
}

Dense3 del_omega(const LieAlgebra& L, const MatD& J, const MatD& g) {
  Form<double> w = Form<double>::from_matrix(MatD(J.transpose() * g));
  return part21(dense(invariant_d<double>(L, w), nullptr), J);
}

Dense3 delbar_beta(const LieAlgebra& L, const MatD& J, const MatC& beta) {
  Form<double> re = invariant_d<double>(L, Form<double>::from_matrix(MatD(beta.real())));
  Form<double> im = invariant_d<double>(L, Form<double>::from_matrix(MatD(beta.imag())));
  return part21(dense(re, &im), J);
}

}  // namespace

double torsion_residual(const LieAlgebra& L, const MatD& J, const FlowResult& run) {
  if (run.trajectory.empty()) throw std::invalid_argument("torsion_residual: empty trajectory");
  const FlowSample& s0 = run.start();
  Dense3 d0 = del_omega(L, J, s0.g);
  double worst = 0;
  for (const FlowSample& s : run.trajectory) {
    if (s.beta.rows() != s.g.rows()) throw std::invalid_argument("torsion_residual: beta not recorded");
    Dense3 dt = del_omega(L, J, s.g), db = delbar_beta(L, J, s.beta);
    for (std::size_t i = 0; i < dt.size(); ++i) worst = std::max(worst, std::abs(dt[i] - d0[i] - db[i]));
  }
  return worst;
}

MatD pluriclosed_perturbation(const AeppliFrame& F, const MatD& J, const MatD& g0, double amplitude,
                              std::mt19937_64& rng) {
  const int n = static_cast<int>(g0.rows());
  MatD K = to_double(F.K);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Eigen::VectorXd c(K.cols());
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = dist(rng);
    Eigen::VectorXd comp = K * c;
    Form<double> w(n, 2);
    for (std::size_t r = 0; r < w.size(); ++r) w.component(r) = comp(static_cast<Eigen::Index>(r));
    MatD dg = w.to_matrix() * J;  // g(x, y) = omega(x, Jy)
    dg = 0.5 * (dg + dg.transpose());
    const double norm = dg.cwiseAbs().maxCoeff();
    if (norm == 0) continue;
    dg *= amplitude * g0.cwiseAbs().maxCoeff() / norm;
    MatD g = g0 + dg;
    if (positive_definite(g)) return g;
  }
  throw std::runtime_error("no positive-definite pluriclosed perturbation found");
}

std::string trajectory_csv(const FlowResult& run) {
  std::ostringstream os;
  os << std::setprecision(12);
  if (run.trajectory.empty()) return "";
  const Eigen::Index n = run.start().g.rows();
  os << "t";
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) os << ",g_" << i << "_" << j;
  os << ",ricci11_norm,bismut_flat_norm,pluriclosed_residual";
  for (Eigen::Index c = 0; c < run.start().aeppli.size(); ++c) os << ",aeppli_c" << c + 1;
  os << "\n";
  for (const FlowSample& s : run.trajectory) {
    os << s.t;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i; j < n; ++j) os << "," << s.g(i, j);
    os << "," << s.ricci11_norm << "," << s.flat_norm << "," << s.pluriclosed_residual;
    for (Eigen::Index c = 0; c < s.aeppli.size(); ++c) os << "," << s.aeppli(c);
    os << "\n";
  }
  return os.str();
}

nlohmann::json endpoint_json(const FlowResult& run) {
  auto describe = [](const FlowSample& s) {
    nlohmann::json j;
    j["t"] = s.t;
    j["ricci11_norm"] = s.ricci11_norm;
    j["bismut_flat_norm"] = s.flat_norm;
    j["pluriclosed_residual"] = s.pluriclosed_residual;
    j["rhs_norm"] = s.rhs_norm;
    j["aeppli"] = std::vector<double>(s.aeppli.data(), s.aeppli.data() + s.aeppli.size());
    return j;
  };
  nlohmann::json j;
  j["status"] = run.status;
  j["converged"] = run.converged;
  j["steps"] = run.steps;
  j["start"] = describe(run.start());
  j["end"] = describe(run.end());
  double drift = 0;
  for (Eigen::Index c = 0; c < run.start().aeppli.size(); ++c)
    drift = std::max(drift, std::abs(run.end().aeppli(c) - run.start().aeppli(c)));
  j["aeppli_drift"] = drift;
  return j;
}

}  // namespace samelson
