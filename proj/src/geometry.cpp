#include "samelson/geometry.hpp"

#include "samelson/exact_linalg.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/QR>

#include <algorithm>
#include <array>

namespace samelson {

namespace {

constexpr int kMaxDim = 64;

const std::array<std::array<std::size_t, kMaxDim + 1>, kMaxDim + 1>& binomials() {
  static const auto table = [] {
    std::array<std::array<std::size_t, kMaxDim + 1>, kMaxDim + 1> t{};
    for (int a = 0; a <= kMaxDim; ++a) {
      t[a][0] = 1;
      for (int b = 1; b <= a; ++b) t[a][b] = t[a - 1][b - 1] + (b <= a - 1 ? t[a - 1][b] : 0);
    }
    return t;
  }();
  return table;
}

std::size_t binom(int a, int b) {
  if (b < 0 || a < 0 || b > a) return 0;
  return binomials()[a][b];
}

// Sorts in place; returns the permutation sign, 0 on a repeated index.
int sort_with_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  return sign;
}

template <class S>
S zero() {
  return S(0);
}

template <class S>
Mat<S> zero_mat(int r, int c) {
  Mat<S> m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = S(0);
  return m;
}

template <class S>
Mat<S> mm(const Mat<S>& a, const Mat<S>& b) {
  return mul<S>(a, b);
}
template <>
MatD mm<double>(const MatD& a, const MatD& b) {
  return a * b;
}

template <class S>
Mat<S> inv(const Mat<S>& a) {
  return inverse<S>(a);
}
template <>
MatD inv<double>(const MatD& a) {
  Eigen::FullPivLU<MatD> lu(a);
  if (!lu.isInvertible()) throw std::domain_error("singular metric");
  return lu.inverse();
}

template <class S>
Mat<S> tr(const Mat<S>& a) {
  return transpose<S>(a);
}

template <class S>
bool positive_definite(const Mat<S>& g) {
  // symmetric Gaussian elimination; all pivots positive
  Mat<S> m = g;
  const Eigen::Index n = m.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    if (!(m(k, k) > S(0))) return false;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      S f = m(i, k) / m(k, k);
      for (Eigen::Index j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return true;
}
template <>
bool positive_definite<double>(const MatD& g) {
  Eigen::LLT<MatD> llt(g);
  return llt.info() == Eigen::Success;
}

template <class S>
bool nearly_equal(const Mat<S>& a, const Mat<S>& b) {
  return a == b;
}
template <>
bool nearly_equal<double>(const MatD& a, const MatD& b) {
  double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - b).cwiseAbs().maxCoeff() <= 1e-9 * scale;
}

template <class S>
S max_abs(const Mat<S>& m, S start) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      S v = abs_value(m(i, j));
      if (v > start) start = v;
    }
  return start;
}

// T'(.., e_i in `slot`, ..) = T(.., J e_i, ..)
template <class S>
Tensor3<S> apply_j(const Tensor3<S>& t, const Mat<S>& J, int slot) {
  const int n = t.n;
  Tensor3<S> out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const int pos[3] = {i, j, k};
        S s = S(0);
        for (int a = 0; a < n; ++a) {
          const S& ja = J(a, pos[slot]);
          if (ja == S(0)) continue;
          int p[3] = {i, j, k};
          p[slot] = a;
          const S& tv = t(p[0], p[1], p[2]);
          if (tv == S(0)) continue;
          s += ja * tv;
        }
        out(i, j, k) = s;
      }
  return out;
}

// pairs (a, b) -> list of (m, c_ab^m)
template <class S>
std::vector<std::vector<std::pair<int, S>>> bracket_table(const LieAlgebra& L) {
  const int n = L.dimension;
  std::vector<std::vector<std::pair<int, S>>> t(static_cast<std::size_t>(n) * n);
  for (const auto& e : L.brackets) {
    S v;
    if constexpr (std::is_same_v<S, double>) v = e.value.get_d();
    else v = S(e.value);
    t[static_cast<std::size_t>(e.i) * n + e.j].emplace_back(e.k, v);
  }
  return t;
}

}  // namespace

template <class S>
Form<S>::Form(int n, int k) : n_(n), k_(k), c_(binom(n, k), S(0)) {
  if (n > kMaxDim) throw std::invalid_argument("form dimension too large");
}

template <class S>
std::size_t Form<S>::rank_of(const std::vector<int>& sorted_idx) const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < sorted_idx.size(); ++i) r += binom(sorted_idx[i], static_cast<int>(i) + 1);
  return r;
}

template <class S>
std::vector<int> Form<S>::tuple(std::size_t rank) const {
  std::vector<int> idx(k_);
  for (int i = k_ - 1; i >= 0; --i) {
    int a = i;
    while (binom(a + 1, i + 1) <= rank) ++a;
    idx[i] = a;
    rank -= binom(a, i + 1);
  }
  return idx;
}

template <class S>
S Form<S>::at(std::vector<int> idx) const {
  if (static_cast<int>(idx.size()) != k_) throw std::invalid_argument("form arity mismatch");
  int sign = sort_with_sign(idx);
  if (sign == 0) return S(0);
  const S& v = c_[rank_of(idx)];
  return sign > 0 ? v : S(-v);
}

template <class S>
void Form<S>::set(const std::vector<int>& sorted_idx, const S& v) {
  c_[rank_of(sorted_idx)] = v;
}

template <class S>
Form<S> Form<S>::from_vector(const Vec<S>& v) {
  Form f(static_cast<int>(v.size()), 1);
  for (Eigen::Index i = 0; i < v.size(); ++i) f.c_[i] = v(i);
  return f;
}

template <class S>
Form<S> Form<S>::from_matrix(const Mat<S>& m) {
  Form f(static_cast<int>(m.rows()), 2);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) f.set({int(i), int(j)}, m(i, j));
  return f;
}

template <class S>
Mat<S> Form<S>::to_matrix() const {
  if (k_ != 2) throw std::invalid_argument("to_matrix needs a 2-form");
  Mat<S> m = zero_mat<S>(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      m(i, j) = at({i, j});
      m(j, i) = -m(i, j);
    }
  return m;
}

template <class S>
Tensor3<S>::Tensor3(int n_) : n(n_), v(static_cast<std::size_t>(n_) * n_ * n_, S(0)) {}

template <class S>
Form<S> invariant_d(const LieAlgebra& L, const Form<S>& phi) {
  const int n = L.dimension;
  if (phi.dim() != n) throw std::invalid_argument("form dimension does not match the algebra");
  const int k = phi.degree();
  Form<S> out(n, k + 1);
  if (k == 0) return out;
  auto table = bracket_table<S>(L);
  for (std::size_t r = 0; r < out.size(); ++r) {
    std::vector<int> x = out.tuple(r);
    S total = S(0);
    for (int i = 0; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) {
        const auto& br = table[static_cast<std::size_t>(x[i]) * n + x[j]];
        if (br.empty()) continue;
        std::vector<int> args(1);
        for (int p = 0; p <= k; ++p)
          if (p != i && p != j) args.push_back(x[p]);
        S part = S(0);
        for (const auto& [m, c] : br) {
          args[0] = m;
          S v = phi.at(args);
          if (!(v == S(0))) part += c * v;
        }
        if ((i + j) % 2 == 0) total += part;
        else total -= part;
      }
    out.component(r) = total;
  }
  return out;
}

template <class S>
Form<S> wedge(const Form<S>& a, const Form<S>& b) {
  const int n = a.dim();
  const int p = a.degree(), q = b.degree();
  Form<S> out(n, p + q);
  if (p + q > n) return out;
  Form<S> chooser(p + q, p);  // subsets of positions
  for (std::size_t r = 0; r < out.size(); ++r) {
    std::vector<int> x = out.tuple(r);
    S total = S(0);
    for (std::size_t s = 0; s < chooser.size(); ++s) {
      std::vector<int> pos = chooser.tuple(s);
      std::vector<int> xi, xj;
      int inversions = 0;
      std::vector<bool> in(p + q, false);
      for (int v : pos) in[v] = true;
      for (int t = 0; t < p + q; ++t) (in[t] ? xi : xj).push_back(x[t]);
      for (int t = 0; t < p; ++t) inversions += pos[t] - t;
      S va = a.at(xi);
      if (va == S(0)) continue;
      S vb = b.at(xj);
      if (vb == S(0)) continue;
      if (inversions % 2 == 0) total += va * vb;
      else total -= va * vb;
    }
    out.component(r) = total;
  }
  return out;
}

template <class S>
std::vector<S> structure_tensor_as(const LieAlgebra& L) {
  std::vector<S> t(L.dense_.size());
  for (std::size_t a = 0; a < t.size(); ++a) {
    if constexpr (std::is_same_v<S, double>) t[a] = L.dense_[a].get_d();
    else t[a] = S(L.dense_[a]);
  }
  return t;
}

template <class S>
Mat<S> levi_civita_lowered(const LieAlgebra& L, const Mat<S>& g, int i) {
  const int n = L.dimension;
  auto table = bracket_table<S>(L);
  // cl(a, b, m) = g([e_a, e_b], e_m)
  auto cl = [&](int a, int b, int m) {
    S s = S(0);
    for (const auto& [k, c] : table[static_cast<std::size_t>(a) * n + b]) s += c * g(k, m);
    return s;
  };
  Mat<S> out = zero_mat<S>(n, n);
  for (int j = 0; j < n; ++j)
    for (int m = 0; m < n; ++m) out(j, m) = (cl(i, j, m) - cl(j, m, i) + cl(m, i, j)) / S(2);
  return out;
}

template <class S>
Vec<S> lee_form(const LieAlgebra& L, const Mat<S>& J, const Mat<S>& g) {
  CurvatureReport<S> rep = curvature_report<S>(L, J, g);
  return rep.lee;
}

template <class S>
Mat<S> part11(const Mat<S>& J, const Mat<S>& phi) {
  Mat<S> m = phi + mm<S>(mm<S>(tr<S>(J), phi), J);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) / S(2);
  return m;
}

template <class S>
Mat<S> part20(const Mat<S>& J, const Mat<S>& phi) {
  Mat<S> m = phi - mm<S>(mm<S>(tr<S>(J), phi), J);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) / S(2);
  return m;
}

template <class S>
CurvatureReport<S> curvature_report(const LieAlgebra& L, const Mat<S>& J, const Mat<S>& g) {
  const int n = L.dimension;
  if (g.rows() != n || g.cols() != n || J.rows() != n || J.cols() != n)
    throw std::invalid_argument("metric / complex structure size mismatch");
  if (!nearly_equal<S>(g, tr<S>(g))) throw std::invalid_argument("metric is not symmetric");
  if (!positive_definite<S>(g)) throw std::invalid_argument("metric is singular or not positive-definite");
  if (!nearly_equal<S>(mm<S>(mm<S>(tr<S>(J), g), J), g)) throw std::invalid_argument("metric is not Hermitian");

  CurvatureReport<S> rep;
  const Mat<S> ginv = inv<S>(g);
  auto table = bracket_table<S>(L);

  // d omega
  const Mat<S> w = mm<S>(tr<S>(J), g);
  Tensor3<S> cw(n);  // cw(a, b, x) = omega([e_a, e_b], e_x)
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (const auto& [m, c] : table[static_cast<std::size_t>(a) * n + b])
        for (int x = 0; x < n; ++x) cw(a, b, x) += c * w(m, x);
  rep.domega = Tensor3<S>(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) rep.domega(i, j, k) = -cw(i, j, k) + cw(i, k, j) - cw(j, k, i);
  Tensor3<S> dj1 = apply_j<S>(rep.domega, J, 0);
  Tensor3<S> djjj = apply_j<S>(apply_j<S>(dj1, J, 1), J, 2);
  rep.torsion = djjj;

  rep.jdomega = Form<S>(n, 3);
  for (std::size_t r = 0; r < rep.jdomega.size(); ++r) {
    auto t = rep.jdomega.tuple(r);
    rep.jdomega.component(r) = -djjj(t[0], t[1], t[2]);
  }
  Form<S> ddc = invariant_d<S>(L, rep.jdomega);
  rep.pluriclosed_residual = S(0);
  for (std::size_t r = 0; r < ddc.size(); ++r) {
    S v = abs_value(ddc.component(r));
    if (v > rep.pluriclosed_residual) rep.pluriclosed_residual = v;
  }

  // connections
  rep.levi_civita.resize(n);
  rep.bismut.resize(n);
  rep.chern.resize(n);
  for (int i = 0; i < n; ++i) {
    Mat<S> lc = levi_civita_lowered<S>(L, g, i);
    Mat<S> lb = lc, lch = lc;
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m) {
        lb(j, m) += djjj(i, j, m) / S(2);
        lch(j, m) -= dj1(i, j, m) / S(2);
      }
    // g(nabla_i e_j, e_m) = (Gamma_i^T g)(j, m)  =>  Gamma_i = g^{-1} lowered^T
    rep.levi_civita[i] = mm<S>(ginv, tr<S>(lc));
    rep.bismut[i] = mm<S>(ginv, tr<S>(lb));
    rep.chern[i] = mm<S>(ginv, tr<S>(lch));
  }

  auto curvature = [&](const std::vector<Mat<S>>& G, int i, int j) {
    Mat<S> R = mm<S>(G[i], G[j]) - mm<S>(G[j], G[i]);
    for (const auto& [k, c] : table[static_cast<std::size_t>(i) * n + j]) R -= G[k] * c;
    return R;
  };
  auto ricci_form = [&](const std::vector<Mat<S>>& G, std::vector<Mat<S>>* keep) {
    Mat<S> rho = zero_mat<S>(n, n);
    if (keep) keep->assign(static_cast<std::size_t>(n) * n, zero_mat<S>(n, n));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Mat<S> R = curvature(G, i, j);
        S t = S(0);
        Mat<S> JR = mm<S>(J, R);
        for (int a = 0; a < n; ++a) t += JR(a, a);
        rho(i, j) = t / S(2);
        rho(j, i) = -rho(i, j);
        if (keep) {
          (*keep)[static_cast<std::size_t>(i) * n + j] = R;
          (*keep)[static_cast<std::size_t>(j) * n + i] = -R;
        }
      }
    return rho;
  };
  rep.ricci = ricci_form(rep.bismut, &rep.curvature);
  rep.chern_ricci = ricci_form(rep.chern, nullptr);
  rep.ricci11 = part11<S>(J, rep.ricci);
  rep.ricci20 = part20<S>(J, rep.ricci);
  rep.flat_norm = S(0);
  for (const auto& R : rep.curvature) rep.flat_norm = max_abs<S>(R, rep.flat_norm);

  rep.lee = Vec<S>(n);
  for (int k = 0; k < n; ++k) {
    S s = S(0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!(ginv(i, j) == S(0))) s += ginv(i, j) * dj1(i, j, k);
    rep.lee(k) = -s / S(2);
  }
  return rep;
}

Eigen::VectorXd lee_form_by_wedge(const LieAlgebra& L, const MatD& J, const MatD& g) {
  const int n = L.dimension;
  const int m = n / 2;
  const MatD w = J.transpose() * g;
  Form<double> omega = Form<double>::from_matrix(w);
  Form<double> power(n, 0);
  power.component(0) = 1.0;
  for (int p = 0; p < m - 1; ++p) power = wedge(power, omega);
  Form<double> lhs = invariant_d<double>(L, power);
  // theta ^ omega^{m-1} is linear in theta
  MatD A(static_cast<Eigen::Index>(lhs.size()), n);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e(k) = 1;
    Form<double> col = wedge(Form<double>::from_vector(e), power);
    for (std::size_t r = 0; r < col.size(); ++r) A(static_cast<Eigen::Index>(r), k) = col.component(r);
  }
  Eigen::VectorXd b(static_cast<Eigen::Index>(lhs.size()));
  for (std::size_t r = 0; r < lhs.size(); ++r) b(static_cast<Eigen::Index>(r)) = lhs.component(r);
  return A.colPivHouseholderQr().solve(b);
}

MatC complex_part20(const MatD& J, const MatD& phi) {
  const std::complex<double> I(0, 1);
  MatC a = (phi - J.transpose() * phi * J).cast<std::complex<double>>();
  MatC b = (J.transpose() * phi + phi * J).cast<std::complex<double>>();
  return (a - I * b) * 0.25;
}

MatC d_one_form(const LieAlgebra& L, const Eigen::VectorXcd& phi) {
  const int n = L.dimension;
  MatC D = MatC::Zero(n, n);
  for (const auto& e : L.brackets) D(e.i, e.j) -= e.value.get_d() * phi(e.k);
  return D;
}

double verify_ricci_identity(const LieAlgebra& L, const MatD& J, const MatD& g) {
  CurvatureReport<double> rep = curvature_report<double>(L, J, g);
  const std::complex<double> I(0, 1);
  Eigen::VectorXcd theta = rep.lee.cast<std::complex<double>>();
  Eigen::VectorXcd thetaJ = (J.transpose() * rep.lee).cast<std::complex<double>>();
  Eigen::VectorXcd t10 = 0.5 * (theta - I * thetaJ);
  Eigen::VectorXcd t01 = t10.conjugate();
  MatC Jc = J.cast<std::complex<double>>();
  auto p11 = [&](const MatC& x) { MatC y = 0.5 * (x + Jc.transpose() * x * Jc); return y; };
  MatC lhs = rep.ricci11.cast<std::complex<double>>();
  MatC rhs = rep.chern_ricci.cast<std::complex<double>>() + I * (p11(d_one_form(L, t01)) - p11(d_one_form(L, t10)));
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

std::string check_report(const LieAlgebra& L, const MatD& J, const MatD& g, const CurvatureReport<double>& rep,
                         double tol) {
  const int n = L.dimension;
  auto table = bracket_table<double>(L);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (std::abs(rep.torsion(i, j, k) + rep.torsion(j, i, k)) > tol ||
            std::abs(rep.torsion(i, j, k) + rep.torsion(i, k, j)) > tol)
          return "Bismut torsion is not totally skew";
  // torsion from the connection itself
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd T = rep.bismut[i].col(j) - rep.bismut[j].col(i);
      for (const auto& [m, c] : table[static_cast<std::size_t>(i) * n + j]) T(m) -= c;
      Eigen::VectorXd lowered = g * T;
      for (int k = 0; k < n; ++k)
        if (std::abs(lowered(k) - rep.torsion(i, j, k)) > tol) return "Bismut torsion differs from d omega(J,J,J)";
    }
  auto metric_and_complex = [&](const std::vector<MatD>& G, const char* name) -> std::string {
    for (int i = 0; i < n; ++i) {
      if ((G[i].transpose() * g + g * G[i]).cwiseAbs().maxCoeff() > tol) return std::string(name) + " does not preserve g";
      if ((G[i] * J - J * G[i]).cwiseAbs().maxCoeff() > tol) return std::string(name) + " does not preserve J";
    }
    return {};
  };
  if (auto e = metric_and_complex(rep.bismut, "Bismut connection"); !e.empty()) return e;
  if (auto e = metric_and_complex(rep.chern, "Chern connection"); !e.empty()) return e;
  // Chern torsion has no (1,1)-part: T(Jx, Jy) = -T(x, y)
  std::vector<Eigen::VectorXd> T(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd t = rep.chern[i].col(j) - rep.chern[j].col(i);
      for (const auto& [m, c] : table[static_cast<std::size_t>(i) * n + j]) t(m) -= c;
      T[static_cast<std::size_t>(i) * n + j] = t;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd s = T[static_cast<std::size_t>(i) * n + j];
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (J(a, i) != 0 && J(b, j) != 0) s += J(a, i) * J(b, j) * T[static_cast<std::size_t>(a) * n + b];
      if (s.cwiseAbs().maxCoeff() > tol) return "Chern torsion has a (1,1)-part";
    }
  if ((J.transpose() * rep.ricci11 * J - rep.ricci11).cwiseAbs().maxCoeff() > tol) return "(rho^B)^{1,1} not J-invariant";
  if ((J.transpose() * rep.ricci20 * J + rep.ricci20).cwiseAbs().maxCoeff() > tol)
    return "(rho^B)^{2,0+0,2} not J-anti-invariant";
  if ((rep.ricci11 + rep.ricci20 - rep.ricci).cwiseAbs().maxCoeff() > tol) return "Ricci parts do not sum to rho^B";
  return {};
}

MatD family_metric(const LieAlgebra& L, const MatD& J, double alpha, double beta, std::complex<double> u) {
  if (group_name(L.factor_types) != "A2+T2") throw std::invalid_argument("the family lives on A2+T2");
  if (!(alpha > 0) || !(beta > 0) || !(alpha * beta > 4 * std::norm(u)))
    throw std::invalid_argument("family metric needs alpha, beta > 0 and alpha*beta > 4|u|^2");
  const int n = L.dimension;
  const std::complex<double> I(0, 1);
  MatD gB = MatD::Zero(n, n);
  MatD ref = to_double(reference_metric(L));
  for (int a : L.factors[0])
    for (int b : L.factors[0]) gB(a, b) = ref(a, b);
  const int h1 = L.factor_torus[0][0];
  Eigen::VectorXd z1 = Eigen::VectorXd::Zero(n);
  z1(h1) = 1.0 / std::sqrt(gB(h1, h1));
  Eigen::VectorXd xi = gB * z1;
  Eigen::VectorXd f1 = Eigen::VectorXd::Zero(n);
  f1(L.factors[1][0]) = 1.0;
  Eigen::VectorXcd nu = xi.cast<std::complex<double>>() - I * (J.transpose() * xi).cast<std::complex<double>>();
  Eigen::VectorXcd psi = f1.cast<std::complex<double>>() - I * (J.transpose() * f1).cast<std::complex<double>>();
  auto wedge2 = [](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) -> MatC {
    return a * b.transpose() - b * a.transpose();
  };
  MatC omega = (alpha * (J.transpose() * gB)).cast<std::complex<double>>() +
               beta * (I / 2.0) * wedge2(psi, psi.conjugate()) + u * wedge2(nu, psi.conjugate()) -
               std::conj(u) * wedge2(psi, nu.conjugate());
  if (omega.imag().cwiseAbs().maxCoeff() > 1e-12) throw std::logic_error("family form is not real");
  MatD g = omega.real() * J;
  return 0.5 * (g + g.transpose());
}

double family_biinvariance_defect(const LieAlgebra& L, const MatD& J, const MatD& g) {
  const int n = L.dimension;
  const int z = L.factors.back().front();
  if (!L.is_abelian_factor(static_cast<int>(L.factors.size()) - 1)) throw std::invalid_argument("no abelian factor");
  const MatD w = J.transpose() * g;
  auto omega_bracket = [&](int x, int y, const Eigen::VectorXd& v) {
    double s = 0;
    for (int m = 0; m < n; ++m) {
      double c = L.c(x, y, m).get_d();
      if (c != 0) s += c * w.row(m).dot(v);
    }
    return s;
  };
  double worst = 0;
  Eigen::VectorXd Jz = J.col(z);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      Eigen::VectorXd Jy = J.col(y);
      worst = std::max(worst, std::abs(omega_bracket(x, y, Jz) + omega_bracket(x, z, Jy)));
    }
  return worst;
}

MatD random_hermitian_metric(const MatD& g0, const MatD& J, double amplitude, std::mt19937_64& rng) {
  const Eigen::Index n = g0.rows();
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    MatD s(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j <= i; ++j) s(i, j) = s(j, i) = dist(rng);
    MatD h = 0.5 * (s + J.transpose() * s * J);
    h *= amplitude * g0.cwiseAbs().maxCoeff() / h.cwiseAbs().maxCoeff();
    MatD g = g0 + h;
    if (Eigen::LLT<MatD>(g).info() == Eigen::Success) return g;
  }
  throw std::runtime_error("no positive-definite perturbation found");
}

nlohmann::json report_json(const CurvatureReport<double>& rep, double ricci_identity_residual, bool full) {
  nlohmann::json j;
  j["bismut_flat_norm"] = rep.flat_norm;
  j["pluriclosed_residual"] = rep.pluriclosed_residual;
  j["ricci_identity_residual"] = ricci_identity_residual;
  j["ricci11_norm"] = rep.ricci11.cwiseAbs().maxCoeff();
  if (full) {
    auto dense = [](const MatD& m) {
      nlohmann::json rows = nlohmann::json::array();
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::vector<double> row(m.cols());
        for (Eigen::Index k = 0; k < m.cols(); ++k) row[k] = m(i, k);
        rows.push_back(row);
      }
      return rows;
    };
    j["ricci"] = dense(rep.ricci);
    j["ricci11"] = dense(rep.ricci11);
    j["ricci20"] = dense(rep.ricci20);
    j["chern_ricci"] = dense(rep.chern_ricci);
    j["lee"] = std::vector<double>(rep.lee.data(), rep.lee.data() + rep.lee.size());
    j["torsion"] = rep.torsion.v;
  }
  return j;
}

#define SAMELSON_INSTANTIATE(S)                                                              \
  template class Form<S>;                                                                    \
  template struct Tensor3<S>;                                                                \
  template Form<S> invariant_d<S>(const LieAlgebra&, const Form<S>&);                        \
  template Form<S> wedge<S>(const Form<S>&, const Form<S>&);                                 \
  template CurvatureReport<S> curvature_report<S>(const LieAlgebra&, const Mat<S>&, const Mat<S>&); \
  template std::vector<S> structure_tensor_as<S>(const LieAlgebra&);                         \
  template Mat<S> levi_civita_lowered<S>(const LieAlgebra&, const Mat<S>&, int);             \
  template Vec<S> lee_form<S>(const LieAlgebra&, const Mat<S>&, const Mat<S>&);              \
  template Mat<S> part11<S>(const Mat<S>&, const Mat<S>&);                                   \
  template Mat<S> part20<S>(const Mat<S>&, const Mat<S>&);

SAMELSON_INSTANTIATE(double)
SAMELSON_INSTANTIATE(Surd)

#undef SAMELSON_INSTANTIATE

}  // namespace samelson
