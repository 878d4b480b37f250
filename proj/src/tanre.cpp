#include "samelson/tanre.hpp"

#include "samelson/exact_linalg.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace samelson {

namespace {

std::string matrix_key(const MatR& m) {
  std::string s;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) s += to_string(m(i, j)) + ";";
  return s;
}

MatR restrict(const MatR& m, const std::vector<int>& idx) {
  MatR out(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = m(idx[i], idx[j]);
  return out;
}

}  // namespace

WeylGroup weyl_group(const LieAlgebra& L, const CartanData& cd, std::size_t bound) {
  WeylGroup W;
  const int r = static_cast<int>(cd.torus.size());
  for (int q = 0; q < r; ++q)
    if (!L.is_abelian_factor(L.factor_of(cd.torus[q]))) W.coords.push_back(q);
  const int n = static_cast<int>(W.coords.size());
  MatR G = restrict(torus_gram(L, cd), W.coords);
  MatR Ginv = inverse<Surd>(G);
  for (int a : cd.positive_roots()) {
    MatR av(n, 1);
    for (int i = 0; i < n; ++i) av(i, 0) = Surd(cd.roots[a][W.coords[i]]);
    MatR h = mul<Surd>(Ginv, av);  // Killing dual of the root
    Surd norm = mul<Surd>(transpose<Surd>(av), h)(0, 0);
    MatR M = identity<Surd>(n);
    MatR outer = mul<Surd>(h, transpose<Surd>(av));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!outer(i, j).is_zero()) M(i, j) -= Surd(2) * outer(i, j) / norm;
    W.reflections.push_back(M);
  }
  std::set<std::string> seen;
  W.elements.push_back(identity<Surd>(n));
  seen.insert(matrix_key(W.elements[0]));
  for (std::size_t i = 0; i < W.elements.size(); ++i)
    for (const MatR& s : W.reflections) {
      MatR w = mul<Surd>(s, W.elements[i]);
      if (seen.insert(matrix_key(w)).second) {
        W.elements.push_back(w);
        if (W.elements.size() > bound)
          throw std::runtime_error("weyl_group: closure exceeds " + std::to_string(bound) + " elements");
      }
    }
  return W;
}

std::vector<Monomial> monomials(int nvars, int degree) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (degree == 0) out.push_back({});
    return out;
  }
  Monomial m(nvars, 0);
  // lexicographic, first variable with the highest exponent first
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == nvars - 1) {
      m[var] = left;
      out.push_back(m);
      return;
    }
    for (int e = left; e >= 0; --e) {
      m[var] = e;
      rec(var + 1, left - e);
    }
  };
  rec(0, degree);
  return out;
}

std::string monomial_name(const Monomial& m, const std::string& var) {
  std::string s;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (m[j] == 0) continue;
    if (!s.empty()) s += "*";
    s += var + std::to_string(j + 1);
    if (m[j] > 1) s += "^" + std::to_string(m[j]);
  }
  return s.empty() ? "1" : s;
}

namespace {

std::map<Monomial, int> monomial_index(int nvars, int degree) {
  std::map<Monomial, int> idx;
  auto ms = monomials(nvars, degree);
  for (std::size_t i = 0; i < ms.size(); ++i) idx[ms[i]] = static_cast<int>(i);
  return idx;
}

}  // namespace

MatR substitution_matrix(const MatR& M, int degree) {
  const int n = static_cast<int>(M.rows());
  auto src = monomials(n, degree);
  std::vector<std::map<Monomial, int>> idx;
  for (int k = 0; k <= degree; ++k) idx.push_back(monomial_index(n, k));
  MatR out = zeros<Surd>(static_cast<Eigen::Index>(src.size()), static_cast<Eigen::Index>(src.size()));
  for (std::size_t c = 0; c < src.size(); ++c) {
    // multiply linear forms one at a time
    std::vector<Surd> poly(1, Surd(1));
    int deg = 0;
    for (int j = 0; j < n; ++j)
      for (int e = 0; e < src[c][j]; ++e) {
        auto lower = monomials(n, deg);
        std::vector<Surd> next(idx[deg + 1].size(), Surd(0));
        for (std::size_t t = 0; t < lower.size(); ++t) {
          if (poly[t].is_zero()) continue;
          for (int k = 0; k < n; ++k) {
            if (M(j, k).is_zero()) continue;
            Monomial up = lower[t];
            ++up[k];
            next[idx[deg + 1].at(up)] += poly[t] * M(j, k);
          }
        }
        poly = std::move(next);
        ++deg;
      }
    for (std::size_t t = 0; t < poly.size(); ++t) out(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(c)) = poly[t];
  }
  return out;
}

MatR invariant_polynomials(const WeylGroup& W, int degree) {
  const int n = static_cast<int>(W.coords.size());
  const auto size = static_cast<Eigen::Index>(monomials(n, degree).size());
  MatR reynolds = zeros<Surd>(size, size);
  for (const MatR& w : W.elements) reynolds += substitution_matrix(w, degree);
  return column_basis<Surd>(reynolds);  // scaling by 1/|W| does not change the span
}

std::vector<int> Coinvariants::hilbert() const {
  std::vector<int> h;
  for (const auto& s : standard) h.push_back(static_cast<int>(s.size()));
  return h;
}

Coinvariants coinvariant_algebra(const WeylGroup& W, int max_degree) {
  Coinvariants Y;
  const int n = static_cast<int>(W.coords.size());
  Y.nvars = n;
  std::vector<MatR> inv(max_degree + 1);
  for (int e = 1; e <= max_degree; ++e) inv[e] = invariant_polynomials(W, e);
  std::vector<std::map<Monomial, int>> idx;
  for (int d = 0; d <= max_degree + 1; ++d) idx.push_back(monomial_index(n, d));
  for (int d = 0; d <= max_degree; ++d) {
    const auto size = static_cast<Eigen::Index>(idx[d].size());
    auto md = monomials(n, d);
    // ideal in degree d: invariants of degree e times monomials of degree d - e
    MatR I = zeros<Surd>(size, 0);
    for (int e = 1; e <= d; ++e) {
      auto me = monomials(n, e);
      for (const Monomial& mult : monomials(n, d - e))
        for (Eigen::Index c = 0; c < inv[e].cols(); ++c) {
          MatR col = zeros<Surd>(size, 1);
          for (std::size_t t = 0; t < me.size(); ++t) {
            if (inv[e](static_cast<Eigen::Index>(t), c).is_zero()) continue;
            Monomial up = me[t];
            for (int k = 0; k < n; ++k) up[k] += mult[k];
            col(idx[d].at(up), 0) = inv[e](static_cast<Eigen::Index>(t), c);
          }
          I = hcat<Surd>(I, col);
        }
    }
    I = column_basis<Surd>(I);
    MatR S = extend_basis<Surd>(I, identity<Surd>(size));
    std::vector<Monomial> standard;
    for (Eigen::Index c = 0; c < S.cols(); ++c)
      for (Eigen::Index t = 0; t < size; ++t)
        if (!S(t, c).is_zero()) standard.push_back(md[static_cast<std::size_t>(t)]);
    Y.standard.push_back(standard);
    MatR full = inverse<Surd>(hcat<Surd>(S, I));
    Y.reduce.push_back(full.topRows(S.cols()));
  }
  for (int d = 0; d < max_degree; ++d) {
    std::vector<MatR> per_var;
    for (int j = 0; j < n; ++j) {
      const auto up_size = static_cast<Eigen::Index>(idx[d + 1].size());
      MatR lift = zeros<Surd>(up_size, static_cast<Eigen::Index>(Y.standard[d].size()));
      for (std::size_t c = 0; c < Y.standard[d].size(); ++c) {
        Monomial up = Y.standard[d][c];
        ++up[j];
        lift(idx[d + 1].at(up), static_cast<Eigen::Index>(c)) = Surd(1);
      }
      per_var.push_back(mul<Surd>(Y.reduce[d + 1], lift));
    }
    Y.times_var.push_back(per_var);
  }
  return Y;
}

// ---------------------------------------------------------------------------
// model

int TanreModel::index(int d, int y, unsigned A, unsigned B) const {
  auto it = index_.find({d, y, A, B});
  return it == index_.end() ? -1 : it->second;
}

VecG TanreModel::omega(int q) const {
  VecG v = zeros<Gauss>(complex.dim({1, 1}), 1).col(0);
  auto pos = std::find(semisimple_coords.begin(), semisimple_coords.end(), q);
  if (pos == semisimple_coords.end()) return v;
  MatR w = Y.reduce[1].col(pos - semisimple_coords.begin());
  for (Eigen::Index y = 0; y < w.rows(); ++y)
    if (!w(y, 0).is_zero()) v(index(1, static_cast<int>(y), 0, 0)) = Gauss(w(y, 0));
  return v;
}

namespace {

// (1,0)-form sum_q c_q xi^q in the nu basis; throws when c is not of type (1,0).
VecG in_nu_basis(const MatG& nu, const MatG& c) {
  auto x = solve<Gauss>(transpose<Gauss>(nu), transpose<Gauss>(c));
  if (!x) throw std::logic_error("form is not of type (1,0)");
  return x->col(0);
}

}  // namespace

VecG TanreModel::xi_10(int q) const {
  MatG c = zeros<Gauss>(1, r);
  for (int k = 0; k < r; ++k) c(0, k) = Gauss(Surd(k == q ? 1 : 0), -torus_J(q, k));
  VecG coeff = in_nu_basis(nu, c);
  VecG v = zeros<Gauss>(complex.dim({1, 0}), 1).col(0);
  for (int a = 0; a < m; ++a) v(index(0, 0, 1u << a, 0)) = coeff(a);
  return v;
}

VecG TanreModel::torus_form(const MatR& g_torus) const {
  // F(x, y) = g(Jx, y); expand xi in the basis (nu, nubar)
  MatG F = to_gauss(mul<Surd>(transpose<Surd>(torus_J), g_torus));
  MatG Wm = vcat<Gauss>(nu, conj(nu));
  MatG X = inverse<Gauss>(Wm);
  MatG H = mul<Gauss>(mul<Gauss>(transpose<Gauss>(X), F), X);
  VecG v = zeros<Gauss>(complex.dim({1, 1}), 1).col(0);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (!H(a, b).is_zero()) throw std::invalid_argument("torus form has a (2,0) part");
      // H is antisymmetric, so F = sum_{a,b} H(a, m+b) nu_a ^ nubar_b
      v(index(0, 0, 1u << a, 1u << b)) = H(a, m + b);
    }
  return v;
}

nlohmann::json TanreModel::generators_json() const {
  nlohmann::json g = nlohmann::json::array();
  for (std::size_t j = 0; j < semisimple_coords.size(); ++j)
    g.push_back({{"name", "w" + std::to_string(j + 1)}, {"bidegree", {1, 1}}, {"torus_coordinate", semisimple_coords[j]}});
  for (int a = 0; a < m; ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (int q = 0; q < r; ++q) row.push_back({to_string(nu(a, q).real()), to_string(nu(a, q).imag())});
    g.push_back({{"name", nu_names[a]}, {"bidegree", {1, 0}}, {"xi_coefficients", row}});
    g.push_back({{"name", nu_names[a] + "bar"}, {"bidegree", {0, 1}}});
  }
  return g;
}

TanreModel build_model(const LieAlgebra& L, const CartanData& cd, const SamelsonStructure& S, int truncation) {
  if (truncation < 0) throw std::invalid_argument("truncation must be non-negative");
  TanreModel M;
  M.truncation = truncation;
  M.r = static_cast<int>(cd.torus.size());
  if (M.r % 2 != 0) throw std::invalid_argument("odd torus dimension");
  M.m = M.r / 2;
  if (M.m > 16) throw std::invalid_argument("torus too large for the model");
  M.torus_J = S.torus_J;
  M.gram = torus_gram(L, cd);
  M.components = static_cast<int>(S.components.size());
  for (int q = 0; q < M.r; ++q) {
    const int f = L.factor_of(cd.torus[q]);
    if (L.is_abelian_factor(f))
      M.has_abelian = true;
    else
      M.semisimple_coords.push_back(q);
    int comp = -1;
    for (std::size_t c = 0; c < S.components.size(); ++c)
      for (int ff : S.components[c])
        if (ff == f) comp = static_cast<int>(c);
    M.block_of.push_back(comp);
  }

  WeylGroup W = weyl_group(L, cd);
  const int maxd = truncation / 2;
  M.Y = coinvariant_algebra(W, maxd);

  // nu generators: the first independent rows of (delta - iJ)
  MatG chosen = zeros<Gauss>(0, M.r);
  std::vector<int> rows_used;
  for (int q = 0; q < M.r && static_cast<int>(rows_used.size()) < M.m; ++q) {
    MatG row(1, M.r);
    for (int k = 0; k < M.r; ++k) row(0, k) = Gauss(Surd(k == q ? 1 : 0), -M.torus_J(q, k));
    MatG cand = vcat<Gauss>(chosen, row);
    if (rank<Gauss>(cand) > static_cast<int>(chosen.rows())) {
      chosen = cand;
      rows_used.push_back(q);
    }
  }
  if (static_cast<int>(chosen.rows()) != M.m) throw std::logic_error("could not pick r/2 independent (1,0)-forms");
  M.nu = chosen;
  for (int a = 0; a < M.m; ++a) {
    bool abelian = true;
    for (int k = 0; k < M.r; ++k)
      if (!M.nu(a, k).is_zero() &&
          std::find(M.semisimple_coords.begin(), M.semisimple_coords.end(), k) != M.semisimple_coords.end())
        abelian = false;
    M.nu_names.push_back((abelian ? "psi" : "nu") + std::to_string(a + 1));
  }

  // D(nu_a) in Y_1 coordinates
  const int nv = static_cast<int>(M.semisimple_coords.size());
  std::vector<MatG> Dnu(M.m), Dnubar(M.m);
  for (int a = 0; a < M.m; ++a) {
    MatG poly = zeros<Gauss>(nv, 1);
    for (int j = 0; j < nv; ++j) poly(j, 0) = M.nu(a, M.semisimple_coords[j]);
    Dnu[a] = nv ? mul<Gauss>(to_gauss(M.Y.reduce[1]), poly) : zeros<Gauss>(0, 1);
    Dnubar[a] = conj(Dnu[a]);
  }

  // basis
  DoubleComplex& D = M.complex;
  std::map<Bidegree, int> count;
  std::map<Bidegree, std::vector<std::string>> labels;
  const unsigned full = 1u << M.m;
  for (int d = 0; d <= maxd; ++d)
    for (unsigned A = 0; A < full; ++A)
      for (unsigned B = 0; B < full; ++B) {
        const int a = std::popcount(A), b = std::popcount(B);
        if (2 * d + a + b > truncation) continue;
        Bidegree bd{d + a, d + b};
        for (std::size_t y = 0; y < M.Y.standard[d].size(); ++y) {
          M.index_[{d, static_cast<int>(y), A, B}] = count[bd]++;
          std::vector<std::string> parts;
          if (d > 0) parts.push_back(monomial_name(M.Y.standard[d][y]));
          for (int k = 0; k < M.m; ++k)
            if (A >> k & 1u) parts.push_back(M.nu_names[k]);
          for (int k = 0; k < M.m; ++k)
            if (B >> k & 1u) parts.push_back(M.nu_names[k] + "bar");
          std::string name = parts.empty() ? "1" : parts[0];
          for (std::size_t i = 1; i < parts.size(); ++i) name += "*" + parts[i];
          labels[bd].push_back(name);
        }
      }
  for (const auto& [bd, n] : count) D.set_dim(bd, n);
  D.labels = labels;

  // differentials
  std::map<Bidegree, MatG> del, delbar;
  for (const auto& [bd, n] : count) {
    if (D.dim({bd.first + 1, bd.second})) del[bd] = zeros<Gauss>(D.dim({bd.first + 1, bd.second}), n);
    if (D.dim({bd.first, bd.second + 1})) delbar[bd] = zeros<Gauss>(D.dim({bd.first, bd.second + 1}), n);
  }
  for (const auto& [key, col] : M.index_) {
    auto [d, y, A, B] = key;
    const int a = std::popcount(A), b = std::popcount(B);
    Bidegree bd{d + a, d + b};
    if (d + 1 > maxd) continue;
    // y * D(gen) in Y_{d+1}
    auto times = [&](const MatG& Dgen) {
      MatG out = zeros<Gauss>(static_cast<Eigen::Index>(M.Y.standard[d + 1].size()), 1);
      for (int j = 0; j < nv; ++j) {
        if (Dgen(j, 0).is_zero()) continue;
        // Dgen is in Y_1 coordinates; Y_1 = P_1 modulo linear invariants
        const Monomial& mono = M.Y.standard[1][j];
        int var = static_cast<int>(std::find(mono.begin(), mono.end(), 1) - mono.begin());
        MatG img = to_gauss(MatR(M.Y.times_var[d][var].col(y)));
        out += img * Dgen(j, 0);
      }
      return out;
    };
    // delbar: sum over nu_k in A
    if (delbar.count(bd)) {
      int pos = 0;
      for (int k = 0; k < M.m; ++k) {
        if (!(A >> k & 1u)) continue;
        const Gauss sign = pos % 2 == 0 ? Gauss(1) : Gauss(-1);
        ++pos;
        MatG img = times(Dnu[k]);
        for (Eigen::Index t = 0; t < img.rows(); ++t) {
          if (img(t, 0).is_zero()) continue;
          int row = M.index(d + 1, static_cast<int>(t), A & ~(1u << k), B);
          if (row >= 0) delbar[bd](row, col) += sign * img(t, 0);
        }
      }
    }
    if (del.count(bd)) {
      int pos = a;
      for (int k = 0; k < M.m; ++k) {
        if (!(B >> k & 1u)) continue;
        const Gauss sign = pos % 2 == 0 ? Gauss(1) : Gauss(-1);
        ++pos;
        MatG img = times(Dnubar[k]);
        for (Eigen::Index t = 0; t < img.rows(); ++t) {
          if (img(t, 0).is_zero()) continue;
          int row = M.index(d + 1, static_cast<int>(t), A, B & ~(1u << k));
          if (row >= 0) del[bd](row, col) += sign * img(t, 0);
        }
      }
    }
  }
  for (auto& [bd, mtx] : del) D.set_del(bd, mtx);
  for (auto& [bd, mtx] : delbar) D.set_delbar(bd, mtx);
  ValidationReport vr = validate(D);
  if (!vr.ok) throw std::logic_error("model fails validation: " + vr.message);
  return M;
}

nlohmann::json to_json(const TanreModel& model) {
  nlohmann::json j = to_json(model.complex);
  j["generators"] = model.generators_json();
  j["truncation"] = model.truncation;
  j["coinvariant_hilbert"] = model.Y.hilbert();
  j["torus_J"] = matrix_to_json(model.torus_J);
  return j;
}

// ---------------------------------------------------------------------------
// central system

CentralSystem central_square_solve(const MatR& J, const MatR& G, const std::vector<int>& block_of) {
  const int r = static_cast<int>(J.rows());
  if (J.cols() != r || G.rows() != r || static_cast<int>(block_of.size()) != r)
    throw std::invalid_argument("central_square_solve: shape mismatch");
  if (mul<Surd>(J, J) != MatR(-identity<Surd>(r))) throw std::invalid_argument("J_k is not a complex structure (J^2 != -Id)");
  const int s = block_of.empty() ? 0 : *std::max_element(block_of.begin(), block_of.end()) + 1;
  MatG Lm = to_gauss(identity<Surd>(r)), Rm = to_gauss(identity<Surd>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Lm(i, j) += Gauss(Surd(0), J(j, i));   // I + iJ^t
      Rm(i, j) += Gauss(Surd(0), -J(i, j));  // I - iJ
    }
  // Q_{jk} = sum_{l,m} L_{jl} A_{lm} R_{mk}; unknowns A_{lm} (index l*r+m) then b_c
  const int nA = r * r, nu = nA + s;
  MatG Qmap = zeros<Gauss>(nA, nA);  // vec Q = Qmap vec A
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < r; ++k)
      for (int l = 0; l < r; ++l) {
        if (Lm(j, l).is_zero()) continue;
        for (int m = 0; m < r; ++m)
          if (!Rm(m, k).is_zero()) Qmap(j * r + k, l * r + m) += Lm(j, l) * Rm(m, k);
      }
  auto build = [&](bool with_b) {
    MatG sys = zeros<Gauss>(nA, nu);
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) {
        for (int c = 0; c < nA; ++c) sys(j * r + k, c) = Qmap(j * r + k, c) + Qmap(k * r + j, c);
        if (with_b && block_of[j] == block_of[k] && block_of[j] >= 0)
          sys(j * r + k, nA + block_of[j]) = Gauss(-G(j, k));
      }
    // real unknowns: split into real and imaginary equations
    MatR real = zeros<Surd>(2 * nA, nu);
    for (int i = 0; i < nA; ++i)
      for (int c = 0; c < nu; ++c) {
        real(i, c) = sys(i, c).real();
        real(nA + i, c) = sys(i, c).imag();
      }
    return real;
  };
  auto solution_image = [&](const MatR& K) {
    // (vec Q, b) of each kernel vector
    MatG img = zeros<Gauss>(nA + s, K.cols());
    MatG KG = to_gauss(K);
    MatG q = mul<Gauss>(Qmap, MatG(KG.topRows(nA)));
    img.topRows(nA) = q;
    if (s) img.bottomRows(s) = KG.bottomRows(s);
    return img;
  };

  CentralSystem out;
  MatR K = kernel<Surd>(build(true));
  MatG img = solution_image(K);
  // keep kernel vectors with independent images
  Echelon<Gauss> e = rref(img);
  out.solution_dim = static_cast<int>(e.pivots.size());
  for (int p : e.pivots) {
    MatR A(r, r);
    for (int l = 0; l < r; ++l)
      for (int m = 0; m < r; ++m) A(l, m) = K(l * r + m, p);
    std::vector<Surd> b;
    for (int c = 0; c < s; ++c) b.push_back(K(nA + c, p));
    MatG Q(r, r);
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) Q(j, k) = img(j * r + k, p);
    MatG Jg = to_gauss(J), Jt = to_gauss(transpose<Surd>(J));
    if (mul<Gauss>(Q, Jg) != MatG(Q * Gauss::i()) || mul<Gauss>(Jt, Q) != MatG(Q * (-Gauss::i())))
      out.eigen_relations = false;
    MatG S = Q + transpose<Gauss>(Q);
    if (mul<Gauss>(mul<Gauss>(Jt, S), Jg) != S) out.j_invariant = false;
    out.A.push_back(A);
    out.b.push_back(b);
    out.Q.push_back(Q);
  }
  MatR K0 = kernel<Surd>(build(false));
  MatG img0 = solution_image(K0);
  out.antisymmetric_dim = rank<Gauss>(MatG(img0.topRows(nA)));
  return out;
}

CentralSystem central_square_solve(const TanreModel& model) {
  return central_square_solve(model.torus_J, model.gram, model.block_of);
}

AeppliH11 aeppli_h11(const TanreModel& model) {
  if (model.truncation < 4)
    throw std::invalid_argument("H^{1,1}_A needs a model truncated at total degree >= 4 (got " +
                                std::to_string(model.truncation) + ")");
  AeppliH11 out;
  const DoubleComplex& D = model.complex;
  out.dimension = cohomology_dim(D, Flavor::Aeppli, {1, 1});
  out.representatives = representatives(D, Flavor::Aeppli, {1, 1});
  for (int c = 0; c < model.components; ++c) {
    MatR g = zeros<Surd>(model.r, model.r);
    for (int j = 0; j < model.r; ++j)
      for (int k = 0; k < model.r; ++k)
        if (model.block_of[j] == c && model.block_of[k] == c) g(j, k) = model.gram(j, k);
    out.metric_classes.push_back(class_coordinates(D, Flavor::Aeppli, {1, 1}, model.torus_form(g)));
  }
  if (!out.metric_classes.empty()) {
    MatG cls(out.dimension, static_cast<Eigen::Index>(out.metric_classes.size()));
    for (std::size_t c = 0; c < out.metric_classes.size(); ++c) cls.col(c) = out.metric_classes[c];
    out.metric_class_rank = out.dimension ? rank<Gauss>(cls) : 0;
  }
  if (!model.has_abelian) {
    out.central_dim = central_square_solve(model).solution_dim;
    if (out.central_dim != out.dimension)
      throw std::logic_error("aeppli_h11: model gives " + std::to_string(out.dimension) + " but the central system gives " +
                             std::to_string(out.central_dim));
  }
  return out;
}

}  // namespace samelson
