#include "samelson/samelson.hpp"

#include "samelson/exact_linalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace samelson {

TorusJKind parse_torus_j_kind(const std::string& name) {
  if (name == "default") return TorusJKind::Default;
  if (name == "product") return TorusJKind::Product;
  if (name == "mixing") return TorusJKind::Mixing;
  throw std::invalid_argument("unknown torus complex structure '" + name + "' (default, product, mixing)");
}

MatR torus_gram(const LieAlgebra& L, const CartanData& cd) {
  MatR g = reference_metric(L);
  const int r = static_cast<int>(cd.torus.size());
  MatR G(r, r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) G(a, b) = g(cd.torus[a], cd.torus[b]);
  return G;
}

namespace {

struct Frame {
  std::vector<Vec<Surd>> vectors;  // torus coordinates
  std::vector<Surd> norms;
  std::vector<int> factor;
};

Surd dot(const Vec<Surd>& x, const MatR& G, const Vec<Surd>& y) {
  Surd s = 0;
  for (Eigen::Index a = 0; a < x.size(); ++a) {
    if (x(a).is_zero()) continue;
    for (Eigen::Index b = 0; b < y.size(); ++b)
      if (!y(b).is_zero() && !G(a, b).is_zero()) s += x(a) * G(a, b) * y(b);
  }
  return s;
}

// Gram-Schmidt inside each factor's torus, in factor order.
Frame orthogonal_frame(const LieAlgebra& L, const CartanData& cd, const MatR& G) {
  const int r = static_cast<int>(cd.torus.size());
  Frame fr;
  for (std::size_t f = 0; f < L.factor_torus.size(); ++f) {
    std::size_t first = fr.vectors.size();
    for (int t : L.factor_torus[f]) {
      auto pos = std::find(cd.torus.begin(), cd.torus.end(), t) - cd.torus.begin();
      Vec<Surd> v(r);
      for (int a = 0; a < r; ++a) v(a) = Surd(a == pos ? 1 : 0);
      for (std::size_t k = first; k < fr.vectors.size(); ++k) {
        Surd coef = dot(fr.vectors[k], G, v) / fr.norms[k];
        if (!coef.is_zero()) v -= fr.vectors[k] * coef;
      }
      fr.norms.push_back(dot(v, G, v));
      fr.vectors.push_back(v);
      fr.factor.push_back(static_cast<int>(f));
    }
  }
  return fr;
}

Surd ratio_sqrt(const Surd& a, const Surd& b) {
  Surd q = a / b;
  if (!q.is_rational()) throw std::invalid_argument("frame norm ratio outside Q; complex structure not representable");
  auto t = Surd::sqrt_of(q.rational_part());
  if (!t)
    throw std::invalid_argument("frame norm ratio " + to_string(q) +
                                " has no square root in Q(sqrt3); supply the torus complex structure explicitly");
  return *t;
}

// J from a pairing of frame vectors: J u1 = t u2, J u2 = -u1 / t.
MatR pair_frame(const Frame& fr, const std::vector<std::pair<int, int>>& pairs) {
  const int r = static_cast<int>(fr.vectors.size());
  MatR U(r, r), D = zeros<Surd>(r, r);
  for (int k = 0; k < r; ++k) U.col(k) = fr.vectors[k];
  for (auto [a, b] : pairs) {
    Surd t = ratio_sqrt(fr.norms[a], fr.norms[b]);
    D(b, a) = t;
    D(a, b) = -(Surd(1) / t);
  }
  return mul<Surd>(mul<Surd>(U, D), inverse<Surd>(U));
}

}  // namespace

MatR torus_complex_structure(const LieAlgebra& L, const CartanData& cd, TorusJKind kind) {
  const int r = static_cast<int>(cd.torus.size());
  if (cd.torus != L.torus) throw std::invalid_argument("torus builders need the default torus");
  if (r % 2 != 0)
    throw std::invalid_argument("total torus dimension " + std::to_string(r) +
                                " is odd; add a factor so the group is even-dimensional");
  MatR G = torus_gram(L, cd);
  Frame fr = orthogonal_frame(L, cd, G);
  std::vector<std::pair<int, int>> pairs;
  if (kind == TorusJKind::Product) {
    for (std::size_t f = 0; f < L.factor_torus.size(); ++f) {
      std::vector<int> idx;
      for (int k = 0; k < r; ++k)
        if (fr.factor[k] == static_cast<int>(f)) idx.push_back(k);
      if (idx.size() % 2 != 0)
        throw std::invalid_argument("factor " + group_name({L.factor_types[f]}) +
                                    " has odd torus rank; no product complex structure preserves it");
      for (std::size_t k = 0; k < idx.size(); k += 2) pairs.emplace_back(idx[k], idx[k + 1]);
    }
    return pair_frame(fr, pairs);
  }
  for (int k = 0; k < r; k += 2) pairs.emplace_back(k, k + 1);
  MatR J = pair_frame(fr, pairs);
  if (kind == TorusJKind::Default || r == 2) return J;
  // rotate u_{2k+1} into u_{2k+2} by the Pythagorean angle (3/5, 4/5) in an orthonormal sense
  MatR U(r, r);
  for (int k = 0; k < r; ++k) U.col(k) = fr.vectors[k];
  MatR Rot = identity<Surd>(r);
  for (int k = 1; k + 1 < r; k += 2) {
    Surd s = ratio_sqrt(fr.norms[k], fr.norms[k + 1]);  // |u_k| / |u_{k+1}|
    MatR step = identity<Surd>(r);
    Surd c(Rational(3, 5)), sn(Rational(4, 5));
    step(k, k) = c;
    step(k + 1, k) = sn * s;
    step(k, k + 1) = -sn / s;
    step(k + 1, k + 1) = c;
    Rot = mul<Surd>(step, Rot);
  }
  MatR R = mul<Surd>(mul<Surd>(U, Rot), inverse<Surd>(U));
  return mul<Surd>(mul<Surd>(R, J), inverse<Surd>(R));
}

SamelsonStructure build_samelson_structure(const LieAlgebra& L, const CartanData& cd, const MatR& torus_J) {
  const int n = L.dimension;
  const int r = static_cast<int>(cd.torus.size());
  if (r % 2 != 0)
    throw std::invalid_argument("total torus dimension " + std::to_string(r) + " is odd; no complex structure");
  if (torus_J.rows() != r || torus_J.cols() != r)
    throw std::invalid_argument("torus complex structure must be " + std::to_string(r) + "x" + std::to_string(r));
  if (mul<Surd>(torus_J, torus_J) != MatR(-identity<Surd>(r)))
    throw std::invalid_argument("torus complex structure does not square to -Id");
  MatR G = torus_gram(L, cd);
  MatR lhs = mul<Surd>(mul<Surd>(transpose<Surd>(torus_J), G), torus_J);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      if (lhs(a, b) != G(a, b))
        throw std::invalid_argument("torus complex structure is not Killing-orthogonal: g(J z_" +
                                    std::to_string(a + 1) + ", J z_" + std::to_string(b + 1) + ") != g(z_" +
                                    std::to_string(a + 1) + ", z_" + std::to_string(b + 1) + ")");

  SamelsonStructure S;
  S.torus_J = torus_J;
  S.positive_roots = cd.positive_roots();
  // basis P = [torus, Re E_alpha, Im E_alpha], J in that basis is block diagonal
  MatR P = zeros<Surd>(n, n), D = zeros<Surd>(n, n);
  for (int a = 0; a < r; ++a) P(cd.torus[a], a) = 1;
  D.topLeftCorner(r, r) = torus_J;
  int col = r;
  for (int a : S.positive_roots) {
    const VecG& e = cd.root_vectors[a];
    for (int k = 0; k < n; ++k) {
      P(k, col) = e(k).real();
      P(k, col + 1) = e(k).imag();
    }
    D(col + 1, col) = -1;  // J X = -Y
    D(col, col + 1) = 1;   // J Y = X
    col += 2;
  }
  S.J = mul<Surd>(mul<Surd>(P, D), inverse<Surd>(P));
  S.components = irreducible_components(S, L, cd);
  std::string err = check_samelson(L, cd, S);
  if (!err.empty()) throw std::logic_error("Samelson structure invariant failed: " + err);
  return S;
}

bool nijenhuis_vanishes(const LieAlgebra& L, const MatR& J) {
  const int n = L.dimension;
  MatG Jg = to_gauss(J);
  auto col = [&](int i) { return VecG(Jg.col(i)); };
  auto e = [n](int i) {
    VecG v(n);
    for (int a = 0; a < n; ++a) v(a) = Gauss(a == i ? 1 : 0);
    return v;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      VecG Jx = col(i), Jy = col(j), x = e(i), y = e(j);
      VecG N = L.bracket(Jx, Jy) - mul<Gauss>(Jg, MatG(L.bracket(Jx, y))) - mul<Gauss>(Jg, MatG(L.bracket(x, Jy))) -
               L.bracket(x, y);
      if (!is_zero_matrix<Gauss>(MatG(N))) return false;
    }
  return true;
}

std::string check_samelson(const LieAlgebra& L, const CartanData& cd, const SamelsonStructure& S) {
  const int n = L.dimension;
  const int r = static_cast<int>(cd.torus.size());
  const MatR& J = S.J;
  if (mul<Surd>(J, J) != MatR(-identity<Surd>(n))) return "J^2 != -Id";
  MatG Jg = to_gauss(J);
  const Gauss i = Gauss::i();
  for (int a : S.positive_roots) {
    MatG e(cd.root_vectors[a]);
    if (mul<Gauss>(Jg, e) != MatG(e * i)) return "J E_alpha != i E_alpha for a positive root";
    MatG f(cd.root_vectors[cd.negative_of[a]]);
    if (mul<Gauss>(Jg, f) != MatG(f * (-i))) return "J E_-alpha != -i E_-alpha";
  }
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < n; ++b) {
      auto pos = std::find(cd.torus.begin(), cd.torus.end(), b) - cd.torus.begin();
      Surd expect = pos < r ? S.torus_J(pos, a) : Surd(0);
      if (J(b, cd.torus[a]) != expect) return "J restricted to the torus differs from J_k";
    }
  // +i eigenspace = a + sum g_alpha, closed under bracket
  MatG Jmi = Jg - identity<Gauss>(n) * i;
  MatG s = kernel<Gauss>(Jmi);
  if (s.cols() != n / 2) return "+i eigenspace has wrong dimension";
  MatG torus_span = zeros<Gauss>(n, r);
  for (int a = 0; a < r; ++a) torus_span(cd.torus[a], a) = 1;
  MatG expected = intersect<Gauss>(s, torus_span);
  for (int a : S.positive_roots) expected = hcat<Gauss>(expected, MatG(cd.root_vectors[a]));
  if (rank<Gauss>(expected) != n / 2 || rank<Gauss>(hcat<Gauss>(expected, s)) != n / 2)
    return "+i eigenspace differs from a + sum of positive root spaces";
  for (Eigen::Index p = 0; p < s.cols(); ++p)
    for (Eigen::Index q = p + 1; q < s.cols(); ++q) {
      MatG br(L.bracket(VecG(s.col(p)), VecG(s.col(q))));
      if (!is_zero_matrix<Gauss>(mul<Gauss>(Jmi, br))) return "[s, s] is not contained in s";
    }
  if (!nijenhuis_vanishes(L, J)) return "Nijenhuis tensor does not vanish";
  MatR g = reference_metric(L);
  if (mul<Surd>(mul<Surd>(transpose<Surd>(J), g), J) != g) return "J is not compatible with the reference metric";
  return {};
}

std::vector<std::vector<int>> irreducible_components(const SamelsonStructure& S, const LieAlgebra& L,
                                                     const CartanData& cd) {
  const int nf = static_cast<int>(L.factors.size());
  std::vector<int> parent(nf);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const int r = static_cast<int>(cd.torus.size());
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      if (!S.torus_J(a, b).is_zero()) {
        int fa = find(L.factor_of(cd.torus[a]));
        int fb = find(L.factor_of(cd.torus[b]));
        if (fa != fb) parent[std::max(fa, fb)] = std::min(fa, fb);
      }
  std::vector<std::vector<int>> out;
  std::vector<int> slot(nf, -1);
  for (int f = 0; f < nf; ++f) {
    int root = find(f);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[slot[root]].push_back(f);
  }
  return out;
}

MatR biinvariant_metric(const SamelsonStructure& S, const LieAlgebra& L, const std::vector<Rational>& lambda) {
  if (lambda.size() != S.components.size())
    throw std::invalid_argument("expected " + std::to_string(S.components.size()) + " coefficients, got " +
                                std::to_string(lambda.size()));
  for (const Rational& l : lambda)
    if (sgn(l) <= 0) throw std::invalid_argument("bi-invariant coefficients must be positive");
  MatR ref = reference_metric(L);
  MatR g = zeros<Surd>(L.dimension, L.dimension);
  for (std::size_t c = 0; c < S.components.size(); ++c)
    for (int f : S.components[c])
      for (int a : L.factors[f])
        for (int b : L.factors[f]) g(a, b) = ref(a, b) * Surd(lambda[c]);
  return g;
}

Surd ad_invariance_defect(const LieAlgebra& L, const MatR& g) {
  const int n = L.dimension;
  Surd worst = 0;
  for (int x = 0; x < n; ++x) {
    MatR ad = L.ad(x);
    MatR m = mul<Surd>(transpose<Surd>(ad), g) + mul<Surd>(g, ad);  // g([x,y],z) + g(y,[x,z])
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Surd v = m(a, b).sign() < 0 ? -m(a, b) : m(a, b);
        if (v > worst) worst = v;
      }
  }
  return worst;
}

nlohmann::json to_json(const SamelsonStructure& S) {
  nlohmann::json j;
  j["J"] = matrix_to_json(S.J);
  j["torus_J"] = matrix_to_json(S.torus_J);
  j["positive_roots"] = S.positive_roots;
  j["components"] = S.components;
  return j;
}

}  // namespace samelson
