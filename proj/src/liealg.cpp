#include "samelson/liealg.hpp"

#include "samelson/exact_linalg.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace samelson {

namespace {

struct Realization {
  std::vector<MatG> basis;
  std::vector<std::string> labels;
  std::vector<int> torus;
};

MatG unit(int n, int j, int k) {
  MatG m = zeros<Gauss>(n, n);
  m(j, k) = 1;
  return m;
}

const Gauss kI = Gauss::i();

Realization realize_su(int N) {
  Realization r;
  for (int j = 0; j + 1 < N; ++j) {
    r.basis.push_back((unit(N, j, j) - unit(N, j + 1, j + 1)) * kI);
    r.labels.push_back("h" + std::to_string(j + 1));
    r.torus.push_back(j);
  }
  for (int j = 0; j < N; ++j)
    for (int k = j + 1; k < N; ++k) {
      std::string tag = std::to_string(j + 1) + std::to_string(k + 1);
      r.basis.push_back(unit(N, j, k) - unit(N, k, j));
      r.labels.push_back("x" + tag);
      r.basis.push_back((unit(N, j, k) + unit(N, k, j)) * kI);
      r.labels.push_back("y" + tag);
    }
  return r;
}

Realization realize_so(int m) {
  Realization r;
  auto skew = [m](int j, int k) { return MatG(unit(m, j, k) - unit(m, k, j)); };
  std::vector<std::vector<bool>> used(m, std::vector<bool>(m, false));
  for (int a = 0; 2 * a + 1 < m; ++a) {
    r.basis.push_back(skew(2 * a, 2 * a + 1));
    r.labels.push_back("h" + std::to_string(a + 1));
    r.torus.push_back(a);
    used[2 * a][2 * a + 1] = true;
  }
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k) {
      if (used[j][k]) continue;
      r.basis.push_back(skew(j, k));
      r.labels.push_back("l" + std::to_string(j + 1) + "_" + std::to_string(k + 1));
    }
  return r;
}

// Compact sp(n): [[A, B], [-conj(B), conj(A)]], A skew-Hermitian, B symmetric.
Realization realize_sp(int n) {
  Realization r;
  auto block = [n](const MatG& a, const MatG& b) {
    MatG m = zeros<Gauss>(2 * n, 2 * n);
    m.topLeftCorner(n, n) = a;
    m.topRightCorner(n, n) = b;
    m.bottomLeftCorner(n, n) = -conj(b);
    m.bottomRightCorner(n, n) = conj(a);
    return m;
  };
  MatG z = zeros<Gauss>(n, n);
  for (int j = 0; j < n; ++j) {
    r.basis.push_back(block(unit(n, j, j) * kI, z));
    r.labels.push_back("h" + std::to_string(j + 1));
    r.torus.push_back(j);
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      std::string tag = std::to_string(j + 1) + std::to_string(k + 1);
      r.basis.push_back(block(unit(n, j, k) - unit(n, k, j), z));
      r.labels.push_back("x" + tag);
      r.basis.push_back(block((unit(n, j, k) + unit(n, k, j)) * kI, z));
      r.labels.push_back("y" + tag);
    }
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) {
      std::string tag = std::to_string(j + 1) + std::to_string(k + 1);
      MatG s = j == k ? unit(n, j, j) : MatG(unit(n, j, k) + unit(n, k, j));
      r.basis.push_back(block(z, s));
      r.labels.push_back("u" + tag);
      r.basis.push_back(block(z, s * kI));
      r.labels.push_back("v" + tag);
    }
  return r;
}

MatG commutator(const MatG& a, const MatG& b) { return mul(a, b) - mul(b, a); }

// Structure constants of a matrix realization, as (i, j, k, value) with i < j.
std::vector<StructureConstant> structure_constants(const Realization& r) {
  const int m = static_cast<int>(r.basis.size());
  const Eigen::Index N = r.basis.front().rows();
  auto vec = [N](const MatG& x) {
    MatG v(N * N, 1);
    for (Eigen::Index a = 0; a < N; ++a)
      for (Eigen::Index b = 0; b < N; ++b) v(a * N + b, 0) = x(a, b);
    return v;
  };
  MatG V(N * N, m);
  for (int i = 0; i < m; ++i) V.col(i) = vec(r.basis[i]);
  std::vector<std::pair<int, int>> pairs;
  MatG rhs(N * N, m * (m - 1) / 2);
  int col = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      rhs.col(col++) = vec(commutator(r.basis[i], r.basis[j]));
      pairs.emplace_back(i, j);
    }
  auto coeffs = solve<Gauss>(V, rhs);
  if (!coeffs) throw std::logic_error("matrix realization is not bracket-closed");
  std::vector<StructureConstant> out;
  for (std::size_t p = 0; p < pairs.size(); ++p)
    for (int k = 0; k < m; ++k) {
      const Gauss& v = (*coeffs)(k, static_cast<Eigen::Index>(p));
      if (v.is_zero()) continue;
      if (!v.is_real() || !v.real().is_rational())
        throw std::logic_error("realization produced non-rational structure constants");
      out.push_back({pairs[p].first, pairs[p].second, k, v.real().rational_part()});
    }
  return out;
}

void check_rank(const FactorSpec& f) {
  const int r = f.rank;
  bool ok = false;
  switch (f.type) {
    case CartanType::A: ok = r >= 1 && r <= 8; break;
    case CartanType::B: ok = r >= 2 && r <= 6; break;
    case CartanType::C: ok = r >= 2 && r <= 6; break;
    case CartanType::D: ok = r >= 3 && r <= 6; break;
    case CartanType::T: ok = r >= 1 && r <= 8; break;
  }
  if (!ok)
    throw std::invalid_argument("unsupported Cartan datum " + group_name({f}) +
                                " (supported: A1-A8, B2-B6, C2-C6, D3-D6, T1-T8)");
}

char type_letter(CartanType t) {
  switch (t) {
    case CartanType::A: return 'A';
    case CartanType::B: return 'B';
    case CartanType::C: return 'C';
    case CartanType::D: return 'D';
    case CartanType::T: return 'T';
  }
  return '?';
}

}  // namespace

std::vector<FactorSpec> parse_group(const std::string& text) {
  std::vector<FactorSpec> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, '+')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }),
               item.end());
    if (item.size() < 2) throw std::invalid_argument("bad group factor '" + item + "'");
    FactorSpec f{};
    switch (std::toupper(static_cast<unsigned char>(item[0]))) {
      case 'A': f.type = CartanType::A; break;
      case 'B': f.type = CartanType::B; break;
      case 'C': f.type = CartanType::C; break;
      case 'D': f.type = CartanType::D; break;
      case 'T': f.type = CartanType::T; break;
      default: throw std::invalid_argument("unknown Cartan type in '" + item + "'");
    }
    const std::string digits = item.substr(1);
    if (!std::all_of(digits.begin(), digits.end(), [](unsigned char ch) { return std::isdigit(ch); }))
      throw std::invalid_argument("bad rank in '" + item + "'");
    f.rank = std::stoi(digits);
    out.push_back(f);
  }
  if (out.empty()) throw std::invalid_argument("empty group description");
  return out;
}

std::string group_name(const std::vector<FactorSpec>& spec) {
  std::string s;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (i > 0) s += "+";
    s += type_letter(spec[i].type);
    s += std::to_string(spec[i].rank);
  }
  return s;
}

Rational LieAlgebra::c(int i, int j, int k) const {
  const std::size_t n = static_cast<std::size_t>(dimension);
  return dense_[(static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)) * n + static_cast<std::size_t>(k)];
}

int LieAlgebra::factor_of(int basis_index) const {
  for (std::size_t f = 0; f < factors.size(); ++f)
    if (std::find(factors[f].begin(), factors[f].end(), basis_index) != factors[f].end()) return static_cast<int>(f);
  throw std::out_of_range("basis index outside algebra");
}

MatR LieAlgebra::ad(int i) const {
  MatR a = zeros<Surd>(dimension, dimension);
  for (const auto& e : brackets)
    if (e.i == i) a(e.k, e.j) += Surd(e.value);
  return a;
}

VecG LieAlgebra::bracket(const VecG& x, const VecG& y) const {
  VecG out(dimension);
  for (int k = 0; k < dimension; ++k) out(k) = Gauss(0);
  for (const auto& e : brackets) {
    if (x(e.i).is_zero() || y(e.j).is_zero()) continue;
    out(e.k) += x(e.i) * y(e.j) * Gauss(e.value);
  }
  return out;
}

Eigen::VectorXd LieAlgebra::bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dimension);
  for (const auto& e : brackets) out(e.k) += x(e.i) * y(e.j) * e.value.get_d();
  return out;
}

std::vector<double> LieAlgebra::structure_tensor() const {
  std::vector<double> t(dense_.size());
  for (std::size_t a = 0; a < dense_.size(); ++a) t[a] = dense_[a].get_d();
  return t;
}

namespace {

void finalize(LieAlgebra& L, const std::vector<StructureConstant>& upper) {
  const std::size_t n = static_cast<std::size_t>(L.dimension);
  L.dense_.assign(n * n * n, Rational(0));
  L.brackets.clear();
  for (const auto& e : upper) {
    if (e.i == e.j) throw std::invalid_argument("structure constant with i == j");
    L.dense_[(e.i * n + e.j) * n + e.k] = e.value;
    L.dense_[(e.j * n + e.i) * n + e.k] = -e.value;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Rational& v = L.dense_[(i * n + j) * n + k];
        if (sgn(v) != 0) L.brackets.push_back({int(i), int(j), int(k), v});
      }
}

}  // namespace

LieAlgebra build_algebra(const std::vector<FactorSpec>& spec) {
  if (spec.empty()) throw std::invalid_argument("empty algebra description");
  LieAlgebra L;
  L.factor_types = spec;
  std::vector<StructureConstant> upper;
  int offset = 0;
  for (const FactorSpec& f : spec) {
    check_rank(f);
    Realization r;
    switch (f.type) {
      case CartanType::A: r = realize_su(f.rank + 1); break;
      case CartanType::B: r = realize_so(2 * f.rank + 1); break;
      case CartanType::C: r = realize_sp(f.rank); break;
      case CartanType::D: r = realize_so(2 * f.rank); break;
      case CartanType::T:
        for (int j = 0; j < f.rank; ++j) {
          r.labels.push_back("t" + std::to_string(j + 1));
          r.torus.push_back(j);
        }
        break;
    }
    const int m = static_cast<int>(r.labels.size());
    if (f.type != CartanType::T)
      for (const auto& e : structure_constants(r)) upper.push_back({e.i + offset, e.j + offset, e.k + offset, e.value});
    std::vector<int> block(m), tblock;
    for (int a = 0; a < m; ++a) block[a] = offset + a;
    for (int t : r.torus) tblock.push_back(offset + t);
    const std::string prefix = spec.size() > 1 ? std::to_string(L.factors.size() + 1) + ":" : "";
    for (const auto& lab : r.labels) L.labels.push_back(prefix + lab);
    L.factors.push_back(block);
    L.factor_torus.push_back(tblock);
    L.torus.insert(L.torus.end(), tblock.begin(), tblock.end());
    offset += m;
  }
  L.dimension = offset;
  L.rank = static_cast<int>(L.torus.size());
  finalize(L, upper);
  return L;
}

MatR killing_form(const LieAlgebra& L) {
  const int n = L.dimension;
  // ad_i(k, l) = c[i][l][k]; B_ij = sum_{k,l} ad_i(k,l) ad_j(l,k)
  std::vector<std::vector<const StructureConstant*>> by_i(n);
  for (const auto& e : L.brackets) by_i[e.i].push_back(&e);
  MatR B = zeros<Surd>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Rational s = 0;
      for (const StructureConstant* e : by_i[i]) {
        // ad_i(k=e.k, l=e.j) times ad_j(l, k) = c[j][k][l]
        Rational o = L.c(j, e->k, e->j);
        if (sgn(o) != 0) s += e->value * o;
      }
      B(i, j) = Surd(s);
      B(j, i) = Surd(s);
    }
  return B;
}

MatR reference_metric(const LieAlgebra& L) {
  MatR B = killing_form(L);
  MatR g = -B;
  for (std::size_t f = 0; f < L.factors.size(); ++f)
    if (L.is_abelian_factor(static_cast<int>(f)))
      for (int a : L.factors[f]) g(a, a) = 1;
  return g;
}

std::string check_structure(const LieAlgebra& L) {
  const int n = L.dimension;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (L.c(i, j, k) != -L.c(j, i, k)) {
          std::ostringstream os;
          os << "antisymmetry fails at c[" << i << "][" << j << "][" << k << "]";
          return os.str();
        }
  auto basis_vec = [n](int i) {
    VecG v(n);
    for (int a = 0; a < n; ++a) v(a) = Gauss(a == i ? 1 : 0);
    return v;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        VecG ei = basis_vec(i), ej = basis_vec(j), ek = basis_vec(k);
        VecG s = L.bracket(L.bracket(ei, ej), ek) + L.bracket(L.bracket(ej, ek), ei) + L.bracket(L.bracket(ek, ei), ej);
        for (int a = 0; a < n; ++a)
          if (!s(a).is_zero()) {
            std::ostringstream os;
            os << "Jacobi fails on (" << L.labels[i] << ", " << L.labels[j] << ", " << L.labels[k] << ")";
            return os.str();
          }
      }
  return {};
}

bool CartanData::is_positive(int a) const {
  long s = 0;
  for (std::size_t j = 0; j < h_reg.size(); ++j) s += static_cast<long>(roots[a][j]) * h_reg[j];
  return s > 0;
}

std::vector<int> CartanData::positive_roots() const {
  std::vector<int> out;
  for (int a = 0; a < static_cast<int>(roots.size()); ++a)
    if (is_positive(a)) out.push_back(a);
  return out;
}

namespace {

VecG unit_vec(int n, int i) {
  VecG v(n);
  for (int a = 0; a < n; ++a) v(a) = Gauss(a == i ? 1 : 0);
  return v;
}

bool in_span(const MatG& basis, const VecG& v) {
  if (is_zero_matrix<Gauss>(MatG(v))) return true;
  return rank<Gauss>(hcat<Gauss>(basis, MatG(v))) == rank<Gauss>(basis);
}

}  // namespace

CartanData cartan_decomposition(const LieAlgebra& L, const std::vector<int>& torus_choice, std::uint64_t seed) {
  const int n = L.dimension;
  CartanData cd;
  cd.torus = torus_choice.empty() ? L.torus : torus_choice;
  const int r = static_cast<int>(cd.torus.size());
  for (int t : cd.torus)
    if (t < 0 || t >= n) throw std::invalid_argument("torus index out of range");
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b)
      for (int k = 0; k < n; ++k)
        if (sgn(L.c(cd.torus[a], cd.torus[b], k)) != 0)
          throw std::invalid_argument("torus choice is not abelian: [" + L.labels[cd.torus[a]] + ", " +
                                      L.labels[cd.torus[b]] + "] != 0");

  // joint eigenspaces of ad(torus) on the complexification; eigenvalues i*k, k integer
  struct Space {
    std::vector<int> weight;
    MatG basis;
  };
  std::vector<Space> spaces{{{}, identity<Gauss>(n)}};
  for (int j = 0; j < r; ++j) {
    MatR adr = L.ad(cd.torus[j]);
    MatG ad = to_gauss(adr);
    double norm = to_double(adr).cwiseAbs().rowwise().sum().maxCoeff();
    const int bound = static_cast<int>(std::ceil(norm));
    std::vector<Space> next;
    for (const Space& s : spaces) {
      MatG image = mul<Gauss>(ad, s.basis);
      Eigen::Index found = 0;
      for (int k = -bound; k <= bound; ++k) {
        MatG shifted = image - s.basis * (kI * Gauss(k));
        MatG kc = kernel<Gauss>(shifted);
        if (kc.cols() == 0) continue;
        Space sub{s.weight, mul<Gauss>(s.basis, kc)};
        sub.weight.push_back(k);
        found += kc.cols();
        next.push_back(std::move(sub));
      }
      if (found != s.basis.cols())
        throw std::invalid_argument("ad(" + L.labels[cd.torus[j]] +
                                    ") has non-integer spectrum; rescale the torus basis");
    }
    spaces = std::move(next);
  }

  MatG torus_span = zeros<Gauss>(n, r);
  for (int a = 0; a < r; ++a) torus_span(cd.torus[a], a) = 1;
  std::vector<std::pair<std::vector<int>, VecG>> found_roots;
  auto is_zero_weight = [](const Space& s) {
    return std::all_of(s.weight.begin(), s.weight.end(), [](int w) { return w == 0; });
  };
  for (const Space& s : spaces) {
    if (!is_zero_weight(s) || s.basis.cols() == r) continue;
    for (Eigen::Index c = 0; c < s.basis.cols(); ++c) {
      VecG x = s.basis.col(c);
      if (in_span(torus_span, x)) continue;
      int lead = 0;
      while (x(lead).is_zero()) ++lead;
      throw std::invalid_argument("torus choice is not maximal abelian: [" + L.labels[cd.torus[0]] +
                                  ", X] = 0 for an element X outside the torus (leading basis element " +
                                  L.labels[lead] + ")");
    }
  }
  for (const Space& s : spaces) {
    if (is_zero_weight(s)) continue;
    if (s.basis.cols() != 1) throw std::logic_error("root space of dimension != 1");
    VecG v = s.basis.col(0);
    int lead = 0;
    while (v(lead).is_zero()) ++lead;
    Gauss inv = Gauss(1) / v(lead);
    for (int a = 0; a < n; ++a) v(a) *= inv;
    found_roots.emplace_back(s.weight, v);
  }
  std::sort(found_roots.begin(), found_roots.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  const int nr = static_cast<int>(found_roots.size());
  if (nr != n - r) throw std::logic_error("root count differs from n - r");
  cd.negative_of.assign(nr, -1);
  for (int a = 0; a < nr; ++a) {
    cd.roots.push_back(found_roots[a].first);
    cd.root_vectors.push_back(found_roots[a].second);
  }
  for (int a = 0; a < nr; ++a) {
    if (cd.negative_of[a] >= 0) continue;
    std::vector<int> neg = cd.roots[a];
    for (int& w : neg) w = -w;
    auto it = std::find(cd.roots.begin(), cd.roots.end(), neg);
    if (it == cd.roots.end()) throw std::logic_error("root without negative");
    int b = static_cast<int>(it - cd.roots.begin());
    cd.negative_of[a] = b;
    cd.negative_of[b] = a;
    VecG c = cd.root_vectors[a];
    for (int k = 0; k < n; ++k) c(k) = c(k).conj();
    cd.root_vectors[b] = c;
  }

  // positivity reference element: small integers, rejection-sampled
  std::mt19937_64 rng(seed);
  for (int attempt = 0;; ++attempt) {
    const int span = 3 + attempt / 50;
    std::uniform_int_distribution<int> dist(-span, span);
    cd.h_reg.assign(r, 0);
    for (int& h : cd.h_reg) h = dist(rng);
    bool regular = true;
    for (const auto& v : cd.roots) {
      long s = 0;
      for (int j = 0; j < r; ++j) s += static_cast<long>(v[j]) * cd.h_reg[j];
      if (s == 0) {
        regular = false;
        break;
      }
    }
    if (regular) break;
    if (attempt > 10000) throw std::logic_error("no regular element found");
  }

  // bracket relations and Killing orthogonality, exactly
  for (int a = 0; a < nr; ++a)
    for (int j = 0; j < r; ++j) {
      VecG lhs = L.bracket(unit_vec(n, cd.torus[j]), cd.root_vectors[a]);
      VecG rhs = cd.root_vectors[a] * (kI * Gauss(cd.roots[a][j]));
      if (lhs != rhs) throw std::logic_error("[H, E_alpha] != alpha(H) E_alpha");
    }
  MatG B = to_gauss(killing_form(L));
  for (int a = 0; a < nr; ++a)
    for (int b = 0; b < nr; ++b) {
      std::vector<int> sum(r);
      for (int j = 0; j < r; ++j) sum[j] = cd.roots[a][j] + cd.roots[b][j];
      VecG br = L.bracket(cd.root_vectors[a], cd.root_vectors[b]);
      bool zero_sum = std::all_of(sum.begin(), sum.end(), [](int w) { return w == 0; });
      auto it = std::find(cd.roots.begin(), cd.roots.end(), sum);
      if (zero_sum) {
        if (!in_span(torus_span, br)) throw std::logic_error("[g_alpha, g_-alpha] not in the torus");
      } else if (it != cd.roots.end()) {
        if (!in_span(MatG(cd.root_vectors[it - cd.roots.begin()]), br))
          throw std::logic_error("[g_alpha, g_beta] not in g_(alpha+beta)");
      } else if (!is_zero_matrix<Gauss>(MatG(br))) {
        throw std::logic_error("[g_alpha, g_beta] != 0 although alpha+beta is not a root");
      }
      if (!zero_sum) {
        Gauss pairing = mul<Gauss>(MatG(cd.root_vectors[a].transpose()), mul<Gauss>(B, MatG(cd.root_vectors[b])))(0, 0);
        if (!pairing.is_zero()) throw std::logic_error("Killing form pairs g_alpha and g_beta with alpha+beta != 0");
      }
    }
  return cd;
}

nlohmann::json matrix_to_json(const MatR& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json matrix_to_json(const MatG& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({to_string(m(i, j).real()), to_string(m(i, j).imag())});
    rows.push_back(row);
  }
  return rows;
}

namespace {

Surd surd_from_json(const nlohmann::json& e) {
  if (e.is_string()) return parse_surd(e.get<std::string>());
  if (e.is_number_integer()) return Surd(e.get<long>());
  throw std::invalid_argument("matrix entry must be a string like \"p/q\" or \"p/q+r/s*sqrt3\"");
}

}  // namespace

MatR surd_matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a non-empty array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
  MatR m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j.at(i).size()) != cols) throw std::invalid_argument("ragged matrix rows");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = surd_from_json(j.at(i).at(k));
  }
  return m;
}

MatG gauss_matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a non-empty array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
  MatG m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k) {
      const auto& e = j.at(i).at(k);
      m(i, k) = e.is_array() ? Gauss(surd_from_json(e.at(0)), surd_from_json(e.at(1))) : Gauss(surd_from_json(e));
    }
  return m;
}

nlohmann::json to_json(const LieAlgebra& L) {
  nlohmann::json j;
  j["group"] = group_name(L.factor_types);
  j["dimension"] = L.dimension;
  j["rank"] = L.rank;
  j["labels"] = L.labels;
  j["factors"] = L.factors;
  j["factor_torus"] = L.factor_torus;
  j["torus"] = L.torus;
  nlohmann::json sc = nlohmann::json::array();
  for (const auto& e : L.brackets)
    if (e.i < e.j) sc.push_back({e.i, e.j, e.k, e.value.get_str()});
  j["structure_constants"] = sc;
  return j;
}

LieAlgebra lie_algebra_from_json(const nlohmann::json& j) {
  LieAlgebra L;
  L.factor_types = parse_group(j.at("group").get<std::string>());
  L.dimension = j.at("dimension").get<int>();
  L.rank = j.at("rank").get<int>();
  L.labels = j.at("labels").get<std::vector<std::string>>();
  L.factors = j.at("factors").get<std::vector<std::vector<int>>>();
  L.factor_torus = j.at("factor_torus").get<std::vector<std::vector<int>>>();
  L.torus = j.at("torus").get<std::vector<int>>();
  std::vector<StructureConstant> upper;
  for (const auto& e : j.at("structure_constants"))
    upper.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>(),
                     parse_rational(e.at(3).get<std::string>())});
  finalize(L, upper);
  return L;
}

nlohmann::json to_json(const CartanData& cd) {
  nlohmann::json j;
  j["torus"] = cd.torus;
  j["roots"] = cd.roots;
  j["h_reg"] = cd.h_reg;
  j["negative_of"] = cd.negative_of;
  nlohmann::json vecs = nlohmann::json::array();
  for (const VecG& v : cd.root_vectors) {
    nlohmann::json entries = nlohmann::json::array();
    for (Eigen::Index a = 0; a < v.size(); ++a)
      entries.push_back({to_string(v(a).real()), to_string(v(a).imag())});
    vecs.push_back(entries);
  }
  j["root_vectors"] = vecs;
  return j;
}

CartanData cartan_data_from_json(const nlohmann::json& j) {
  CartanData cd;
  cd.torus = j.at("torus").get<std::vector<int>>();
  cd.roots = j.at("roots").get<std::vector<std::vector<int>>>();
  cd.h_reg = j.at("h_reg").get<std::vector<int>>();
  cd.negative_of = j.at("negative_of").get<std::vector<int>>();
  for (const auto& entries : j.at("root_vectors")) {
    VecG v(static_cast<Eigen::Index>(entries.size()));
    for (std::size_t a = 0; a < entries.size(); ++a)
      v(static_cast<Eigen::Index>(a)) = Gauss(parse_surd(entries[a].at(0).get<std::string>()),
                                              parse_surd(entries[a].at(1).get<std::string>()));
    cd.root_vectors.push_back(v);
  }
  return cd;
}

}  // namespace samelson
