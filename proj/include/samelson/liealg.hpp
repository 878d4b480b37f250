#pragma once

#include "samelson/number.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace samelson {

/// T is an abelian summand of the given dimension (a torus factor).
enum class CartanType { A, B, C, D, T };

struct FactorSpec {
  CartanType type;
  int rank;
};

/// "A2", "A1+A1", "A2+T2", case-insensitive type letters.
std::vector<FactorSpec> parse_group(const std::string& text);
std::string group_name(const std::vector<FactorSpec>& spec);

struct StructureConstant {
  int i, j, k;
  Rational value;
};

struct LieAlgebra {
  int dimension = 0;
  int rank = 0;
  std::vector<std::string> labels;
  std::vector<FactorSpec> factor_types;
  std::vector<std::vector<int>> factors;        // basis indices per factor
  std::vector<int> torus;                       // default torus basis indices
  std::vector<std::vector<int>> factor_torus;   // torus indices per factor
  std::vector<StructureConstant> brackets;      // nonzero c[i][j][k], both orders

  /// c[i][j][k] as a dense lookup.
  Rational c(int i, int j, int k) const;
  bool is_abelian_factor(int f) const { return factor_types[f].type == CartanType::T; }
  int factor_of(int basis_index) const;

  /// ad(e_i) as a matrix: column j holds [e_i, e_j].
  MatR ad(int i) const;
  /// Bracket of coefficient vectors over any scalar that mixes with Rational.
  VecG bracket(const VecG& x, const VecG& y) const;
  Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  /// Dense c[i][j][k] in doubles, index i*n*n + j*n + k.
  std::vector<double> structure_tensor() const;

  std::vector<Rational> dense_;  // n^3, filled by build_algebra / from_json
};

LieAlgebra build_algebra(const std::vector<FactorSpec>& spec);

/// B[i][j] = tr(ad e_i ad e_j).
MatR killing_form(const LieAlgebra& L);

/// -B on semisimple factors, identity on abelian factors. Positive-definite.
MatR reference_metric(const LieAlgebra& L);

/// Exact checks of antisymmetry and Jacobi; empty string when fine.
std::string check_structure(const LieAlgebra& L);

struct CartanData {
  std::vector<int> torus;                  // basis indices z_1..z_r
  std::vector<std::vector<int>> roots;     // alpha(z_j) = i * roots[a][j]
  std::vector<VecG> root_vectors;          // E_alpha, E_{-alpha} = conj(E_alpha)
  std::vector<int> h_reg;                  // positivity reference element
  std::vector<int> negative_of;            // index of -alpha

  bool is_positive(int a) const;
  std::vector<int> positive_roots() const;
};

/// torus_choice: basis indices of a maximal abelian subalgebra, default L.torus.
CartanData cartan_decomposition(const LieAlgebra& L, const std::vector<int>& torus_choice = {},
                                std::uint64_t seed = 0);

/// Dense matrices as rows of exact strings; complex entries as [re, im] pairs.
nlohmann::json matrix_to_json(const MatR& m);
nlohmann::json matrix_to_json(const MatG& m);
MatR surd_matrix_from_json(const nlohmann::json& j);
MatG gauss_matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const LieAlgebra& L);
LieAlgebra lie_algebra_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CartanData& cd);
CartanData cartan_data_from_json(const nlohmann::json& j);

}  // namespace samelson
