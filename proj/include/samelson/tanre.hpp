#pragma once

// Finite model of the Dolbeault double complex of (G, J):
//   Y (x) Lambda(nu_1..nu_m, nubar_1..nubar_m),  m = r/2,
// Y the coinvariant algebra in omega_1..omega_r (bidegree (1,1)), nu_k = sum_q (delta - iJ)_{kq} xi^q,
// delbar nu_k = sum_q (delta - iJ)_{kq} omega_q, del nubar_k = conjugate, zero on Y.
// Abelian torus directions carry omega_q = 0, so their generators are free.

#include "samelson/bicomplex.hpp"
#include "samelson/samelson.hpp"

#include <string>
#include <tuple>
#include <vector>

namespace samelson {

struct WeylGroup {
  std::vector<int> coords;           // torus coordinates it acts on (non-abelian factors)
  std::vector<MatR> reflections;     // one per positive root, on those coordinates
  std::vector<MatR> elements;
  std::size_t order() const { return elements.size(); }
};

WeylGroup weyl_group(const LieAlgebra& L, const CartanData& cd, std::size_t bound = 100000);

using Monomial = std::vector<int>;  // exponent vector
std::vector<Monomial> monomials(int nvars, int degree);
std::string monomial_name(const Monomial& m, const std::string& var = "w");

/// Matrix on degree-d polynomials of the substitution omega_j -> sum_k M(j,k) omega_k.
MatR substitution_matrix(const MatR& M, int degree);

/// Columns: a basis of W-invariant degree-d polynomials (coordinates over monomials()).
MatR invariant_polynomials(const WeylGroup& W, int degree);

struct Coinvariants {
  int nvars = 0;
  std::vector<std::vector<Monomial>> standard;    // basis monomials of Y_d
  std::vector<MatR> reduce;                       // P_d coordinates -> Y_d coordinates
  std::vector<std::vector<MatR>> times_var;       // [d][j]: Y_d -> Y_{d+1}
  std::vector<int> hilbert() const;
};

Coinvariants coinvariant_algebra(const WeylGroup& W, int max_degree);

struct TanreModel {
  DoubleComplex complex;
  int truncation = 0;
  int r = 0;                          // torus dimension
  int m = 0;                          // number of nu generators
  std::vector<int> semisimple_coords; // torus coordinates carrying an omega
  MatR torus_J;
  MatR gram;                          // reference metric on the torus
  std::vector<int> block_of;          // torus coordinate -> irreducible component
  int components = 0;
  bool has_abelian = false;
  MatG nu;                            // m x r, nu_k = sum_q nu(k, q) xi^q
  std::vector<std::string> nu_names;
  Coinvariants Y;

  /// Index of y (x) nu_A (x) nubar_B inside its bidegree; -1 when truncated away.
  int index(int d, int y, unsigned A, unsigned B) const;
  /// omega_q as an element of A^{1,1} (zero vector for abelian q).
  VecG omega(int q) const;
  /// Coordinates of xi^q - i (xi^q o J) in A^{1,0}.
  VecG xi_10(int q) const;
  /// The (1,1) element of the torus 2-form g(J., .) for a bilinear form on the torus.
  VecG torus_form(const MatR& g_torus) const;
  nlohmann::json generators_json() const;

  std::map<std::tuple<int, int, unsigned, unsigned>, int> index_;
};

/// Truncation is the bound on total degree (default 6).
TanreModel build_model(const LieAlgebra& L, const CartanData& cd, const SamelsonStructure& S, int truncation = 6);

nlohmann::json to_json(const TanreModel& model);

struct CentralSystem {
  int solution_dim = 0;        // dimension of the (Q, b) solution space
  int antisymmetric_dim = 0;   // dimension of {Q : Q + Q^t = 0}
  std::vector<MatR> A;         // basis of solutions, modulo A with Q(A) = 0
  std::vector<std::vector<Surd>> b;
  std::vector<MatG> Q;
  bool eigen_relations = true; // Q J = iQ and J^t Q = -iQ for every basis solution
  bool j_invariant = true;     // J^t (Q + Q^t) J = Q + Q^t
};

/// Q = (I + iJ^t) A (I - iJ),  Q + Q^t = blockdiag(b_c G_c), unknowns A real and b.
/// With G = Id this is Q = A - iJA - iAJ - JAJ, Q + Q^t = blockdiag(b_c Id).
CentralSystem central_square_solve(const MatR& J, const MatR& G, const std::vector<int>& block_of);
CentralSystem central_square_solve(const TanreModel& model);

struct AeppliH11 {
  int dimension = 0;
  MatG representatives;
  int central_dim = -1;                // -1 when abelian factors make the comparison inapplicable
  std::vector<VecG> metric_classes;    // Aeppli coordinates of each component's torus metric form
  int metric_class_rank = 0;
};

/// Needs truncation >= 4; throws std::logic_error when the central cross-check fails.
AeppliH11 aeppli_h11(const TanreModel& model);

}  // namespace samelson
