#pragma once

// Left-invariant tensor calculus. Conventions:
//   nabla_{e_i} e_j = sum_k Gamma[i](k, j) e_k
//   omega(x, y) = g(Jx, y), stored as the matrix J^T g
//   d omega(x,y,z) = -omega([x,y],z) + omega([x,z],y) - omega([y,z],x)
//   Bismut: g(B_x y, z) = g(LC_x y, z) + 1/2 d omega(Jx, Jy, Jz)
//   Chern:  g(Ch_x y, z) = g(LC_x y, z) - 1/2 d omega(Jx, y, z)
//   R(e_i, e_j) = [Gamma_i, Gamma_j] - sum_k c_ij^k Gamma_k
//   rho(x, y) = 1/2 tr(J R(x, y))
//   Lee form: d omega^{m-1} = theta ^ omega^{m-1}, m the complex dimension

#include "samelson/liealg.hpp"

#include <complex>
#include <random>
#include <string>
#include <vector>

namespace samelson {

/// Constant-coefficient k-form, components over strictly increasing index tuples.
template <class S>
class Form {
public:
  Form() = default;
  Form(int n, int k);

  int dim() const { return n_; }
  int degree() const { return k_; }
  std::size_t size() const { return c_.size(); }

  /// Value on basis vectors in any order (antisymmetric, repeated indices give 0).
  S at(std::vector<int> idx) const;
  void set(const std::vector<int>& sorted_idx, const S& v);
  S& component(std::size_t rank) { return c_[rank]; }
  const S& component(std::size_t rank) const { return c_[rank]; }
  /// Increasing tuple with the given rank.
  std::vector<int> tuple(std::size_t rank) const;
  std::size_t rank_of(const std::vector<int>& sorted_idx) const;

  static Form from_vector(const Vec<S>& v);
  static Form from_matrix(const Mat<S>& m);  // antisymmetric
  Mat<S> to_matrix() const;                  // for k == 2

private:
  int n_ = 0;
  int k_ = 0;
  std::vector<S> c_;
};

/// Chevalley-Eilenberg differential on invariant forms.
template <class S>
Form<S> invariant_d(const LieAlgebra& L, const Form<S>& phi);

template <class S>
Form<S> wedge(const Form<S>& a, const Form<S>& b);

/// Dense 3-tensor t(i, j, k), row-major.
template <class S>
struct Tensor3 {
  int n = 0;
  std::vector<S> v;
  Tensor3() = default;
  explicit Tensor3(int n_);
  S& operator()(int i, int j, int k) { return v[(static_cast<std::size_t>(i) * n + j) * n + k]; }
  const S& operator()(int i, int j, int k) const { return v[(static_cast<std::size_t>(i) * n + j) * n + k]; }
};

template <class S>
struct CurvatureReport {
  std::vector<Mat<S>> levi_civita;  // Gamma[i]
  std::vector<Mat<S>> bismut;
  std::vector<Mat<S>> chern;
  Tensor3<S> domega;                // d omega(e_i, e_j, e_k)
  Tensor3<S> torsion;               // g(T^B(e_i,e_j), e_k) = d omega(Je_i, Je_j, Je_k)
  Form<S> jdomega;                  // J d omega = -d omega(J., J., J.)
  S pluriclosed_residual;           // max |d J d omega|
  std::vector<Mat<S>> curvature;    // R^B(e_i, e_j), index i*n + j
  Mat<S> ricci;                     // rho^B
  Mat<S> ricci11;                   // (rho^B)^{1,1}
  Mat<S> ricci20;                   // (rho^B)^{(2,0)+(0,2)}
  Mat<S> chern_ricci;
  Vec<S> lee;
  S flat_norm;                      // max |R^B|
};

/// Requires g symmetric positive-definite and J-invariant.
template <class S>
CurvatureReport<S> curvature_report(const LieAlgebra& L, const Mat<S>& J, const Mat<S>& g);

/// Structure constants in the given scalar type, dense n^3.
template <class S>
std::vector<S> structure_tensor_as(const LieAlgebra& L);

template <class S>
Mat<S> levi_civita_lowered(const LieAlgebra& L, const Mat<S>& g, int i);  // (j, k) -> g(LC_i e_j, e_k)

/// Lee form from the closed formula theta_k = -1/2 g^{ij} d omega(Je_i, e_j, e_k).
template <class S>
Vec<S> lee_form(const LieAlgebra& L, const Mat<S>& J, const Mat<S>& g);

/// Lee form from its defining wedge equation (solved by least squares in doubles).
Eigen::VectorXd lee_form_by_wedge(const LieAlgebra& L, const MatD& J, const MatD& g);

/// Max norm of (rho^B)^{1,1} - rho^Ch - i((d theta^{0,1})^{1,1} - (d theta^{1,0})^{1,1}).
double verify_ricci_identity(const LieAlgebra& L, const MatD& J, const MatD& g);

/// Invariant checks of a report: torsion skew, B and Ch metric and J-parallel, Chern torsion without
/// (1,1)-part, Ricci split. Returns the first failure or empty.
std::string check_report(const LieAlgebra& L, const MatD& J, const MatD& g, const CurvatureReport<double>& rep,
                         double tol);

/// (1,1) and (2,0)+(0,2) parts of a real 2-form.
template <class S>
Mat<S> part11(const Mat<S>& J, const Mat<S>& phi);
template <class S>
Mat<S> part20(const Mat<S>& J, const Mat<S>& phi);

/// (2,0)-part of a real 2-form as a complex 2-form.
MatC complex_part20(const MatD& J, const MatD& phi);

/// d of a complex 1-form: D_ij = -sum_k c_ij^k phi_k.
MatC d_one_form(const LieAlgebra& L, const Eigen::VectorXcd& phi);

/// Metric of the three-parameter family omega_{alpha,beta,u} on su(3) + R^2.
/// Requires the algebra A2+T2 with its default Samelson structure.
MatD family_metric(const LieAlgebra& L, const MatD& J, double alpha, double beta, std::complex<double> u);

/// max |omega([x,y], Jz) + omega([x,z], Jy)| over basis x, y with z the first abelian basis vector.
double family_biinvariance_defect(const LieAlgebra& L, const MatD& J, const MatD& g);

/// g0 + a J-invariant symmetric perturbation with max-norm amplitude * |g0|_inf; resampled until positive.
MatD random_hermitian_metric(const MatD& g0, const MatD& J, double amplitude, std::mt19937_64& rng);

nlohmann::json report_json(const CurvatureReport<double>& rep, double ricci_identity_residual, bool full);

inline double abs_value(double x) { return x < 0 ? -x : x; }
inline Surd abs_value(const Surd& x) { return x.sign() < 0 ? -x : x; }

}  // namespace samelson
