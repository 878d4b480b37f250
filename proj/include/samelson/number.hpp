#pragma once

// Exact scalars for the whole library.
//
//   Rational  : GMP rational
//   Surd      : a + b*sqrt(3), a, b rational (real subfield)
//   Gauss     : x + i*y with x, y Surd
//
// sqrt(3) is needed because the Killing form restricted to the torus of su(3)
// is the hexagonal form; a Killing-orthogonal complex structure on it has
// entries in Q(sqrt3). Everything else in the library is rational or
// Gaussian-rational and pays nothing extra for the surd part.

#include <Eigen/Core>
#include <gmpxx.h>

#include <complex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace samelson {

using Rational = mpq_class;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

class Surd {
public:
  Surd() = default;
  Surd(int v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Surd(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Surd(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  Surd(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static Surd sqrt3() { return {0, 1}; }
  /// sqrt(q) when q is in Q^2 or 3*Q^2, nothing otherwise.
  static std::optional<Surd> sqrt_of(const Rational& q);

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }
  int sign() const;
  double to_double() const;

  Surd conjugate_surd() const { return {a_, -b_}; }

  Surd& operator+=(const Surd& o);
  Surd& operator-=(const Surd& o);
  Surd& operator*=(const Surd& o);
  Surd& operator/=(const Surd& o);

  friend Surd operator+(Surd x, const Surd& y) { return x += y; }
  friend Surd operator-(Surd x, const Surd& y) { return x -= y; }
  friend Surd operator*(Surd x, const Surd& y) { return x *= y; }
  friend Surd operator/(Surd x, const Surd& y) { return x /= y; }
  friend Surd operator-(const Surd& x) { return {-x.a_, -x.b_}; }
  friend bool operator==(const Surd& x, const Surd& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const Surd& x, const Surd& y) { return !(x == y); }
  friend bool operator<(const Surd& x, const Surd& y) { return (x - y).sign() < 0; }
  friend bool operator>(const Surd& x, const Surd& y) { return (x - y).sign() > 0; }
  friend bool operator<=(const Surd& x, const Surd& y) { return (x - y).sign() <= 0; }
  friend bool operator>=(const Surd& x, const Surd& y) { return (x - y).sign() >= 0; }

private:
  Rational a_;
  Rational b_;
};

class Gauss {
public:
  Gauss() = default;
  Gauss(int v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Gauss(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Gauss(const Rational& v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Gauss(Surd re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  Gauss(Surd re, Surd im) : re_(std::move(re)), im_(std::move(im)) {}

  static Gauss i() { return {Surd(0), Surd(1)}; }

  const Surd& real() const { return re_; }
  const Surd& imag() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }
  Gauss conj() const { return {re_, -im_}; }
  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }

  Gauss& operator+=(const Gauss& o);
  Gauss& operator-=(const Gauss& o);
  Gauss& operator*=(const Gauss& o);
  Gauss& operator/=(const Gauss& o);

  friend Gauss operator+(Gauss x, const Gauss& y) { return x += y; }
  friend Gauss operator-(Gauss x, const Gauss& y) { return x -= y; }
  friend Gauss operator*(Gauss x, const Gauss& y) { return x *= y; }
  friend Gauss operator/(Gauss x, const Gauss& y) { return x /= y; }
  friend Gauss operator-(const Gauss& x) { return {-x.re_, -x.im_}; }
  friend bool operator==(const Gauss& x, const Gauss& y) { return x.re_ == y.re_ && x.im_ == y.im_; }
  friend bool operator!=(const Gauss& x, const Gauss& y) { return !(x == y); }

private:
  Surd re_;
  Surd im_;
};

inline bool is_zero(const Surd& x) { return x.is_zero(); }
inline bool is_zero(const Gauss& x) { return x.is_zero(); }
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

inline double to_double(const Surd& x) { return x.to_double(); }
inline double to_double(const Rational& x) { return x.get_d(); }
inline double to_double(double x) { return x; }

inline Gauss conj(const Gauss& x) { return x.conj(); }

/// "p/q", "p/q*sqrt3", "p/q+r/s*sqrt3"; whitespace-free.
std::string to_string(const Surd& x);
Surd parse_surd(const std::string& text);
/// Real and imaginary parts in Surd syntax.
std::string to_string(const Gauss& x);

std::ostream& operator<<(std::ostream& os, const Surd& x);
std::ostream& operator<<(std::ostream& os, const Gauss& x);

}  // namespace samelson

namespace Eigen {

template <>
struct NumTraits<samelson::Surd> : GenericNumTraits<samelson::Surd> {
  using Real = samelson::Surd;
  using NonInteger = samelson::Surd;
  using Nested = samelson::Surd;
  using Literal = samelson::Surd;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 128
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<samelson::Gauss> : GenericNumTraits<samelson::Gauss> {
  using Real = samelson::Surd;
  using NonInteger = samelson::Gauss;
  using Nested = samelson::Gauss;
  using Literal = samelson::Gauss;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 64,
    MulCost = 512
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace samelson {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using MatR = Mat<Surd>;
using MatG = Mat<Gauss>;
using VecG = Vec<Gauss>;
using MatD = Eigen::MatrixXd;
using MatC = Eigen::MatrixXcd;

MatG to_gauss(const MatR& m);
/// Throws if any entry has a nonzero imaginary part.
MatR real_part_exact(const MatG& m);
MatD to_double(const MatR& m);
MatC to_complex(const MatG& m);
MatG conj(const MatG& m);

}  // namespace samelson
