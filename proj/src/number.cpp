#include "samelson/number.hpp"

#include <cmath>

namespace samelson {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  Rational q;
  if (q.set_str(text[0] == '+' ? text.substr(1) : text, 10) != 0 || sgn(q.get_den()) == 0)
    throw std::invalid_argument("bad rational literal '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::optional<Surd> Surd::sqrt_of(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (sgn(q) == 0) return Surd(0);
  auto exact_root = [](const Rational& x) -> std::optional<Rational> {
    if (mpz_perfect_square_p(x.get_num_mpz_t()) == 0 || mpz_perfect_square_p(x.get_den_mpz_t()) == 0)
      return std::nullopt;
    mpz_class n = sqrt(x.get_num());
    mpz_class d = sqrt(x.get_den());
    return Rational(n, d);
  };
  if (auto r = exact_root(q)) return Surd(*r);
  Rational third = q / 3;
  third.canonicalize();
  if (auto r = exact_root(third)) return Surd(0, *r);
  return std::nullopt;
}

int Surd::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare a^2 with 3 b^2
  Rational lhs = a_ * a_;
  Rational rhs = 3 * b_ * b_;
  int c = cmp(lhs, rhs);
  return c > 0 ? sa : (c < 0 ? sb : 0);
}

double Surd::to_double() const {
  static const double kSqrt3 = std::sqrt(3.0);
  return a_.get_d() + b_.get_d() * kSqrt3;
}

Surd& Surd::operator+=(const Surd& o) {
  a_ += o.a_;
  if (sgn(o.b_) != 0) b_ += o.b_;
  return *this;
}

Surd& Surd::operator-=(const Surd& o) {
  a_ -= o.a_;
  if (sgn(o.b_) != 0) b_ -= o.b_;
  return *this;
}

Surd& Surd::operator*=(const Surd& o) {
  if (sgn(b_) == 0 && sgn(o.b_) == 0) {
    a_ *= o.a_;
    return *this;
  }
  Rational a = a_ * o.a_ + 3 * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

Surd& Surd::operator/=(const Surd& o) {
  if (o.is_zero()) throw std::domain_error("division by zero in Q(sqrt3)");
  if (sgn(o.b_) == 0) {
    a_ /= o.a_;
    if (sgn(b_) != 0) b_ /= o.a_;
    return *this;
  }
  Rational norm = o.a_ * o.a_ - 3 * o.b_ * o.b_;
  Surd inv(o.a_ / norm, -o.b_ / norm);
  return *this *= inv;
}

Gauss& Gauss::operator+=(const Gauss& o) {
  re_ += o.re_;
  if (!o.im_.is_zero()) im_ += o.im_;
  return *this;
}

Gauss& Gauss::operator-=(const Gauss& o) {
  re_ -= o.re_;
  if (!o.im_.is_zero()) im_ -= o.im_;
  return *this;
}

Gauss& Gauss::operator*=(const Gauss& o) {
  if (im_.is_zero() && o.im_.is_zero()) {
    re_ *= o.re_;
    return *this;
  }
  Surd re = re_ * o.re_ - im_ * o.im_;
  Surd im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Gauss& Gauss::operator/=(const Gauss& o) {
  if (o.is_zero()) throw std::domain_error("division by zero in Q(i,sqrt3)");
  if (o.im_.is_zero()) {
    re_ /= o.re_;
    if (!im_.is_zero()) im_ /= o.re_;
    return *this;
  }
  Surd norm = o.re_ * o.re_ + o.im_ * o.im_;
  *this *= o.conj();
  re_ /= norm;
  im_ /= norm;
  return *this;
}

std::string to_string(const Surd& x) {
  const Rational& a = x.rational_part();
  const Rational& b = x.surd_part();
  if (sgn(b) == 0) return a.get_str();
  std::string coef;
  if (b == 1) coef = "sqrt3";
  else if (b == -1) coef = "-sqrt3";
  else coef = b.get_str() + "*sqrt3";
  if (sgn(a) == 0) return coef;
  return a.get_str() + (sgn(b) > 0 ? "+" : "") + coef;
}

Surd parse_surd(const std::string& text) {
  const std::string tag = "sqrt3";
  auto pos = text.find(tag);
  if (pos == std::string::npos) return Surd(parse_rational(text));
  if (pos + tag.size() != text.size()) throw std::invalid_argument("bad surd literal '" + text + "'");
  std::string head = text.substr(0, pos);
  if (!head.empty() && head.back() == '*') head.pop_back();
  // split "a+b" / "a-b" at the last sign that is not leading
  std::size_t cut = std::string::npos;
  for (std::size_t i = head.size(); i-- > 1;) {
    if (head[i] == '+' || head[i] == '-') {
      cut = i;
      break;
    }
  }
  std::string a_txt = cut == std::string::npos ? "" : head.substr(0, cut);
  std::string b_txt = cut == std::string::npos ? head : head.substr(cut);
  Rational b;
  if (b_txt.empty() || b_txt == "+") b = 1;
  else if (b_txt == "-") b = -1;
  else b = parse_rational(b_txt);
  Rational a = a_txt.empty() ? Rational(0) : parse_rational(a_txt);
  return {a, b};
}

std::string to_string(const Gauss& x) {
  if (x.is_real()) return to_string(x.real());
  return "(" + to_string(x.real()) + "," + to_string(x.imag()) + ")";
}

std::ostream& operator<<(std::ostream& os, const Surd& x) { return os << to_string(x); }
std::ostream& operator<<(std::ostream& os, const Gauss& x) { return os << to_string(x); }

MatG to_gauss(const MatR& m) {
  MatG out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Gauss(m(i, j));
  return out;
}

MatR real_part_exact(const MatG& m) {
  MatR out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_real()) throw std::domain_error("matrix entry is not real");
      out(i, j) = m(i, j).real();
    }
  return out;
}

MatD to_double(const MatR& m) {
  MatD out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
  return out;
}

MatC to_complex(const MatG& m) {
  MatC out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_complex();
  return out;
}

MatG conj(const MatG& m) {
  MatG out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).conj();
  return out;
}

}  // namespace samelson
