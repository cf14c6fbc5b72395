#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ptspec {

using Rational = boost::multiprecision::cpp_rational;

// Exact scalar of the form  p + q*sqrt2 + i*(r + s*sqrt2)  with rational p, q, r, s.
// This set is a field: closed under +, -, *, / and conjugation.  Every coefficient
// produced by normal ordering powers of (a + a^dag)/sqrt2 lives here.
class ExactScalar {
public:
  ExactScalar() = default;
  ExactScalar(Rational p, Rational q = 0, Rational r = 0, Rational s = 0)
      : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)), s_(std::move(s)) {}

  static ExactScalar integer(long long n) { return ExactScalar(Rational(n)); }
  static ExactScalar fraction(long long num, long long den) {
    if (den == 0) throw std::invalid_argument("ExactScalar: zero denominator");
    return ExactScalar(Rational(num) / den);
  }
  static ExactScalar sqrt_two() { return ExactScalar(0, 1); }
  // sqrt2/2, the coefficient in x = (a + a^dag)/sqrt2
  static ExactScalar inv_sqrt_two() { return ExactScalar(0, Rational(1) / 2); }
  static ExactScalar imaginary_unit() { return ExactScalar(0, 0, 1); }

  const Rational& rat() const { return p_; }
  const Rational& rat_sqrt2() const { return q_; }
  const Rational& imag_rat() const { return r_; }
  const Rational& imag_rat_sqrt2() const { return s_; }

  bool is_zero() const { return p_ == 0 && q_ == 0 && r_ == 0 && s_ == 0; }
  bool is_real() const { return r_ == 0 && s_ == 0; }

  ExactScalar conjugate() const { return ExactScalar(p_, q_, -r_, -s_); }

  ExactScalar operator-() const { return ExactScalar(-p_, -q_, -r_, -s_); }

  ExactScalar& operator+=(const ExactScalar& o) {
    p_ += o.p_; q_ += o.q_; r_ += o.r_; s_ += o.s_;
    return *this;
  }
  ExactScalar& operator-=(const ExactScalar& o) { return *this += -o; }

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }

  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    // complex product with components in Q(sqrt2):
    // (A + iB)(C + iD) = (AC - BD) + i(AD + BC)
    auto [re_p, re_q] = sub(mul(a.p_, a.q_, b.p_, b.q_), mul(a.r_, a.s_, b.r_, b.s_));
    auto [im_p, im_q] = add(mul(a.p_, a.q_, b.r_, b.s_), mul(a.r_, a.s_, b.p_, b.q_));
    return ExactScalar(re_p, re_q, im_p, im_q);
  }
  ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }

  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
    if (b.is_zero()) throw std::invalid_argument("ExactScalar: division by zero");
    // a / b = a * conj(b) / (b * conj(b)); the denominator is real in Q(sqrt2)
    ExactScalar num = a * b.conjugate();
    auto [dp, dq] = add(mul(b.p_, b.q_, b.p_, b.q_), mul(b.r_, b.s_, b.r_, b.s_));
    // 1 / (dp + dq*sqrt2) = (dp - dq*sqrt2) / (dp^2 - 2 dq^2)
    Rational den = dp * dp - 2 * dq * dq;
    ExactScalar inv(dp / den, -dq / den);
    return num * inv;
  }
  ExactScalar& operator/=(const ExactScalar& o) { return *this = *this / o; }

  friend bool operator==(const ExactScalar&, const ExactScalar&) = default;

  template <class Scalar = double>
  std::complex<Scalar> to_complex() const {
    const Scalar root2 = std::sqrt(Scalar(2));
    return {static_cast<Scalar>(p_.convert_to<double>()) + static_cast<Scalar>(q_.convert_to<double>()) * root2,
            static_cast<Scalar>(r_.convert_to<double>()) + static_cast<Scalar>(s_.convert_to<double>()) * root2};
  }

  // Deterministic ASCII rendering, e.g. "3/8*sqrt2" or "(1/2 + sqrt2)*i".
  std::string str() const {
    std::string re = pair_str(p_, q_);
    std::string im = pair_str(r_, s_);
    if (im == "0") return re;
    std::string imag = (im == "1") ? "i" : (im == "-1") ? "-i" : wrap(im) + "*i";
    if (re == "0") return imag;
    if (imag[0] == '-') return wrap(re) + " - " + imag.substr(1);
    return wrap(re) + " + " + imag;
  }

private:
  // components of a Q(sqrt2) pair product: (x1 + y1*sqrt2)(x2 + y2*sqrt2)
  static std::pair<Rational, Rational> mul(const Rational& x1, const Rational& y1,
                                           const Rational& x2, const Rational& y2) {
    return {x1 * x2 + 2 * y1 * y2, x1 * y2 + y1 * x2};
  }
  static std::pair<Rational, Rational> add(std::pair<Rational, Rational> a,
                                           const std::pair<Rational, Rational>& b) {
    a.first += b.first; a.second += b.second;
    return a;
  }
  static std::pair<Rational, Rational> sub(std::pair<Rational, Rational> a,
                                           const std::pair<Rational, Rational>& b) {
    a.first -= b.first; a.second -= b.second;
    return a;
  }

  static std::string rat_str(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
  }
  static std::string pair_str(const Rational& x, const Rational& y) {
    if (y == 0) return rat_str(x);
    std::string root = (y == 1) ? "sqrt2" : (y == -1) ? "-sqrt2" : rat_str(y) + "*sqrt2";
    if (x == 0) return root;
    if (root[0] == '-') return rat_str(x) + " - " + root.substr(1);
    return rat_str(x) + " + " + root;
  }
  static std::string wrap(const std::string& s) {
    return (s.find(' ') == std::string::npos) ? s : "(" + s + ")";
  }

  Rational p_, q_, r_, s_;
};

}  // namespace ptspec
