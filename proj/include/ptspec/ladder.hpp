#pragma once

#include "ptspec/exact_scalar.hpp"

#include <Eigen/Dense>

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptspec {

// The standard sector works with (a, a^dag), [a, a^dag] = 1.  The tilde sector works
// with the generators b and bbar of the indefinite-metric oscillator, where b plays
// the annihilation role and bbar the creation role and [b, bbar] = 1.  Both sectors
// share one commutation algebra, so normal ordering is sector independent; only the
// adjoint differs (in the tilde sector b^dag = -bbar and bbar^dag = -b).
enum class Sector { standard, tilde };

inline const char* sector_name(Sector s) {
  return s == Sector::standard ? "standard" : "tilde";
}

// Monomial in normal order: creation generator to power c, annihilation to power a.
struct MonomialKey {
  int c = 0;
  int a = 0;
  friend auto operator<=>(const MonomialKey&, const MonomialKey&) = default;
};

// Polynomial in the ladder generators of one sector, kept in normal-ordered
// canonical form (every term has all creation factors left of all annihilation
// factors) with exact coefficients.
class LadderPolynomial {
public:
  using TermMap = std::map<MonomialKey, ExactScalar>;

  explicit LadderPolynomial(Sector s = Sector::standard) : sector_(s) {}

  static LadderPolynomial unit(Sector s) {
    LadderPolynomial p(s);
    p.add_term({0, 0}, ExactScalar::integer(1));
    return p;
  }
  // a in the standard sector, b in the tilde sector
  static LadderPolynomial lowering(Sector s) {
    LadderPolynomial p(s);
    p.add_term({0, 1}, ExactScalar::integer(1));
    return p;
  }
  // a^dag in the standard sector, bbar in the tilde sector
  static LadderPolynomial raising(Sector s) {
    LadderPolynomial p(s);
    p.add_term({1, 0}, ExactScalar::integer(1));
    return p;
  }
  // x = (a + a^dag)/sqrt2, or the tilde-sector analogue (b + bbar)/sqrt2
  static LadderPolynomial position(Sector s) {
    LadderPolynomial p(s);
    p.add_term({0, 1}, ExactScalar::inv_sqrt_two());
    p.add_term({1, 0}, ExactScalar::inv_sqrt_two());
    return p;
  }
  // p = -i(a - a^dag)/sqrt2, or the tilde-sector analogue -i(b - bbar)/sqrt2
  static LadderPolynomial momentum(Sector s) {
    LadderPolynomial p(s);
    ExactScalar c = ExactScalar::imaginary_unit() * ExactScalar::inv_sqrt_two();
    p.add_term({0, 1}, -c);
    p.add_term({1, 0}, c);
    return p;
  }
  // a^dag a; in the tilde sector bbar b, the number operator of that oscillator
  static LadderPolynomial number_op(Sector s) {
    LadderPolynomial p(s);
    p.add_term({1, 1}, ExactScalar::integer(1));
    return p;
  }

  Sector sector() const { return sector_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int total_degree() const {
    int d = 0;
    for (const auto& [key, coeff] : terms_) d = std::max(d, key.c + key.a);
    return d;
  }

  void add_term(MonomialKey key, const ExactScalar& coeff) {
    if (coeff.is_zero()) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, coeff);
      return;
    }
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }

  LadderPolynomial scaled(const ExactScalar& c) const {
    LadderPolynomial out(sector_);
    if (c.is_zero()) return out;
    for (const auto& [key, coeff] : terms_) out.add_term(key, coeff * c);
    return out;
  }

  friend LadderPolynomial operator+(const LadderPolynomial& a, const LadderPolynomial& b) {
    check_sectors(a, b);
    LadderPolynomial out = a;
    for (const auto& [key, coeff] : b.terms_) out.add_term(key, coeff);
    return out;
  }
  friend LadderPolynomial operator-(const LadderPolynomial& a, const LadderPolynomial& b) {
    return a + b.scaled(ExactScalar::integer(-1));
  }

  // Product re-normal-ordered with the exchange rule a (adag)^c = (adag)^c a + c (adag)^(c-1),
  // applied one annihilation factor at a time.
  friend LadderPolynomial operator*(const LadderPolynomial& lhs, const LadderPolynomial& rhs) {
    check_sectors(lhs, rhs);
    LadderPolynomial out(lhs.sector_);
    for (const auto& [k1, q1] : lhs.terms_) {
      for (const auto& [k2, q2] : rhs.terms_) {
        // reorder a^{k1.a} (adag)^{k2.c} into normal form
        std::map<MonomialKey, Rational> cur;
        cur[{k2.c, 0}] = 1;
        for (int step = 0; step < k1.a; ++step) {
          std::map<MonomialKey, Rational> next;
          for (const auto& [key, n] : cur) {
            next[{key.c, key.a + 1}] += n;
            if (key.c > 0) next[{key.c - 1, key.a}] += n * key.c;
          }
          cur = std::move(next);
        }
        ExactScalar q = q1 * q2;
        for (const auto& [key, n] : cur) {
          out.add_term({k1.c + key.c, key.a + k2.a}, q * ExactScalar(Rational(n)));
        }
      }
    }
    return out;
  }

  LadderPolynomial pow(int k) const {
    if (k < 0) throw std::invalid_argument("LadderPolynomial::pow: negative exponent");
    LadderPolynomial out = unit(sector_);
    for (int j = 0; j < k; ++j) out = out * *this;
    return out;
  }

  // Adjoint of (c, a) is (a, c) with conjugate coefficient; already normal ordered.
  // In the tilde sector the generator map b -> -bbar, bbar -> -b adds (-1)^(c+a).
  LadderPolynomial adjoint() const {
    LadderPolynomial out(sector_);
    for (const auto& [key, coeff] : terms_) {
      ExactScalar q = coeff.conjugate();
      if (sector_ == Sector::tilde && (key.c + key.a) % 2 != 0) q = -q;
      out.add_term({key.a, key.c}, q);
    }
    return out;
  }

  // Terms whose creation-minus-annihilation degree equals d.
  LadderPolynomial net_degree_part(int d) const {
    LadderPolynomial out(sector_);
    for (const auto& [key, coeff] : terms_) {
      if (key.c - key.a == d) out.add_term(key, coeff);
    }
    return out;
  }

  friend bool operator==(const LadderPolynomial& a, const LadderPolynomial& b) {
    return a.sector_ == b.sector_ && a.terms_ == b.terms_;
  }

  // Rendering with c = creation, a = annihilation, highest degree first,
  // e.g. "3*c^2*a + 3*c".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [key, coeff] = *it;
      if (!out.empty()) out += " + ";
      std::string mono = monomial_str(key);
      std::string cs = coeff.str();
      if (mono.empty()) {
        out += cs;
      } else if (cs == "1") {
        out += mono;
      } else if (cs == "-1") {
        out += "-" + mono;
      } else {
        if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
        out += cs + "*" + mono;
      }
    }
    return out;
  }

private:
  static void check_sectors(const LadderPolynomial& a, const LadderPolynomial& b) {
    if (a.sector_ != b.sector_)
      throw std::invalid_argument("LadderPolynomial: mixed-sector arithmetic");
  }
  static std::string monomial_str(const MonomialKey& key) {
    std::string s;
    auto power = [&s](const char* gen, int p) {
      if (p == 0) return;
      if (!s.empty()) s += "*";
      s += gen;
      if (p > 1) s += "^" + std::to_string(p);
    };
    power("c", key.c);
    power("a", key.a);
    return s;
  }

  Sector sector_;
  TermMap terms_;
};

inline LadderPolynomial commutator(const LadderPolynomial& a, const LadderPolynomial& b) {
  return a * b - b * a;
}

// One rotating component of an interaction-picture operator: the part of net
// degree d evolves freely as exp(i d omega t).
struct FrequencyComponent {
  int net_degree = 0;
  LadderPolynomial part;
  double frequency(double omega) const { return net_degree * omega; }
};

struct FrequencyDecomposition {
  std::vector<FrequencyComponent> components;  // ordered by descending net degree

  const LadderPolynomial* find(int d) const {
    for (const auto& comp : components)
      if (comp.net_degree == d) return &comp.part;
    return nullptr;
  }
};

inline FrequencyDecomposition interaction_picture(const LadderPolynomial& poly) {
  FrequencyDecomposition out;
  std::map<int, LadderPolynomial> parts;
  for (const auto& [key, coeff] : poly.terms()) {
    int d = key.c - key.a;
    auto it = parts.find(d);
    if (it == parts.end()) it = parts.emplace(d, LadderPolynomial(poly.sector())).first;
    it->second.add_term(key, coeff);
  }
  for (auto it = parts.rbegin(); it != parts.rend(); ++it)
    out.components.push_back({it->first, it->second});
  return out;
}

// True when every monomial has equal creation and annihilation powers; such a
// polynomial is a polynomial in the number operator alone.
inline bool is_number_polynomial(const LadderPolynomial& poly) {
  for (const auto& [key, coeff] : poly.terms())
    if (key.c != key.a) return false;
  return true;
}

namespace detail {
// n (n-1) ... (n-j+1); exactly zero when j > n
template <class Scalar>
Scalar falling_factorial(Eigen::Index n, int j) {
  Scalar r = 1;
  for (int t = 0; t < j; ++t) r *= Scalar(n - t);
  return r;
}
}  // namespace detail

// Truncated matrix of a normal-ordered polynomial on the N-dimensional number
// basis.  Entries are the exact infinite-dimensional band values: a normal-ordered
// monomial (c, a) contributes sqrt(n!/(n-a)!) * sqrt(m!/(m-c)!) at column n,
// row m = n - a + c, which never involves states outside the window reached by
// enlarging the dimension by the total degree and cropping back.  Both sectors
// realize their generators as the same matrices (the sign of bbar = -adag is a
// relabeling absorbed here), so the realization is sector independent.
template <class Scalar = double>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>
to_matrix(const LadderPolynomial& poly, Eigen::Index dim) {
  if (dim < 1) throw std::invalid_argument("to_matrix: dimension must be at least 1");
  using Matrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix out = Matrix::Zero(dim, dim);
  for (const auto& [key, coeff] : poly.terms()) {
    const std::complex<Scalar> q = coeff.template to_complex<Scalar>();
    for (Eigen::Index n = key.a; n < dim; ++n) {
      const Eigen::Index m = n - key.a + key.c;
      if (m >= dim) continue;
      using std::sqrt;
      const Scalar f_down = detail::falling_factorial<Scalar>(n, key.a);
      const Scalar f_up = detail::falling_factorial<Scalar>(m, key.c);
      // diagonal monomials have f_down == f_up; skip the square roots so the
      // entry is exact
      const Scalar amp = (key.a == key.c) ? f_down : sqrt(f_down) * sqrt(f_up);
      out(m, n) += q * amp;
    }
  }
  return out;
}

}  // namespace ptspec
