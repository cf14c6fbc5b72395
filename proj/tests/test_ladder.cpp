#include "ptspec/ladder.hpp"

#include <doctest.h>

#include "support/oracles.hpp"

#include <cmath>
#include <random>

using namespace ptspec;

namespace {

ExactScalar frac(long long num, long long den) { return ExactScalar::fraction(num, den); }

const ExactScalar* coeff_of(const LadderPolynomial& p, int c, int a) {
  const auto it = p.terms().find({c, a});
  return it == p.terms().end() ? nullptr : &it->second;
}

}  // namespace

TEST_CASE("canonical commutators close exactly") {
  for (Sector s : {Sector::standard, Sector::tilde}) {
    CAPTURE(sector_name(s));
    const auto a = LadderPolynomial::lowering(s);
    const auto adag = LadderPolynomial::raising(s);
    CHECK(commutator(a, adag) == LadderPolynomial::unit(s));
    CHECK(commutator(adag, a) == LadderPolynomial::unit(s).scaled(ExactScalar::integer(-1)));
    const auto x = LadderPolynomial::position(s);
    const auto p = LadderPolynomial::momentum(s);
    CHECK(commutator(x, p) == LadderPolynomial::unit(s).scaled(ExactScalar::imaginary_unit()));
  }
}

TEST_CASE("exchange rule reorders annihilators past creators") {
  const auto a = LadderPolynomial::lowering(Sector::standard);
  const auto adag = LadderPolynomial::raising(Sector::standard);
  const auto n_op = LadderPolynomial::number_op(Sector::standard);

  CHECK(a * adag == n_op + LadderPolynomial::unit(Sector::standard));

  // a^2 adag^2 = adag^2 a^2 + 4 adag a + 2
  const auto lhs = a * a * adag * adag;
  LadderPolynomial expect(Sector::standard);
  expect.add_term({2, 2}, ExactScalar::integer(1));
  expect.add_term({1, 1}, ExactScalar::integer(4));
  expect.add_term({0, 0}, ExactScalar::integer(2));
  CHECK(lhs == expect);
}

TEST_CASE("normal-ordered square and cube of the position polynomial") {
  const auto x = LadderPolynomial::position(Sector::standard);

  // x^2 = (adag^2 + a^2)/2 + adag a + 1/2
  const auto x2 = x.pow(2);
  CHECK(x2 == x * x);
  REQUIRE(coeff_of(x2, 2, 0));
  CHECK(*coeff_of(x2, 2, 0) == frac(1, 2));
  CHECK(*coeff_of(x2, 0, 2) == frac(1, 2));
  CHECK(*coeff_of(x2, 1, 1) == ExactScalar::integer(1));
  CHECK(*coeff_of(x2, 0, 0) == frac(1, 2));
  CHECK(x2.terms().size() == 4);

  // x^3 = (adag^3 + 3 adag^2 a + 3 adag a^2 + a^3 + 3 adag + 3 a) / (2 sqrt2)
  const auto x3 = x.pow(3);
  const ExactScalar inv2r2 = frac(1, 2) * ExactScalar::inv_sqrt_two();
  CHECK(*coeff_of(x3, 3, 0) == inv2r2);
  CHECK(*coeff_of(x3, 0, 3) == inv2r2);
  CHECK(*coeff_of(x3, 2, 1) == inv2r2 * ExactScalar::integer(3));
  CHECK(*coeff_of(x3, 1, 2) == inv2r2 * ExactScalar::integer(3));
  CHECK(*coeff_of(x3, 1, 0) == inv2r2 * ExactScalar::integer(3));
  CHECK(*coeff_of(x3, 0, 1) == inv2r2 * ExactScalar::integer(3));
  CHECK(x3.terms().size() == 6);
  CHECK(x3.total_degree() == 3);
}

TEST_CASE("adjoint swaps powers and conjugates, with the tilde sign rule") {
  const auto a_std = LadderPolynomial::lowering(Sector::standard);
  CHECK(a_std.adjoint() == LadderPolynomial::raising(Sector::standard));

  // b^dag = -bbar and bbar^dag = -b
  const auto b = LadderPolynomial::lowering(Sector::tilde);
  const auto bbar = LadderPolynomial::raising(Sector::tilde);
  CHECK(b.adjoint() == bbar.scaled(ExactScalar::integer(-1)));
  CHECK(bbar.adjoint() == b.scaled(ExactScalar::integer(-1)));

  // even-degree products pick up no sign: (bbar b)^dag = bbar b
  CHECK(LadderPolynomial::number_op(Sector::tilde).adjoint() ==
        LadderPolynomial::number_op(Sector::tilde));

  // the tilde position and momentum are anti-Hermitian in the b algebra's adjoint
  for (const auto& gen :
       {LadderPolynomial::position(Sector::tilde), LadderPolynomial::momentum(Sector::tilde)}) {
    CHECK(gen.adjoint() == gen.scaled(ExactScalar::integer(-1)));
  }

  // adjoint is an involution in both sectors
  for (Sector s : {Sector::standard, Sector::tilde}) {
    const auto w = LadderPolynomial::position(s).pow(3).scaled(ExactScalar::imaginary_unit());
    CHECK(w.adjoint().adjoint() == w);
  }
}

TEST_CASE("mixed-sector arithmetic refuses") {
  const auto a = LadderPolynomial::lowering(Sector::standard);
  const auto b = LadderPolynomial::lowering(Sector::tilde);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK_THROWS_AS(a * b, std::invalid_argument);
}

TEST_CASE("number commutators grade the ladder") {
  for (Sector s : {Sector::standard, Sector::tilde}) {
    const auto n_op = LadderPolynomial::number_op(s);
    CHECK(commutator(n_op, LadderPolynomial::raising(s)) == LadderPolynomial::raising(s));
    CHECK(commutator(n_op, LadderPolynomial::lowering(s)) ==
          LadderPolynomial::lowering(s).scaled(ExactScalar::integer(-1)));
  }
}

TEST_CASE("frequency decomposition of the cubic interaction") {
  const auto ix3 = LadderPolynomial::position(Sector::tilde)
                       .scaled(ExactScalar::imaginary_unit())
                       .pow(3);
  const auto decomp = interaction_picture(ix3);

  REQUIRE(decomp.components.size() == 4);
  CHECK(decomp.components[0].net_degree == 3);
  CHECK(decomp.components[1].net_degree == 1);
  CHECK(decomp.components[2].net_degree == -1);
  CHECK(decomp.components[3].net_degree == -3);
  CHECK(decomp.find(0) == nullptr);
  CHECK(decomp.find(2) == nullptr);
  CHECK(decomp.components[0].frequency(2.5) == doctest::Approx(7.5));

  // the parts reassemble the polynomial
  LadderPolynomial sum(Sector::tilde);
  for (const auto& comp : decomp.components) sum = sum + comp.part;
  CHECK(sum == ix3);

  // each (d, -d) product is a polynomial in the number operator, in both orders
  for (int d : {1, 3}) {
    const auto* up = decomp.find(d);
    const auto* down = decomp.find(-d);
    REQUIRE(up);
    REQUIRE(down);
    CHECK(is_number_polynomial(*up * *down));
    CHECK(is_number_polynomial(*down * *up));
    CHECK_FALSE(is_number_polynomial(*up * *up));
  }
}

TEST_CASE("net degree parts partition the terms") {
  const auto x3 = LadderPolynomial::position(Sector::standard).pow(3);
  CHECK(x3.net_degree_part(3).terms().size() == 1);
  CHECK(x3.net_degree_part(1).terms().size() == 2);
  CHECK(x3.net_degree_part(0).is_zero());
  CHECK(x3.net_degree_part(2).is_zero());
}

TEST_CASE("rendering orders terms by descending degree") {
  const auto a = LadderPolynomial::lowering(Sector::standard);
  const auto adag = LadderPolynomial::raising(Sector::standard);
  CHECK((a * adag).str() == "c*a + 1");
  CHECK(LadderPolynomial(Sector::standard).str() == "0");
  CHECK(LadderPolynomial::position(Sector::standard).str() ==
        "1/2*sqrt2*c + 1/2*sqrt2*a");
  CHECK(LadderPolynomial::momentum(Sector::standard).str() ==
        "1/2*sqrt2*i*c + -1/2*sqrt2*i*a");
}

TEST_CASE("matrix realization reproduces hand values for x^3") {
  const auto x3 = LadderPolynomial::position(Sector::standard).pow(3);
  const Eigen::MatrixXcd m = to_matrix(x3, 8);

  CHECK(m(1, 0).real() == doctest::Approx(3.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-15));
  CHECK(m(3, 0).real() == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
  CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(m.imag().cwiseAbs().maxCoeff() == 0.0);

  // only |m - n| in {1, 3} is populated
  for (Eigen::Index col = 0; col < 8; ++col) {
    for (Eigen::Index row = 0; row < 8; ++row) {
      const auto gap = std::abs(row - col);
      if (gap != 1 && gap != 3) CHECK(m(row, col) == std::complex<double>(0.0));
    }
  }
}

TEST_CASE("matrix realization matches the independent scalar recursion") {
  // <n|x^k|m><m|x^k|n> from the engine against the Q(sqrt2) recursion oracle
  for (int k : {2, 3, 4, 5}) {
    const auto xk = LadderPolynomial::position(Sector::standard).pow(k);
    const Eigen::MatrixXcd m = to_matrix(xk, 16);
    for (int n : {0, 1, 4}) {
      for (int mm = 0; mm < 16 - k; ++mm) {
        const double engine = (m(mm, n) * m(n, mm)).real();
        const double expected = oracles::pair_product(n, mm, k).convert_to<double>();
        CHECK(engine == doctest::Approx(expected).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("product realization agrees with the matrix product away from the edge") {
  // Realizing P*Q at dimension N matches multiplying the factors realized on a
  // window enlarged past the band width, cropped back.  Relative tolerance
  // covers the rounding of the two routes; entries grow like N^(deg/2).
  const auto x = LadderPolynomial::position(Sector::standard);
  const auto p = LadderPolynomial::momentum(Sector::standard);
  const Eigen::Index n = 24;

  for (const auto& [lhs, rhs] : {std::pair{x.pow(2), x}, {x, p}, {x * p, x.pow(2)}}) {
    const Eigen::Index deg = lhs.total_degree() + rhs.total_degree();
    const Eigen::Index big = n + deg;
    const Eigen::MatrixXcd direct = to_matrix(lhs * rhs, n);
    const Eigen::MatrixXcd product = to_matrix(lhs, big) * to_matrix(rhs, big);
    const double scale = std::max(1.0, direct.cwiseAbs().maxCoeff());
    CHECK((direct - product.topLeftCorner(n, n)).cwiseAbs().maxCoeff() / scale < 1e-14);
  }

  // at head scale the agreement is absolute up to a few ulps
  const Eigen::MatrixXcd small_direct = to_matrix(x.pow(2), 6);
  const Eigen::MatrixXcd small_prod =
      (to_matrix(x, 8) * to_matrix(x, 8)).topLeftCorner(6, 6);
  CHECK((small_direct - small_prod).cwiseAbs().maxCoeff() < 5e-15);
}

namespace {

LadderPolynomial random_quartic(std::mt19937& rng) {
  LadderPolynomial poly(Sector::standard);
  int placed = 0;
  while (placed < 3) {
    const int c = static_cast<int>(rng() % 3);
    const int a = static_cast<int>(rng() % 3);
    if (c + a > 4) continue;
    const long long den = 1 + static_cast<long long>(rng() % 4);
    long long num = 1 + static_cast<long long>(rng() % den);
    if (rng() % 2) num = -num;
    ExactScalar q = ExactScalar::fraction(num, den);
    if (rng() % 2) q = q * ExactScalar::imaginary_unit();
    if (rng() % 2) q = q * ExactScalar::inv_sqrt_two();
    poly.add_term({c, a}, q);
    ++placed;
  }
  return poly;
}

}  // namespace

TEST_CASE("random quartic pairs realize multiplicatively") {
  // Multiplying in the algebra and then realizing equals realizing the
  // factors on an enlarged window and multiplying the matrices.  With
  // unit-scale coefficients the two routes agree absolutely at small
  // dimension; at larger dimension the comparison is scaled by the entry
  // growth.
  std::mt19937 rng(20260814u);
  for (int trial = 0; trial < 60; ++trial) {
    const LadderPolynomial lhs = random_quartic(rng);
    const LadderPolynomial rhs = random_quartic(rng);
    const Eigen::Index deg = lhs.total_degree() + rhs.total_degree();

    const Eigen::Index n = 6;
    const Eigen::MatrixXcd direct = to_matrix(lhs * rhs, n);
    const Eigen::MatrixXcd product =
        (to_matrix(lhs, n + deg) * to_matrix(rhs, n + deg)).topLeftCorner(n, n);
    CHECK((direct - product).cwiseAbs().maxCoeff() < 1e-13);

    const Eigen::Index big = 16;
    const Eigen::MatrixXcd wide_direct = to_matrix(lhs * rhs, big);
    const Eigen::MatrixXcd wide_product =
        (to_matrix(lhs, big + deg) * to_matrix(rhs, big + deg)).topLeftCorner(big, big);
    const double scale = std::max(1.0, wide_direct.cwiseAbs().maxCoeff());
    CHECK((wide_direct - wide_product).cwiseAbs().maxCoeff() / scale < 1e-14);
  }
}

TEST_CASE("matrix realization rejects empty truncations") {
  CHECK_THROWS_AS(to_matrix(LadderPolynomial::unit(Sector::standard), 0), std::invalid_argument);
  CHECK_THROWS_AS(LadderPolynomial::unit(Sector::standard).pow(-1), std::invalid_argument);
}
