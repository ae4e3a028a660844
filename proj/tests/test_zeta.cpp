#include <gtest/gtest.h>

#include "iosc/runtime.hpp"
#include "iosc/zeta.hpp"
#include "support.hpp"

using namespace iosc;
using iosc::testing::P;

namespace {

PolySystem sys(std::size_t n, std::vector<const char*> gens) {
  std::vector<Poly> g;
  for (auto t : gens) g.push_back(P(t, n));
  return PolySystem(n, g);
}

std::vector<Rational> geometric(const Rational& a, const Rational& ratio, std::size_t n) {
  std::vector<Rational> out;
  Rational v = a;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(v);
    v *= ratio;
  }
  return out;
}

// vol{ord >= m} straight from brute-force counts.
Rational brute_volume(const PolySystem& s, std::uint64_t p, unsigned m) {
  if (m == 0) return 1;
  return Rational(iosc::testing::brute_count(s, p, m)) *
         qpow(Rational(to_integer(p)), -static_cast<long>(m * s.nvars));
}

}  // namespace

TEST(OrdDistribution, Examples) {
  auto d = ord_distribution(sys(1, {"x1"}), 3, 2);
  EXPECT_EQ(d.c[0], Rational(2, 3));
  EXPECT_EQ(d.c[1], Rational(2, 9));
  EXPECT_EQ(d.c[2], Rational(2, 27));

  EXPECT_THROW(ord_distribution(sys(1, {"1 - 1"}), 3, 2), InvalidInput);

  d = ord_distribution(sys(1, {"x1^2"}), 3, 2);
  EXPECT_EQ(d.c[0], Rational(2, 3));
  EXPECT_EQ(d.c[1], 0);
  EXPECT_EQ(d.c[2], Rational(2, 9));
}

TEST(OrdDistribution, TotalMeasureAndOracle) {
  std::mt19937_64 rng(301);
  for (int i = 0; i < 25; ++i) {
    const std::size_t n = 1 + rng() % 2;
    const PolySystem s(n, {iosc::testing::random_nonconstant(rng, n, 3, 3)});
    const std::uint64_t p = std::vector<std::uint64_t>{2, 3}[rng() % 2];
    const unsigned M = 3;
    const auto d = ord_distribution(s, p, M);
    Rational total = d.tail;
    for (const auto& c : d.c) total += c;
    EXPECT_EQ(total, 1);
    EXPECT_EQ(d.total, 1);
    for (unsigned m = 0; m <= M; ++m) {
      EXPECT_EQ(d.c[m], brute_volume(s, p, m) - brute_volume(s, p, m + 1));
    }
  }
}

TEST(Compa, Examples) {
  EXPECT_TRUE(compa_check(sys(1, {"x1"}), 1, 3, 4).holds);
  EXPECT_TRUE(compa_check(sys(1, {"x1^2"}), 1, 2, 4).holds);
  EXPECT_TRUE(compa_check(sys(2, {"x1*x2"}), 1, 3, 3).holds);
  EXPECT_THROW(compa_check(sys(1, {"x1"}), 1, 3, 1), InvalidInput);
}

TEST(Compa, RandomCorpusWithDefaultRegion) {
  std::mt19937_64 rng(303);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 1 + rng() % 2;
    const std::size_t r = 1 + rng() % 2;
    std::vector<Poly> g;
    for (std::size_t k = 0; k < r; ++k) g.push_back(iosc::testing::random_nonconstant(rng, n, 3, 3));
    const PolySystem s(n, g);
    const auto rep = compa_check(s, static_cast<unsigned>(r), std::vector<std::uint64_t>{2, 3}[rng() % 2], 4);
    EXPECT_TRUE(rep.holds);
    EXPECT_TRUE(rep.z_inside_x);
  }
}

TEST(Compa, ExplicitRegionsCarryCorrection) {
  // Z = full space is not inside X for f = x1; the correction term
  // vol(Z) - vol(Z cap X) balances the identity.
  const auto rep = compa_check(sys(1, {"x1"}), 1, 3, 4, Region::full(1));
  EXPECT_TRUE(rep.holds);
  EXPECT_FALSE(rep.z_inside_x);
  EXPECT_EQ(rep.correction, Rational(2, 3));
  std::mt19937_64 rng(305);
  for (int i = 0; i < 10; ++i) {
    const PolySystem s(2, {iosc::testing::random_nonconstant(rng, 2, 3, 3)});
    EXPECT_TRUE(compa_check(s, 1, 2, 3, Region::full(2)).holds);
    EXPECT_TRUE(compa_check(s, 1, 3, 3, Region::uniform(2, BlockMode::UnitModP)).holds);
  }
}

TEST(Poincare, RelationToZeta) {
  std::mt19937_64 rng(307);
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 1 + rng() % 2;
    const PolySystem s(n, {iosc::testing::random_nonconstant(rng, n, 3, 3)});
    const std::uint64_t p = std::vector<std::uint64_t>{2, 3}[rng() % 2];
    const unsigned M = 4;
    const QSeries Pser = poincare_series(s, p, M);
    const auto d = ord_distribution(s, p, M);
    // (1 - t) P(t) = 1 - t Z(t), coefficientwise.
    for (unsigned k = 0; k <= M; ++k) {
      const Rational lhs = Pser.coeffs[k] - (k > 0 ? Pser.coeffs[k - 1] : Rational(0));
      const Rational rhs = (k == 0 ? Rational(1) : Rational(0)) - (k > 0 ? d.c[k - 1] : Rational(0));
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(QSeries, Arithmetic) {
  QSeries a{3, {1, 2, 3}}, b{3, {1, -1}};
  EXPECT_EQ((a * b).coeffs, (std::vector<Rational>{1, 1}));
  EXPECT_EQ((a + a).coeffs, (std::vector<Rational>{2, 4, 6}));
  EXPECT_EQ((a - a).coeffs, (std::vector<Rational>{0, 0, 0}));
  QSeries c{5, {1}};
  EXPECT_THROW(a += c, InvalidInput);
}

TEST(Reconstruct, Examples) {
  auto rec = rational_reconstruct(geometric(Rational(2, 3), Rational(1, 3), 8), 2);
  ASSERT_EQ(rec.status, ReconstructStatus::Found);
  EXPECT_EQ(rec.func->numerator, (TPoly{Rational(2, 3)}));
  EXPECT_EQ(rec.func->denominator, (TPoly{1, Rational(-1, 3)}));

  rec = rational_reconstruct(std::vector<Rational>(6, 1), 3);
  ASSERT_EQ(rec.status, ReconstructStatus::Found);
  EXPECT_EQ(rec.func->numerator, (TPoly{1}));
  EXPECT_EQ(rec.func->denominator, (TPoly{1, -1}));

  rec = rational_reconstruct({3, 1, 4, 1, 5}, 3);
  EXPECT_EQ(rec.status, ReconstructStatus::InsufficientData);
  EXPECT_FALSE(rec.func);
  EXPECT_EQ(to_string(rec.status), "insufficient_data");
}

TEST(Reconstruct, NotFoundWithEnoughData) {
  // Squares of primes satisfy no short recurrence.
  std::vector<Rational> s{4, 9, 25, 49, 121, 169, 289, 361, 529, 841};
  const auto rec = rational_reconstruct(s, 2);
  EXPECT_EQ(rec.status, ReconstructStatus::NotFound);
}

TEST(Reconstruct, RoundTripsRandomRationalFunctions) {
  std::mt19937_64 rng(309);
  for (int i = 0; i < 40; ++i) {
    const unsigned d = 1 + static_cast<unsigned>(rng() % 3);
    RationalFunc f;
    f.denominator = {1};
    for (unsigned k = 0; k < d; ++k) f.denominator.push_back(make_rational(static_cast<long>(rng() % 7) - 3, static_cast<long>(1 + rng() % 4)));
    if (f.denominator.back() == 0) f.denominator.back() = 1;
    for (unsigned k = 0; k < d; ++k) f.numerator.push_back(make_rational(static_cast<long>(rng() % 9) - 4, static_cast<long>(1 + rng() % 3)));
    if (f.numerator.back() == 0) f.numerator.back() = 1;
    const auto coeffs = f.expand(2 * d + 4);
    const auto rec = rational_reconstruct(coeffs, d);
    ASSERT_EQ(rec.status, ReconstructStatus::Found);
    EXPECT_LE(rec.recurrence_order, d);
    EXPECT_EQ(rec.func->expand(2 * d + 4), coeffs);
    EXPECT_EQ(rec.func->expand(4 * d + 8), f.expand(4 * d + 8));
  }
}

TEST(Reconstruct, ZetaOfMonomialsAndPoleAtMinusR) {
  // f = x1 at p = 3: Z(t) = (2/3) / (1 - t/3), pole at t = 3 = p^r with r = 1.
  const auto d = ord_distribution(sys(1, {"x1"}), 3, 6);
  auto rec = rational_reconstruct(d.c, 3);
  ASSERT_EQ(rec.status, ReconstructStatus::Found);
  EXPECT_EQ(root_multiplicity(rec.func->denominator, 3), 1u);
  // f = x1^2: Z(t) = (2/3) / (1 - t^2/3).
  const auto d2 = ord_distribution(sys(1, {"x1^2"}), 3, 8);
  rec = rational_reconstruct(d2.c, 3);
  ASSERT_EQ(rec.status, ReconstructStatus::Found);
  EXPECT_EQ(rec.func->denominator, (TPoly{1, 0, Rational(-1, 3)}));
  EXPECT_EQ(root_multiplicity(rec.func->denominator, 3), 0u);
}

TEST(RootMultiplicity, Basics) {
  // (1 - t)^2 (1 + 2t)
  const TPoly p{1, 0, -3, 2};
  EXPECT_EQ(root_multiplicity(p, 1), 2u);
  EXPECT_EQ(root_multiplicity(p, Rational(-1, 2)), 1u);
  EXPECT_EQ(root_multiplicity(p, 2), 0u);
}

TEST(Theta, Examples) {
  auto rep = theta_probe(sys(3, {"x1^2 + x2^2 + x3^2"}), 1, 5, 4);
  EXPECT_EQ(rep.verdict, ThetaVerdict::Decaying);
  rep = theta_probe(sys(1, {"x1^2"}), 1, 3, 6);
  EXPECT_EQ(rep.verdict, ThetaVerdict::Growing);
  rep = theta_probe(sys(1, {"x1"}), 1, 3, 4);
  for (std::size_t m = 1; m < rep.terms.size(); ++m) EXPECT_EQ(rep.terms[m], 0);
  EXPECT_EQ(rep.verdict, ThetaVerdict::Decaying);
  EXPECT_THROW(theta_probe(sys(1, {"x1"}), 1, 3, 2), InvalidInput);
}

TEST(Theta, TermsMatchEAndPartialSums) {
  std::mt19937_64 rng(311);
  for (int i = 0; i < 10; ++i) {
    const PolySystem s(2, {iosc::testing::random_nonconstant(rng, 2, 3, 3)});
    const auto rep = theta_probe(s, 1, 3, 3);
    Rational acc = 1;
    for (unsigned m = 1; m <= 3; ++m) {
      EXPECT_EQ(rep.terms[m - 1], iosc::testing::brute_E(s, 1, 3, m) * Rational(ipow(3, m)));
      acc += rep.terms[m - 1];
      EXPECT_EQ(rep.partial_sums[m - 1], acc);
    }
  }
}

TEST(Theta, VerdictRule) {
  EXPECT_EQ(theta_verdict({1, Rational(1, 3)}), ThetaVerdict::Decaying);
  EXPECT_EQ(theta_verdict({1, Rational(1, 2)}), ThetaVerdict::Stalled);
  EXPECT_EQ(theta_verdict({1, 1}), ThetaVerdict::Stalled);
  EXPECT_EQ(theta_verdict({1, 2}), ThetaVerdict::Growing);
  EXPECT_EQ(theta_verdict({2, 0, -3, 0}), ThetaVerdict::Growing);
  EXPECT_EQ(theta_verdict({0, 0, 0}), ThetaVerdict::Decaying);
}
