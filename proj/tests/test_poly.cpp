#include <gtest/gtest.h>

#include "iosc/ideal.hpp"
#include "iosc/runtime.hpp"
#include "support.hpp"

using namespace iosc;
using iosc::testing::P;

TEST(Parse, Basics) {
  const Poly f = P("x1^2 - 3*x2", 2);
  EXPECT_EQ(f.term_count(), 2u);
  EXPECT_EQ(f.coefficient({2, 0}), 1);
  EXPECT_EQ(f.coefficient({0, 1}), -3);
  EXPECT_TRUE(P("0", 1).is_zero());
  const Poly g = P("(x1+x2)^2", 2);
  EXPECT_EQ(g.coefficient({2, 0}), 1);
  EXPECT_EQ(g.coefficient({1, 1}), 2);
  EXPECT_EQ(g.coefficient({0, 2}), 1);
  EXPECT_EQ(g.term_count(), 3u);
}

TEST(Parse, Errors) {
  EXPECT_THROW(P("x3", 2), InvalidInput);
  EXPECT_THROW(P("x1 +", 2), InvalidInput);
  EXPECT_THROW(P("(x1", 1), InvalidInput);
  EXPECT_THROW(P("x1 $ 2", 1), InvalidInput);
}

TEST(Parse, DeclaredNames) {
  const std::vector<std::string> names{"x", "y"};
  EXPECT_EQ(parse_poly("x*y + y", 2, names), P("x1*x2 + x2", 2));
}

TEST(Parse, RoundTripsThroughToString) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const Poly f = iosc::testing::random_poly(rng, 3, 4, 5);
    EXPECT_EQ(P(f.to_string().c_str(), 3), f) << f.to_string();
  }
}

TEST(EvalMod, Examples) {
  const Poly f = P("x1^2 + x2", 2);
  const std::vector<Integer> pt{2, 3};
  EXPECT_EQ(eval_mod(f, pt, 5, 2), 7);
  const std::vector<Integer> one{5};
  EXPECT_EQ(eval_mod(P("0", 1), one, 3, 1), 0);
  const std::vector<Integer> three{3};
  EXPECT_EQ(eval_mod(P("x1^3", 1), three, 3, 3), 0);
  const std::vector<Integer> neg{-4};
  EXPECT_EQ(eval_mod(P("x1", 1), neg, 3, 2), 5);
}

TEST(WeightedParts, Examples) {
  const Poly f = P("x1^3 + x1*x2 + x2", 2);
  auto parts = weighted_parts(f, Weight::ones(2));
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[3], P("x1^3", 2));
  EXPECT_EQ(parts[2], P("x1*x2", 2));
  EXPECT_EQ(parts[1], P("x2", 2));

  parts = weighted_parts(f, Weight({1, 2}));
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[3], P("x1^3 + x1*x2", 2));
  EXPECT_EQ(parts[2], P("x2", 2));
  EXPECT_EQ(f.weighted_degree(Weight({1, 2})), 3);
  EXPECT_EQ(top_weighted_part(f, Weight({1, 2})), P("x1^3 + x1*x2", 2));

  parts = weighted_parts(P("5", 1), Weight::ones(1));
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0], P("5", 1));
}

TEST(WeightedParts, SumToOriginalAndAreHomogeneous) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng() % 3;
    std::vector<unsigned> wv(n);
    for (auto& v : wv) v = 1 + static_cast<unsigned>(rng() % 3);
    const Weight w(wv);
    const Poly f = iosc::testing::random_poly(rng, n, 5, 6);
    Poly sum(n);
    for (const auto& [d, part] : weighted_parts(f, w)) {
      EXPECT_TRUE(is_weighted_homogeneous(part, w));
      EXPECT_EQ(part.weighted_degree(w), d);
      sum += part;
    }
    EXPECT_EQ(sum, f);
  }
}

TEST(Weight, RejectsZero) { EXPECT_THROW(Weight({1, 0}), InvalidInput); }

TEST(JacobianMinors, Examples) {
  std::vector<Poly> g1{P("x1^2 + x2^2", 2)};
  auto m1 = jacobian_minors(g1, 2);
  ASSERT_EQ(m1.size(), 2u);
  EXPECT_EQ(m1[0], P("2*x1", 2));
  EXPECT_EQ(m1[1], P("2*x2", 2));

  std::vector<Poly> g2{P("x1", 2), P("x2", 2)};
  auto m2 = jacobian_minors(g2, 2);
  ASSERT_EQ(m2.size(), 1u);
  EXPECT_EQ(m2[0], P("1", 2));

  std::vector<Poly> g3{P("x1^2", 2), P("x1*x2", 2)};
  auto m3 = jacobian_minors(g3, 2);
  ASSERT_EQ(m3.size(), 1u);
  EXPECT_EQ(m3[0], P("2*x1^2", 2));

  std::vector<Poly> g4{P("x1", 1), P("x1^2", 1)};
  EXPECT_THROW(jacobian_minors(g4, 1), InvalidInput);
}

TEST(TorusTransform, Examples) {
  EXPECT_EQ(torus_transform(P("x1^2", 1), Weight({2})), P("x1^2*x2^2", 2));
  EXPECT_EQ(torus_transform(P("x1 + x2", 2), Weight::ones(2)), P("x1 + x2", 2));
  const Poly t = torus_transform(P("x1*x2", 2), Weight({2, 1}));
  EXPECT_EQ(t, P("x1*x2*x3", 3));
  EXPECT_EQ(t.degree(), 3);
  EXPECT_EQ(P("x1*x2", 2).weighted_degree(Weight({2, 1})), 3);
}

TEST(TorusTransform, DegreeEqualsWeightedDegree) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = 1 + rng() % 3;
    std::vector<unsigned> wv(n);
    for (auto& v : wv) v = 1 + static_cast<unsigned>(rng() % 3);
    const Weight w(wv);
    const Poly top = top_weighted_part(iosc::testing::random_poly(rng, n, 4, 5), w);
    if (top.is_zero()) continue;
    const Poly t = torus_transform(top, w);
    EXPECT_EQ(t.nvars(), w.total());
    EXPECT_TRUE(is_weighted_homogeneous(t, Weight::ones(t.nvars())));
    EXPECT_EQ(t.degree(), top.weighted_degree(w));
  }
}

TEST(JetExpand, Examples) {
  const Poly f = P("x1^2", 1);
  auto J = jet_expand(f, 2, JetStart::Zero);
  ASSERT_EQ(J.size(), 3u);
  EXPECT_EQ(J[0], P("x1^2", 3));
  EXPECT_EQ(J[1], P("2*x1*x2", 3));
  EXPECT_EQ(J[2], P("x2^2 + 2*x1*x3", 3));

  J = jet_expand(f, 2, JetStart::One);
  ASSERT_EQ(J.size(), 3u);
  EXPECT_TRUE(J[0].is_zero());
  EXPECT_TRUE(J[1].is_zero());
  EXPECT_EQ(J[2], P("x1^2", 2));

  J = jet_expand(P("x1", 1), 1, JetStart::Zero);
  EXPECT_EQ(J[0], P("x1", 2));
  EXPECT_EQ(J[1], P("x2", 2));
}

namespace {

// Substitute x_i = sum_j x_{ij} t^j with t as one extra variable, then read
// off the t-coefficients.
std::vector<Poly> jet_oracle(const Poly& f, unsigned m, JetStart start) {
  const std::size_t n = f.nvars();
  const unsigned s = static_cast<unsigned>(start);
  const std::size_t nv = n * (m + 1 - s);
  const std::size_t t = nv;
  std::vector<Poly> images;
  for (std::size_t i = 0; i < n; ++i) {
    Poly xi(nv + 1);
    for (unsigned j = s; j <= m; ++j) {
      xi += Poly::variable(nv + 1, jet_variable(i, j, m, start)) * Poly::variable(nv + 1, t).pow(j);
    }
    images.push_back(xi);
  }
  const Poly full = f.substitute(images, nv + 1);
  std::vector<Poly> out(m + 1, Poly(nv));
  for (const auto& [mono, c] : full.terms()) {
    const unsigned k = mono[t];
    if (k > m) continue;
    Poly::Monomial head(mono.begin(), mono.end() - 1);
    out[k].add_term(head, c);
  }
  return out;
}

}  // namespace

TEST(JetExpand, MatchesSubstitutionOracle) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = 1 + rng() % 3;
    const Poly f = iosc::testing::random_poly(rng, n, 4, 4);
    const unsigned m = static_cast<unsigned>(rng() % 4);
    for (auto start : {JetStart::Zero, JetStart::One}) {
      if (start == JetStart::One && m == 0) continue;
      EXPECT_EQ(jet_expand(f, m, start), jet_oracle(f, m, start)) << f.to_string();
    }
  }
}

TEST(JetExpand, CoefficientUsesOnlyLowerJets) {
  std::mt19937_64 rng(23);
  const unsigned m = 3;
  for (int i = 0; i < 20; ++i) {
    const Poly f = iosc::testing::random_poly(rng, 2, 4, 4);
    const auto J = jet_expand(f, m, JetStart::Zero);
    for (unsigned k = 0; k <= m; ++k) {
      for (std::size_t v = 0; v < 2; ++v) {
        for (unsigned j = k + 1; j <= m; ++j) {
          EXPECT_FALSE(J[k].uses_variable(jet_variable(v, j, m, JetStart::Zero)));
        }
      }
    }
  }
}

TEST(Pairing, Examples) {
  IdealSpec spec(1, {{1, {P("x1", 1)}}, {2, {P("x1^2", 1)}}});
  EXPECT_EQ(build_pairing(spec), P("x1*x3 + x2*x3^2", 3));

  IdealSpec single(2, {{2, {P("x1*x2", 2)}}});
  EXPECT_EQ(build_pairing(single), P("x1*x2*x3", 3));

  // Vinogradov l = 2, D = 2 over (x1, x2, y1, y2).
  const Poly f1 = P("x1 + x2 - x3 - x4", 4), f2 = P("x1^2 + x2^2 - x3^2 - x4^2", 4);
  IdealSpec vino(4, {{1, {f1}}, {2, {f2}}});
  EXPECT_EQ(build_pairing(vino), Poly::variable(6, 0) * f1.embed(6, 2) + Poly::variable(6, 1) * f2.embed(6, 2));
}

TEST(IdealSpec, Validation) {
  EXPECT_THROW(IdealSpec(1, {{0, {P("3", 1)}}}), InvalidInput);
  EXPECT_THROW(IdealSpec(2, {{2, {P("x1", 2)}}}), InvalidInput);
  EXPECT_THROW(IdealSpec(2, {{2, {P("x1^2", 1)}}}), InvalidInput);
  IdealSpec w(2, {{2, {P("x1^2 + x2", 2)}}}, Weight({1, 2}));
  EXPECT_EQ(w.generator_count(), 1u);
  auto flat = IdealSpec::from_generators(2, {P("x1^2", 2), P("x1", 2), P("x2^2", 2)});
  ASSERT_EQ(flat.groups().size(), 2u);
  EXPECT_EQ(flat.groups()[0].degree, 1u);
  EXPECT_EQ(flat.groups()[1].gens.size(), 2u);
  EXPECT_EQ(flat.weighted_degree_sum(), 5u);
}

TEST(Highpart, RandomSpecs) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 12; ++i) {
    const std::size_t n = 1 + rng() % 2;
    std::vector<unsigned> wv(n);
    for (auto& v : wv) v = 1 + static_cast<unsigned>(rng() % 2);
    const Weight w(wv);
    std::vector<Poly> gens;
    const unsigned r = 1 + static_cast<unsigned>(rng() % 2);
    while (gens.size() < r) {
      Poly f = iosc::testing::random_nonconstant(rng, n, 3, 3);
      if (f.weighted_degree(w) > 0) gens.push_back(top_weighted_part(f, w) + P("1", n) * Integer(rng() % 3));
    }
    const auto spec = IdealSpec::from_generators(n, gens, w);
    for (unsigned m = 0; m <= 2; ++m) {
      const auto rep = highpart_check(spec, m);
      EXPECT_TRUE(rep.holds()) << "m=" << m;
    }
  }
}

TEST(RingAxioms, RandomTriples) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 60; ++i) {
    const Poly a = iosc::testing::random_poly(rng, 3, 3, 4);
    const Poly b = iosc::testing::random_poly(rng, 3, 3, 4);
    const Poly c = iosc::testing::random_poly(rng, 3, 3, 4);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(Poly, ArbitraryPrecision) {
  const Poly f = P("x1 + 1", 1).pow(80);
  EXPECT_EQ(f.coefficient({40}), Integer("107507208733336176461620"));
  const std::vector<Integer> pt{Integer("123456789012345678901234567890")};
  EXPECT_EQ(P("x1^2", 1).evaluate(pt), pt[0] * pt[0]);
}
