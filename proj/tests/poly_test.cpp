#include <gtest/gtest.h>

#include "support.hpp"

using namespace mforge;
using testing_support::exact;
using testing_support::Generator;
using testing_support::gq;

namespace {

const Monomial kOne{0, 0}, kZ{0, 1}, kW{1, 0};

ExactPolynomial power(const ExactPolynomial& p, int n) {
  ExactPolynomial out(GaussianRational(1));
  for (int i = 0; i < n; ++i) out = out * p;
  return out;
}

// Re + i Im with x = (z + w)/2 and y = (z - w)/(2i).
ExactPolynomial unrealify(const RealPolynomial& re, const RealPolynomial& im) {
  const ExactPolynomial z = ExactPolynomial::z(), w = ExactPolynomial::w();
  const ExactPolynomial x = (z + w) * GaussianRational(Rational(1, 2));
  const ExactPolynomial y = (z - w) * GaussianRational(Rational(0), Rational(-1, 2));
  auto lift = [&](const RealPolynomial& r, const GaussianRational& unit) {
    ExactPolynomial out;
    for (const auto& [e, c] : r.terms()) out += power(x, e.first) * power(y, e.second) * (GaussianRational(c) * unit);
    return out;
  };
  return lift(re, GaussianRational(1)) + lift(im, GaussianRational::i());
}

RealPolynomial real_poly(std::initializer_list<std::tuple<int, int, long>> terms) {
  RealPolynomial p;
  for (const auto& [i, j, c] : terms) p.add_term({i, j}, Rational(c));
  return p;
}

}  // namespace

TEST(MonomialOrder, WorkedExamples) {
  EXPECT_GT(kZ, kW);
  EXPECT_GT((Monomial{0, 2}), (Monomial{1, 1}));
  EXPECT_GT((Monomial{3, 0}), (Monomial{0, 2}));
  EXPECT_EQ(monomial_compare(kZ, kZ), std::strong_ordering::equal);
}

TEST(MonomialOrder, TotalMultiplicativeOrderWithOneMinimal) {
  std::vector<Monomial> all = label_monomials(5);
  for (const auto& x : all) {
    EXPECT_LE(kOne, x);
    for (const auto& y : all) {
      EXPECT_EQ(x < y, y > x);
      EXPECT_TRUE((x < y) + (y < x) + (x == y) == 1);
      if (x > y) {
        for (const auto& m : label_monomials(2)) EXPECT_GT(m * x, m * y);
      }
      if (x < y) {
        for (const auto& t : all) {
          if (y < t) {
            EXPECT_LT(x, t);
          }
        }
      }
    }
  }
}

TEST(MonomialOrder, LabelOrderIsAscendingDegreeThenZHeavyFirst) {
  const auto labels = label_monomials(2);
  ASSERT_EQ(labels.size(), 6u);
  EXPECT_EQ(labels[1], kZ);
  EXPECT_EQ(labels[2], kW);
  EXPECT_EQ(labels[3], (Monomial{0, 2}));
  EXPECT_EQ(labels[5], (Monomial{2, 0}));
  for (std::size_t i = 0; i < labels.size(); ++i) EXPECT_EQ(label_index(labels[i]), i);
}

TEST(Conjugate, WorkedExamples) {
  EXPECT_EQ(conjugate_poly(exact("w + 3z^2 + 2z^3")), exact("z + 3w^2 + 2w^3"));
  EXPECT_EQ(conjugate_poly(exact("z - iw")), exact("w + iz"));
  const auto p = exact("(1/2+1/3i)zw - 4iz^2 + 7");
  EXPECT_EQ(conjugate_poly(conjugate_poly(p)), p);
}

TEST(Conjugate, AdditiveConjugateLinearInvolution) {
  Generator gen(11);
  for (int t = 0; t < 200; ++t) {
    const auto p = gen.polynomial(4, 5), q = gen.polynomial(4, 5);
    const auto a = gen.gaussian();
    EXPECT_EQ(conjugate_poly(conjugate_poly(p)), p);
    EXPECT_EQ(conjugate_poly(p + q), conjugate_poly(p) + conjugate_poly(q));
    EXPECT_EQ(conjugate_poly(p * a), conjugate_poly(p) * a.conj());
    EXPECT_EQ(is_harmonic(p), is_harmonic(conjugate_poly(p)));
    EXPECT_EQ(is_harmonic(p), mixed_partial(p).is_zero());
  }
}

TEST(Harmonic, WorkedExamples) {
  EXPECT_TRUE(is_harmonic(exact("z^3 - 8iz - 5w")));
  EXPECT_FALSE(is_harmonic(exact("zw - 5")));
  EXPECT_TRUE(is_harmonic(exact("7")));
}

TEST(Arithmetic, WorkedExamples) {
  EXPECT_EQ(exact("z - w") * exact("z + w"), exact("z^2 - w^2"));
  const auto p = exact("3z^2w - iw + 1/2");
  EXPECT_TRUE((p + p * GaussianRational(-1)).is_zero());
  EXPECT_EQ(exact("iz + w") * exact("wz - 5"), exact("iz^2w + zw^2 - 5iz - 5w"));
}

TEST(Arithmetic, ZeroPolynomialHasNoLeadingMonomial) {
  EXPECT_THROW(ExactPolynomial().leading_monomial(), Error);
  EXPECT_EQ(ExactPolynomial().degree(), -1);
}

TEST(Evaluate, WorkedExamples) {
  const auto q7 = exact("z^3 - 8iz - 5w");
  EXPECT_TRUE(evaluate(q7, gq(1, 2), gq(1, -2)).is_zero());
  const auto p = exact("3z^2 - w + 4 - 2i");
  EXPECT_EQ(evaluate(p, gq(0), gq(0)), gq(4, -2));
  const double r = 1.7, theta = 0.6;
  const Complex zv = std::polar(r, theta);
  EXPECT_NEAR(std::abs(evaluate(exact("zw"), zv, std::conj(zv)) - r * r), 0.0, 1e-14);
}

TEST(Realify, WorkedExamples) {
  auto [re, im] = realify(exact("z"));
  EXPECT_EQ(re, RealPolynomial::x());
  EXPECT_EQ(im, RealPolynomial::y());

  std::tie(re, im) = realify(exact("z^3 - 8iz - 5w"));
  EXPECT_EQ(re, real_poly({{3, 0, 1}, {1, 2, -3}, {0, 1, 8}, {1, 0, -5}}));
  EXPECT_EQ(im, real_poly({{2, 1, 3}, {0, 3, -1}, {1, 0, -8}, {0, 1, 5}}));

  std::tie(re, im) = realify(exact("zw"));
  EXPECT_EQ(re, real_poly({{2, 0, 1}, {0, 2, 1}}));
  EXPECT_TRUE(im.is_zero());
}

TEST(Realify, RoundTripIsExact) {
  Generator gen(23);
  for (int t = 0; t < 100; ++t) {
    const auto p = gen.polynomial(4, 6);
    const auto [re, im] = realify(p);
    EXPECT_EQ(unrealify(re, im), p) << to_string(p);
  }
}

TEST(Divide, WorkedExamples) {
  const std::vector<ExactPolynomial> g{exact("z - w"), exact("w^2 - 1")};
  EXPECT_EQ(divide(exact("z^2w"), g).remainder, exact("w"));
  EXPECT_EQ(divide(exact("z^3"), g).remainder, exact("w"));
  const auto single = divide(exact("z - w"), std::vector{exact("z - w")});
  EXPECT_EQ(single.quotients.at(0), exact("1"));
  EXPECT_TRUE(single.remainder.is_zero());
  // the substitution oracle: remainder agrees with f on V = {(1,1), (-1,-1)}
  for (int s : {1, -1}) EXPECT_EQ(evaluate(exact("z^2w"), gq(s), gq(s)), evaluate(exact("w"), gq(s), gq(s)));
}

TEST(Divide, RemainderHasNoReducibleTerm) {
  Generator gen(5);
  for (int t = 0; t < 100; ++t) {
    const std::vector<ExactPolynomial> g{gen.polynomial(2, 3) + exact("z^2"), gen.polynomial(1, 2) + exact("w^2")};
    const auto r = divide(gen.polynomial(5, 8), g).remainder;
    for (const auto& [m, c] : r.terms())
      for (const auto& d : g) EXPECT_FALSE(d.leading_monomial().divides(m));
  }
}

TEST(Divide, DivisionIdentityAtRandomPoints) {
  Generator gen(7);
  for (int t = 0; t < 40; ++t) {
    const auto f = gen.polynomial(5, 7);
    std::vector<ExactPolynomial> g;
    for (int i = 0; i < 3; ++i) {
      auto d = gen.polynomial(3, 3);
      if (d.is_zero()) d = exact("z");
      g.push_back(d);
    }
    const auto res = divide(f, g);
    for (int k = 0; k < 100; ++k) {
      const auto zv = gen.gaussian(4), wv = gen.gaussian(4);
      GaussianRational rhs = evaluate(res.remainder, zv, wv);
      for (std::size_t i = 0; i < g.size(); ++i) rhs += evaluate(res.quotients[i], zv, wv) * evaluate(g[i], zv, wv);
      ASSERT_EQ(evaluate(f, zv, wv), rhs);
    }
  }
}

TEST(Divide, ApproximateIdentityIsTight) {
  Generator gen(9);
  for (int t = 0; t < 20; ++t) {
    const auto f = convert<Complex>(gen.polynomial(4, 6));
    const std::vector<ApproxPolynomial> g{convert<Complex>(exact("z^2 - iw + 1")),
                                          convert<Complex>(exact("w^2 - 3z"))};
    const auto res = divide(f, g);
    for (int k = 0; k < 100; ++k) {
      const Complex zv = gen.complex_in_disc(2), wv = gen.complex_in_disc(2);
      Complex rhs = evaluate(res.remainder, zv, wv);
      for (std::size_t i = 0; i < g.size(); ++i) rhs += evaluate(res.quotients[i], zv, wv) * evaluate(g[i], zv, wv);
      const Complex lhs = evaluate(f, zv, wv);
      EXPECT_LE(std::abs(lhs - rhs), 1e-10 * std::max(1.0, evaluation_scale(f, 2.0)));
    }
  }
}

TEST(Divide, ZeroDivisorIsRejected) {
  EXPECT_THROW(divide(exact("z"), std::vector<ExactPolynomial>{ExactPolynomial()}), Error);
}

TEST(Text, ParsesGaussianRationalAndFloatingCoefficients) {
  EXPECT_TRUE(is_exact(parse_polynomial("2z^3 + 3z^2 + w")));
  const auto p = exact("(1/2+1/3i)zw");
  EXPECT_EQ(p.coefficient({1, 1}), (GaussianRational{Rational(1, 2), Rational(1, 3)}));
  const auto a = parse_polynomial("0.5z - 1e-3w");
  ASSERT_FALSE(is_exact(a));
  const auto& ap = std::get<ApproxPolynomial>(a);
  EXPECT_EQ(ap.coefficient(kZ), Complex(0.5, 0));
  EXPECT_EQ(ap.coefficient(kW), Complex(-1e-3, 0));
}

TEST(Text, FormatThenParseIsIdentity) {
  Generator gen(3);
  for (int t = 0; t < 200; ++t) {
    const auto p = gen.polynomial(4, 5);
    EXPECT_EQ(exact(to_string(p)), p) << to_string(p);
  }
}

TEST(Text, MalformedInputIsRejected) {
  for (const char* bad : {"", "z^", "3x", "(1+2i", "z + + w", "z^-1"}) EXPECT_THROW(parse_polynomial(bad), Error) << bad;
}
