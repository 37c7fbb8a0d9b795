#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace mforge;
using testing_support::exact;
using testing_support::Generator;
using testing_support::gq;
using testing_support::q7_atoms;
using testing_support::sequence_from_atoms;

namespace {

const char* kQ7 = "z^3 - 8iz - 5w";
const char* kWilmshurst = "w + 3z^2 + 2z^3";

MomentSequence<Complex> perturbed(const MomentSequence<Complex>& g, int i, int j, Complex delta) {
  auto e = g.entries();
  e[{i, j}] += delta;
  if (i != j) e[{j, i}] += std::conj(delta);
  return {g.k(), e};
}

std::vector<std::pair<Complex, double>> atoms_on(const Variety& v, const std::vector<double>& densities) {
  std::vector<std::pair<Complex, double>> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back({v.points[i].z, densities[i]});
  return out;
}

RealForm<GaussianRational> real_form(std::initializer_list<std::tuple<int, int, Part, GaussianRational>> terms) {
  RealForm<GaussianRational> out;
  for (const auto& [i, j, part, c] : terms) out[{i, j, part}] = c;
  return out;
}

const NumericalCondition<GaussianRational>& condition_for(const std::vector<NumericalCondition<GaussianRational>>& cs,
                                                          Monomial lm, bool times_z) {
  for (const auto& c : cs)
    if (c.g.leading_monomial() == lm && c.times_z == times_z) return c;
  throw std::runtime_error("no condition with that leading monomial");
}

}  // namespace

TEST(Generate, WorkedExamples) {
  AtomicMeasure<GaussianRational> origin{{{gq(0), gq(1)}}};
  const auto g0 = generate_moments(origin, 1);
  for (const auto& [idx, v] : g0.entries()) EXPECT_EQ(v, gq(idx == std::pair{0, 0} ? 1 : 0));

  const GaussianRational half(Rational(1, 2));
  AtomicMeasure<GaussianRational> pair{{{gq(0, 1), half}, {gq(0, -1), half}}};
  const auto g = generate_moments(pair, 1);
  EXPECT_EQ(g(0, 0), gq(1));
  EXPECT_EQ(g(0, 1), gq(0));
  EXPECT_EQ(g(1, 1), gq(1));
  EXPECT_EQ(g(0, 2), gq(-1));
}

TEST(Generate, RejectsBadMeasures) {
  EXPECT_THROW(generate_moments(AtomicMeasure<GaussianRational>{{{gq(1), gq(-1)}}}, 1), Error);
  EXPECT_THROW(generate_moments(AtomicMeasure<GaussianRational>{{{gq(1), gq(1, 1)}}}, 1), Error);
  EXPECT_THROW(generate_moments(AtomicMeasure<GaussianRational>{{{gq(1), gq(1)}, {gq(1), gq(2)}}}, 1), Error);
  EXPECT_THROW(generate_moments(AtomicMeasure<GaussianRational>{}, 1), Error);
}

TEST(Generate, MatchesDirectSummation) {
  const auto atoms = q7_atoms({1, 2, 2, 1, 1, 3, 3});
  AtomicMeasure<Complex> mu;
  for (const auto& [z, rho] : atoms) mu.atoms.push_back({z, rho});
  const auto g = generate_moments(mu, 3);
  const auto oracle = sequence_from_atoms(atoms, 3);
  for (const auto& [idx, v] : g.entries()) EXPECT_LT(std::abs(v - oracle(idx.first, idx.second)), 1e-9);
}

TEST(Check, QSevenGeneratedMomentsAreRepresentable) {
  const auto gamma = sequence_from_atoms(q7_atoms({1, 1, 1, 1, 1, 1, 1}), 3);
  const auto rep = check_extremal(gamma, parse_polynomial(kQ7));
  EXPECT_EQ(rep.verdict, Verdict::yes) << rep.reason;
  EXPECT_EQ(basis_size(rep.basis), 3u);
  EXPECT_EQ(rep.nullity, 3u);
  EXPECT_EQ(rep.rank, 7u);
  EXPECT_TRUE(rep.extremal);
  EXPECT_TRUE(rep.psd.strict_inner);
  ASSERT_TRUE(rep.extraction);
  EXPECT_LE(rep.extraction->residual, 1e-9);
  EXPECT_TRUE(rep.findings.empty());
  auto lms = leading_monomials(rep.basis);
  std::sort(lms.begin(), lms.end());
  auto rel = rep.relation_leading_monomials;
  std::sort(rel.begin(), rel.end());
  EXPECT_EQ(lms, rel);
}

TEST(Check, PerturbingGammaTwoTwoBreaksConditionTwo) {
  const auto gamma = sequence_from_atoms(q7_atoms({1, 1, 1, 1, 1, 1, 1}), 3);
  const auto rep = check_extremal(perturbed(gamma, 2, 2, 0.1), parse_polynomial(kQ7));
  EXPECT_EQ(rep.verdict, Verdict::no);
  EXPECT_FALSE(rep.condition2);
  EXPECT_FALSE(rep.strict.pass);
  // the failure is Lambda(z q_LC): gamma_22 enters with coefficient 1
  bool zqlc_fails = false;
  for (const auto& e : rep.elements)
    if (e.g.leading_monomial() == Monomial{1, 2}) zqlc_fails = std::abs(e.lambda_zg) > 0.05;
  EXPECT_TRUE(zqlc_fails);
}

TEST(Check, WilmshurstCubicReproducesThePrintedBasisAndConditions) {
  const auto analysis = analyze_relation(parse_polynomial(kWilmshurst));
  ASSERT_TRUE(is_exact(analysis.basis));
  const auto& g = std::get<GroebnerBasis<GaussianRational>>(analysis.basis);
  ASSERT_EQ(g.size(), 3u);
  const auto conds = numerical_conditions(g);
  std::set<std::string> elements;
  for (const auto& c : conds) elements.insert(to_string(c.g));
  for (const char* e : {"2z^3 + 3z^2 + w", "2w^3 + 3w^2 + z", "4z^2w - 4zw^2 + 2z^2 - 2w^2 - z + w"})
    EXPECT_TRUE(elements.contains(to_string(exact(e)))) << e;
  EXPECT_EQ(format_condition(condition_for(conds, {1, 2}, false)), "0 = Λ(g₂) = 2i·Im(γ₁₀) − 4i·Im(γ₂₀) − 8i·Im(γ₂₁)");
  EXPECT_EQ(format_condition(condition_for(conds, {1, 2}, true)),
            "0 = Λ(z·g₂) = −γ₀₂ + γ₁₁ + 2γ₀₃ − 2γ₂₁ + 4γ₁₃ − 4γ₂₂");

  std::vector<double> rho;
  for (std::size_t i = 0; i < analysis.variety.size(); ++i) rho.push_back(1.0 + 0.5 * static_cast<double>(i));
  const auto rep = check_extremal(sequence_from_atoms(atoms_on(analysis.variety, rho), 3), analysis, kDefaultTol);
  EXPECT_EQ(rep.verdict, Verdict::yes) << rep.reason;
  EXPECT_EQ(rep.nullity, 3u);
}

TEST(Check, SubsetOfTheVarietyIsInconclusive) {
  // five atoms on a seven-point variety: consistent but r = 5 < v = 7
  AtomicMeasure<GaussianRational> mu{{{gq(0), gq(1)}, {gq(1, 2), gq(1)}, {gq(-1, -2), gq(2)}, {gq(2, 1), gq(1)},
                                      {gq(-2, -1), gq(3)}}};
  const auto rep = check_extremal(generate_moments(mu, 3), parse_polynomial(kQ7));
  EXPECT_EQ(rep.verdict, Verdict::inconclusive);
  EXPECT_EQ(rep.rank, 5u);
  EXPECT_EQ(rep.v, 7u);
  EXPECT_TRUE(rep.condition2);
  EXPECT_TRUE(rep.condition3);
  EXPECT_TRUE(rep.strict.pass);
}

TEST(Check, IndefiniteMatrixIsNo) {
  auto gamma = sequence_from_atoms(q7_atoms({1, 1, 1, 1, 1, 1, 1}), 3);
  const auto rep = check_extremal(perturbed(gamma, 0, 0, -2.0), parse_polynomial(kQ7));
  EXPECT_EQ(rep.verdict, Verdict::no);
}

TEST(Check, ExtraMassAtTheOriginIsStillRepresentable) {
  // the origin lies on the q7 variety, so raising gamma_00 adds mass there
  const auto gamma = sequence_from_atoms(q7_atoms({1, 1, 1, 1, 1, 1, 1}), 3);
  const auto rep = check_extremal(perturbed(gamma, 0, 0, 1e-3), parse_polynomial(kQ7));
  ASSERT_EQ(rep.verdict, Verdict::yes) << rep.reason;
  for (const auto& a : rep.extraction->measure.atoms)
    EXPECT_NEAR(a.density.real(), std::abs(a.z) < 1e-12 ? 1.001 : 1.0, 1e-9);
}

TEST(Check, RelationOfTooHighDegreeIsRejected) {
  const auto gamma = sequence_from_atoms({{{1, 0}, 1.0}}, 1);
  EXPECT_THROW(check_extremal(gamma, parse_polynomial(kQ7)), Error);
}

TEST(Conditions, SingleTermElement) {
  const auto cs = numerical_conditions(std::vector{exact("z")});
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs[0].form.coefficients, (std::map<std::pair<int, int>, GaussianRational>{{{0, 1}, gq(1)}}));
  EXPECT_EQ(cs[1].form.coefficients, (std::map<std::pair<int, int>, GaussianRational>{{{0, 2}, gq(1)}}));
  EXPECT_EQ(format_condition(cs[0]), "0 = Λ(g₁) = γ₀₁");
  EXPECT_EQ(format_condition(cs[1]), "0 = Λ(z·g₁) = γ₀₂");
}

TEST(Conditions, QLCGivesTheMomentIdentityForEveryU) {
  for (long u = 1; u <= 9; ++u) {
    ExactPolynomial wz_minus_u = exact("wz");
    wz_minus_u.add_term({0, 0}, gq(-u));
    const auto qlc = exact("iz + w") * wz_minus_u;
    const auto cs = numerical_conditions(std::vector{qlc});
    // Re g12 - Im g12 - u (Re g01 - Im g01), over the unknowns gamma_ij with i > j
    const auto target = real_form({{2, 1, Part::re, gq(1)}, {2, 1, Part::im, gq(1)}, {1, 0, Part::re, gq(-u)},
                                   {1, 0, Part::im, gq(-u)}});
    EXPECT_TRUE(proportional(real_coordinates(cs[0].form), target)) << u;
    // z q_LC = i z^3 w + z^2 w^2 - u i z^2 - u z w
    const auto companion = real_form({{2, 2, Part::real, gq(1)}, {1, 1, Part::real, gq(-u)},
                                      {3, 1, Part::re, gq(0, 1)}, {3, 1, Part::im, gq(1)},
                                      {2, 0, Part::re, gq(0, -u)}, {2, 0, Part::im, gq(-u)}});
    EXPECT_TRUE(proportional(real_coordinates(cs[1].form), companion)) << u;
  }
}

TEST(Conditions, QSevenBasisCarriesTheQLCConditions) {
  const auto g = std::get<GroebnerBasis<GaussianRational>>(analyze_relation(parse_polynomial(kQ7)).basis);
  const auto cs = numerical_conditions(g);
  const auto target = real_form({{2, 1, Part::re, gq(1)}, {2, 1, Part::im, gq(1)}, {1, 0, Part::re, gq(-5)},
                                 {1, 0, Part::im, gq(-5)}});
  EXPECT_TRUE(proportional(real_coordinates(condition_for(cs, {1, 2}, false).form), target));
}

TEST(Conditions, EmittedFormsEqualRieszEvaluation) {
  Generator gen(89);
  const auto q7 = exact(kQ7);
  const auto g = std::get<GroebnerBasis<GaussianRational>>(analyze_relation(ExactPolynomial(q7)).basis);
  const auto cs = numerical_conditions(g);
  for (int t = 0; t < 50; ++t) {
    std::map<std::pair<int, int>, GaussianRational> e;
    for (int i = 0; i <= 6; ++i)
      for (int j = i; i + j <= 6; ++j) {
        GaussianRational v = gen.gaussian(5);
        if (i == j) v = GaussianRational(v.re());
        e[{i, j}] = v;
        e[{j, i}] = v.conj();
      }
    e[{0, 0}] = gq(3);
    const MomentSequence<GaussianRational> gamma(3, e);
    for (const auto& c : cs) {
      const auto direct = c.times_z ? riesz(gamma, c.g.times_term({0, 1}, gq(1))) : riesz(gamma, c.g);
      EXPECT_EQ(c.form.evaluate(gamma), direct);
      // and Lambda(g) vanishes iff Lambda of the monic element does
      const auto monic_g = monic(c.g);
      const auto direct_monic = c.times_z ? riesz(gamma, monic_g.times_term({0, 1}, gq(1))) : riesz(gamma, monic_g);
      EXPECT_EQ(direct.is_zero(), direct_monic.is_zero());
    }
  }
}

TEST(StrictConsistency, WorkedExamples) {
  const auto analysis = analyze_relation(parse_polynomial(kQ7));
  const auto& g = std::get<GroebnerBasis<GaussianRational>>(analysis.basis).elements;
  const auto gamma = sequence_from_atoms(q7_atoms({1, 1, 1, 1, 1, 1, 1}), 3);
  const auto ok = strict_consistency(gamma, g, 3, kDefaultTol);
  EXPECT_TRUE(ok.pass);
  // every monomial multiple of every element: 3 elements of degree 3, 10 multipliers each
  EXPECT_EQ(ok.checked, 30u);
  EXPECT_FALSE(strict_consistency(perturbed(gamma, 2, 2, 0.1), g, 3, kDefaultTol).pass);

  AtomicMeasure<GaussianRational> origin{{{gq(0), gq(1)}}};
  EXPECT_TRUE(strict_consistency(generate_moments(origin, 2), std::vector{exact("z"), exact("w")}, 2, 0).pass);
  EXPECT_THROW(strict_consistency(generate_moments(origin, 1), std::vector{exact("z^3")}, 1, 0), Error);
}

TEST(Representation, WorkedExamples) {
  const auto g = std::get<GroebnerBasis<GaussianRational>>(analyze_relation(parse_polynomial(kQ7)).basis).elements;
  const auto zqlc = exact("z") * exact("iz^2w + zw^2 - 5iz - 5w");
  const auto rep = representation_decompose(zqlc, g, 3);
  EXPECT_TRUE(rep.within_bound);
  EXPECT_LE(rep.max_quotient_degree, 3);
  ExactPolynomial sum;
  for (std::size_t i = 0; i < g.size(); ++i) sum += rep.quotients[i] * g[i];
  EXPECT_EQ(sum, zqlc);

  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto r = representation_decompose(g[i], g, 3);
    for (std::size_t j = 0; j < g.size(); ++j) EXPECT_EQ(r.quotients[j], exact(i == j ? "1" : "0"));
  }

  try {
    representation_decompose(exact("1"), g, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("1"), std::string::npos);
  }
}

TEST(Extract, WorkedExamples) {
  auto v = solve_conjugate_system(exact("z - 2"));
  auto r = extract_measure(sequence_from_atoms({{{2, 0}, 3.0}}, 1), v, kDefaultTol);
  ASSERT_EQ(r.measure.size(), 1u);
  EXPECT_NEAR(r.measure.atoms[0].density.real(), 3.0, 1e-12);

  v = solve_conjugate_system(exact("z^2 - 1"));
  ASSERT_EQ(v.size(), 2u);
  r = extract_measure(sequence_from_atoms({{{1, 0}, 1.0}}, 1), v, kDefaultTol);
  ASSERT_EQ(r.measure.size(), 1u);
  EXPECT_EQ(r.dropped, 1u);
  EXPECT_LT(std::abs(r.measure.atoms[0].z - Complex(1, 0)), 1e-12);
  EXPECT_NEAR(r.measure.atoms[0].density.real(), 1.0, 1e-12);

  const std::vector<double> rho{1, 2, 2, 1, 1, 3, 3};
  const auto atoms = q7_atoms(rho);
  v = solve_conjugate_system(exact(kQ7));
  r = extract_measure(sequence_from_atoms(atoms, 3), v, kDefaultTol);
  ASSERT_EQ(r.measure.size(), 7u);
  for (const auto& [z, d] : atoms) {
    auto it = std::find_if(r.measure.atoms.begin(), r.measure.atoms.end(),
                           [&](const auto& a) { return std::abs(a.z - z) < 1e-9; });
    ASSERT_NE(it, r.measure.atoms.end());
    EXPECT_NEAR(it->density.real(), d, 1e-8 * d);
  }
}

TEST(Extract, RejectsNegativeDensitiesAndLargeResiduals) {
  const auto v = solve_conjugate_system(exact("z^2 - 1"));
  // 2 delta_1 - delta_{-1} has the right shape but a negative weight
  const auto neg = sequence_from_atoms({{{1, 0}, 2.0}}, 1);
  auto e = neg.entries();
  for (auto& [idx, val] : e) val -= std::pow(-1.0, idx.first + idx.second);
  EXPECT_THROW(extract_measure(MomentSequence<Complex>(1, e), v, kDefaultTol), Error);
  // an atom off the variety cannot be matched
  EXPECT_THROW(extract_measure(sequence_from_atoms({{{0, 1}, 1.0}}, 1), v, kDefaultTol), Error);
}

TEST(RoundTrip, RandomDensitiesOnTheTestVarietiesAreRecovered) {
  Generator gen(97);
  for (const char* text : {kQ7, kWilmshurst, "z^4 + 4/3z^3 + 2z^2 + 4z + 3w + 11/5"}) {
    const auto analysis = analyze_relation(parse_polynomial(text));
    const int k = convert<Complex>(analysis.relation).degree();
    for (int t = 0; t < 10; ++t) {
      std::vector<double> rho;
      for (std::size_t i = 0; i < analysis.variety.size(); ++i) rho.push_back(gen.real(0.1, 5));
      const auto atoms = atoms_on(analysis.variety, rho);
      const auto rep = check_extremal(sequence_from_atoms(atoms, k), analysis, kDefaultTol);
      ASSERT_EQ(rep.verdict, Verdict::yes) << text << ": " << rep.reason;
      EXPECT_TRUE(rep.condition2 && rep.condition3 && rep.strict.pass);
      EXPECT_EQ(basis_size(rep.basis), rep.nullity);
      for (const auto& [z, d] : atoms) {
        auto it = std::find_if(rep.extraction->measure.atoms.begin(), rep.extraction->measure.atoms.end(),
                               [&](const auto& a) { return std::abs(a.z - z) < 1e-9; });
        ASSERT_NE(it, rep.extraction->measure.atoms.end());
        EXPECT_LE(std::fabs(it->density.real() - d), 1e-8 * d);
      }
    }
  }
}

TEST(RoundTrip, PerturbationsOfTheQuarticAreRejected) {
  const auto analysis = analyze_relation(parse_polynomial("z^4 + 4/3z^3 + 2z^2 + 4z + 3w + 11/5"));
  std::vector<double> rho(analysis.variety.size(), 1.0);
  const auto gamma = sequence_from_atoms(atoms_on(analysis.variety, rho), 4);
  for (int i = 0; i <= 8; ++i)
    for (int j = i; i + j <= 8; ++j) {
      const auto rep = check_extremal(perturbed(gamma, i, j, 1e-3), analysis, kDefaultTol);
      EXPECT_EQ(rep.verdict, Verdict::no) << i << "," << j;
      // Lambda(g), Lambda(z g) only see moments up to degree k + 1
      if (i + j <= 5) {
        EXPECT_FALSE(rep.condition2) << i << "," << j;
      }
      if (rep.condition2 != rep.strict.pass) {
        EXPECT_FALSE(rep.findings.empty());
      }
    }
}
