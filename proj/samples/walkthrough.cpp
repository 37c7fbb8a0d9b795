// Builds moments from seven atoms on the zero set of z^3 - 8iz - 5 conj(z),
// then asks whether they admit a representing measure, first as generated and
// then with gamma_22 nudged.
#include <iostream>

#include "moment_forge/moment_forge.hpp"

using namespace mforge;

int main() {
  const AnyPolynomial q7 = parse_polynomial("z^3 - 8iz - 5w");
  const RelationAnalysis analysis = analyze_relation(q7);

  std::cout << "variety of " << to_string(q7) << ":\n";
  for (const auto& p : analysis.variety.points) std::cout << "  " << p.z << "\n";

  std::cout << "vanishing ideal:\n";
  for (const auto& g : std::get<GroebnerBasis<GaussianRational>>(analysis.basis).elements)
    std::cout << "  " << to_string(g) << "\n";

  AtomicMeasure<Complex> mu;
  double rho = 1;
  for (const auto& p : analysis.variety.points) mu.atoms.push_back({p.z, rho++});
  const MomentSequence<Complex> gamma = generate_moments(mu, 3);

  CheckReport report = check_extremal(gamma, analysis, kDefaultTol);
  std::cout << "generated moments: " << to_string(report.verdict) << ", rank " << report.rank << ", nullity "
            << report.nullity << "\n";
  for (const auto& a : report.extraction->measure.atoms) std::cout << "  " << a.z << "  " << a.density.real() << "\n";

  auto entries = gamma.entries();
  entries[{2, 2}] += 0.1;
  report = check_extremal(MomentSequence<Complex>(3, entries), analysis, kDefaultTol);
  std::cout << "gamma_22 + 1/10: " << to_string(report.verdict) << " (" << report.reason << ")\n";

  std::cout << "moment conditions:\n";
  for (const auto& c : numerical_conditions(std::get<GroebnerBasis<GaussianRational>>(analysis.basis)))
    std::cout << "  " << format_condition(c) << "\n";
}
