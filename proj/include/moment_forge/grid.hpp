#ifndef MOMENT_FORGE_GRID_HPP
#define MOMENT_FORGE_GRID_HPP

#include <string>

#include "moment_forge/polynomial.hpp"

namespace mforge {

struct GridSpec {
  Complex center{0, 0};
  double half_width = 1;
  int samples = 2;  ///< per axis
};

/// CSV of p(x + iy, x - iy) on an n-by-n window: header "x,y,re,im,abs", then
/// y in the outer loop and x in the inner one, both ascending.
template <Scalar S>
std::string grid_sample(const Polynomial<S>& p, const GridSpec& spec) {
  if (spec.samples < 2) throw Error("cli", "grid needs at least 2 samples per axis");
  if (!(spec.half_width > 0)) throw Error("cli", "grid half-width must be positive");
  const ApproxPolynomial pa = convert<Complex>(p);
  const int n = spec.samples;
  auto coord = [&](double c, int t) { return c - spec.half_width + 2 * spec.half_width * t / (n - 1); };
  std::string out = "x,y,re,im,abs\n";
  for (int r = 0; r < n; ++r) {
    const double y = coord(spec.center.imag(), r);
    for (int c = 0; c < n; ++c) {
      const double x = coord(spec.center.real(), c);
      const Complex v = evaluate(pa, Complex(x, y), Complex(x, -y));
      out += format_double(x) + "," + format_double(y) + "," + format_double(v.real()) + "," + format_double(v.imag()) +
             "," + format_double(std::abs(v)) + "\n";
    }
  }
  return out;
}

}  // namespace mforge

#endif  // MOMENT_FORGE_GRID_HPP
