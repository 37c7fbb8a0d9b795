#ifndef MOMENT_FORGE_PROBLEM_FILE_HPP
#define MOMENT_FORGE_PROBLEM_FILE_HPP

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "moment_forge/moment.hpp"
#include "moment_forge/solver.hpp"

// Line-oriented problem files:
//
//   # q7 with unit densities
//   k = 3
//   polynomial = z^3 - 8iz - 5w
//   tol = 1e-10
//   moments[0].i = 0
//   moments[0].j = 0
//   moments[0].re = 7
//   moments[0].im = 0
//   atoms[0].z_re = 1/2
//   atoms[0].z_im = 0
//   atoms[0].density = 1
//
// Values are exact rationals "a/b" or floating literals. Only one of each
// Hermitian pair (i,j), (j,i) needs to be given.

namespace mforge {

/// A value as written in a file: exact rationals stay exact.
struct FileNumber {
  std::optional<Rational> exact;
  double approx = 0;

  static FileNumber of(const Rational& q) { return {q, q.get_d()}; }
  static FileNumber of(double x) { return {std::nullopt, x}; }
  bool is_exact() const { return exact.has_value(); }
  Rational to_rational() const { return exact ? *exact : exact_from_double(approx); }
  friend bool operator==(const FileNumber& a, const FileNumber& b) {
    if (a.exact || b.exact) return a.exact == b.exact;
    return a.approx == b.approx || (std::isnan(a.approx) && std::isnan(b.approx));
  }
};

inline FileNumber parse_number(const std::string& text) {
  try {
    return FileNumber::of(parse_rational(text));
  } catch (const Error&) {
  }
  if (text.empty()) throw Error("cli", "empty numeric value");
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(x))
    throw Error("cli", "malformed number '" + text + "'");
  return FileNumber::of(x);
}

/// Floats always carry a "." or exponent so they read back as floats.
inline std::string to_string(const FileNumber& n) { return n.exact ? n.exact->get_str() : detail::format_approx_real(n.approx); }

struct MomentEntry {
  int i = 0, j = 0;
  FileNumber re, im = FileNumber::of(Rational(0));
  friend bool operator==(const MomentEntry&, const MomentEntry&) = default;
};

struct AtomEntry {
  FileNumber z_re, z_im = FileNumber::of(Rational(0)), density;
  friend bool operator==(const AtomEntry&, const AtomEntry&) = default;
};

struct ProblemFile {
  int k = 0;
  std::optional<std::string> polynomial;
  std::optional<double> tol;
  bool implicit_zero = false;  ///< missing moments read as 0 instead of an error
  std::vector<MomentEntry> moments;
  std::vector<AtomEntry> atoms;
  friend bool operator==(const ProblemFile&, const ProblemFile&) = default;
};

namespace detail {

inline std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// "moments[3].re" -> ("moments", 3, "re"); nullopt for plain keys.
struct IndexedKey {
  std::string list;
  std::size_t index;
  std::string field;
};

inline std::optional<IndexedKey> split_indexed(const std::string& key, int line) {
  const auto open = key.find('[');
  if (open == std::string::npos) return std::nullopt;
  const auto close = key.find(']', open);
  if (close == std::string::npos || close + 1 >= key.size() || key[close + 1] != '.')
    throw Error("cli", "line " + std::to_string(line) + ": malformed key '" + key + "'");
  const std::string digits = key.substr(open + 1, close - open - 1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw Error("cli", "line " + std::to_string(line) + ": malformed index in '" + key + "'");
  return IndexedKey{key.substr(0, open), std::stoul(digits), key.substr(close + 2)};
}

inline int parse_int(const std::string& text, const std::string& what) {
  const FileNumber n = parse_number(text);
  if (!n.exact || n.exact->get_den() != 1 || !n.exact->get_num().fits_sint_p())
    throw Error("cli", what + ": expected an integer, got '" + text + "'");
  return static_cast<int>(n.exact->get_num().get_si());
}

}  // namespace detail

inline ProblemFile parse_problem_text(const std::string& text) {
  ProblemFile out;
  bool have_k = false;
  // list -> index -> field -> value
  std::map<std::string, std::map<std::size_t, std::map<std::string, std::string>>> lists;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = detail::strip(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw Error("cli", "line " + std::to_string(line) + ": expected 'key = value'");
    const std::string key = detail::strip(content.substr(0, eq));
    const std::string value = detail::strip(content.substr(eq + 1));
    if (auto ik = detail::split_indexed(key, line)) {
      if (ik->list != "moments" && ik->list != "atoms")
        throw Error("cli", "line " + std::to_string(line) + ": unknown list '" + ik->list + "'");
      auto& fields = lists[ik->list][ik->index];
      if (fields.contains(ik->field)) throw Error("cli", "line " + std::to_string(line) + ": duplicate key '" + key + "'");
      fields[ik->field] = value;
      continue;
    }
    if (key == "k") {
      if (have_k) throw Error("cli", "line " + std::to_string(line) + ": duplicate key 'k'");
      out.k = detail::parse_int(value, "k");
      have_k = true;
    } else if (key == "polynomial") {
      out.polynomial = value;
    } else if (key == "tol") {
      out.tol = parse_number(value).approx;
      if (!(*out.tol > 0)) throw Error("cli", "tol must be positive");
    } else if (key == "implicit_zero") {
      if (value != "true" && value != "false") throw Error("cli", "implicit_zero must be true or false");
      out.implicit_zero = value == "true";
    } else {
      throw Error("cli", "line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  if (!have_k) throw Error("cli", "missing key 'k'");
  if (out.k < 1) throw Error("cli", "k must be a positive integer");

  auto field = [](const std::map<std::string, std::string>& fields, const std::string& where, const std::string& name,
                  bool required) -> std::optional<std::string> {
    auto it = fields.find(name);
    if (it != fields.end()) return it->second;
    if (required) throw Error("cli", where + ": missing field '" + name + "'");
    return std::nullopt;
  };
  auto number = [&](const std::map<std::string, std::string>& fields, const std::string& where, const std::string& name,
                    bool required) -> std::optional<FileNumber> {
    auto text = field(fields, where, name, required);
    if (!text) return std::nullopt;
    try {
      return parse_number(*text);
    } catch (const Error&) {
      throw Error("cli", where + "." + name + ": malformed number '" + *text + "'");
    }
  };
  auto check_fields = [](const std::map<std::string, std::string>& fields, const std::string& where,
                         std::initializer_list<const char*> allowed) {
    for (const auto& [name, v] : fields)
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return name == a; }))
        throw Error("cli", where + ": unknown field '" + name + "'");
  };
  auto check_dense = [](const auto& entries, const std::string& list) {
    std::size_t expected = 0;
    for (const auto& [idx, f] : entries)
      if (idx != expected++) throw Error("cli", list + "[" + std::to_string(expected - 1) + "]: missing entry");
  };

  check_dense(lists["moments"], "moments");
  for (const auto& [idx, fields] : lists["moments"]) {
    const std::string where = "moments[" + std::to_string(idx) + "]";
    check_fields(fields, where, {"i", "j", "re", "im"});
    MomentEntry e;
    e.i = detail::parse_int(*field(fields, where, "i", true), where + ".i");
    e.j = detail::parse_int(*field(fields, where, "j", true), where + ".j");
    e.re = *number(fields, where, "re", true);
    if (auto im = number(fields, where, "im", false)) e.im = *im;
    if (e.i < 0 || e.j < 0 || e.i + e.j > 2 * out.k)
      throw Error("cli", where + ": index (" + std::to_string(e.i) + "," + std::to_string(e.j) + ") outside i+j <= 2k");
    out.moments.push_back(e);
  }
  check_dense(lists["atoms"], "atoms");
  for (const auto& [idx, fields] : lists["atoms"]) {
    const std::string where = "atoms[" + std::to_string(idx) + "]";
    check_fields(fields, where, {"z_re", "z_im", "density"});
    AtomEntry a;
    a.z_re = *number(fields, where, "z_re", true);
    if (auto im = number(fields, where, "z_im", false)) a.z_im = *im;
    a.density = *number(fields, where, "density", true);
    out.atoms.push_back(a);
  }
  if (!out.moments.empty() && !out.atoms.empty()) throw Error("cli", "a problem has either moments or atoms, not both");
  return out;
}

inline ProblemFile parse_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cli", "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_problem_text(buf.str());
}

inline std::string serialize_problem(const ProblemFile& p) {
  std::ostringstream out;
  out << "k = " << p.k << "\n";
  if (p.polynomial) out << "polynomial = " << *p.polynomial << "\n";
  if (p.tol) out << "tol = " << format_double(*p.tol) << "\n";
  if (p.implicit_zero) out << "implicit_zero = true\n";
  for (std::size_t n = 0; n < p.moments.size(); ++n) {
    const auto& e = p.moments[n];
    const std::string key = "moments[" + std::to_string(n) + "].";
    out << key << "i = " << e.i << "\n"
        << key << "j = " << e.j << "\n"
        << key << "re = " << to_string(e.re) << "\n"
        << key << "im = " << to_string(e.im) << "\n";
  }
  for (std::size_t n = 0; n < p.atoms.size(); ++n) {
    const auto& a = p.atoms[n];
    const std::string key = "atoms[" + std::to_string(n) + "].";
    out << key << "z_re = " << to_string(a.z_re) << "\n"
        << key << "z_im = " << to_string(a.z_im) << "\n"
        << key << "density = " << to_string(a.density) << "\n";
  }
  return out.str();
}

inline bool all_moments_exact(const ProblemFile& p) {
  return std::all_of(p.moments.begin(), p.moments.end(), [](const auto& e) { return e.re.is_exact() && e.im.is_exact(); });
}

/// Hermitian completion of the listed moments. Exact unless some value is a
/// floating literal and force_exact is off.
inline AnyMomentSequence moment_sequence(const ProblemFile& p, bool force_exact = false) {
  if (p.moments.empty()) throw Error("cli", "problem has no moments");
  std::map<std::pair<int, int>, GaussianRational> exact;
  std::map<std::pair<int, int>, Complex> approx;
  std::map<std::pair<int, int>, std::size_t> given;
  for (std::size_t n = 0; n < p.moments.size(); ++n) {
    const auto& e = p.moments[n];
    const std::pair<int, int> idx{e.i, e.j}, mirror{e.j, e.i};
    if (given.contains(idx))
      throw Error("cli", "moments[" + std::to_string(n) + "]: moment (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                             ") already given by moments[" + std::to_string(given[idx]) + "]");
    given[idx] = n;
    const GaussianRational xe(e.re.to_rational(), e.im.to_rational());
    const Complex xa(e.re.approx, e.im.approx);
    if (given.contains(mirror) && mirror != idx) {
      const auto& other = p.moments[given[mirror]];
      const bool ok = (e.re.is_exact() && e.im.is_exact() && other.re.is_exact() && other.im.is_exact())
                          ? xe == exact.at(mirror).conj()
                          : std::abs(xa - std::conj(approx.at(mirror))) <= 1e-12 * std::max(1.0, std::abs(xa));
      if (!ok)
        throw Error("cli", "moments[" + std::to_string(n) + "]: moment (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                               ") is not the conjugate of moments[" + std::to_string(given[mirror]) + "]");
    }
    exact[idx] = xe;
    approx[idx] = xa;
    if (!given.contains(mirror)) {
      exact[mirror] = xe.conj();
      approx[mirror] = std::conj(xa);
    }
  }
  for (int i = 0; i <= 2 * p.k; ++i)
    for (int j = 0; i + j <= 2 * p.k; ++j) {
      if (exact.contains({i, j})) continue;
      if (!p.implicit_zero)
        throw Error("cli", "missing moment (" + std::to_string(i) + "," + std::to_string(j) + ")");
      exact[{i, j}] = GaussianRational(0);
      approx[{i, j}] = Complex(0);
    }
  if (force_exact || all_moments_exact(p)) return MomentSequence<GaussianRational>(p.k, std::move(exact));
  return MomentSequence<Complex>(p.k, std::move(approx));
}

/// Atoms of a generation-mode problem; exact when every value is.
inline std::variant<AtomicMeasure<GaussianRational>, AtomicMeasure<Complex>> atomic_measure(const ProblemFile& p,
                                                                                           bool force_exact = false) {
  if (p.atoms.empty()) throw Error("cli", "problem has no atoms");
  const bool exact = force_exact || std::all_of(p.atoms.begin(), p.atoms.end(), [](const auto& a) {
                       return a.z_re.is_exact() && a.z_im.is_exact() && a.density.is_exact();
                     });
  if (exact) {
    AtomicMeasure<GaussianRational> mu;
    for (const auto& a : p.atoms)
      mu.atoms.push_back({GaussianRational(a.z_re.to_rational(), a.z_im.to_rational()), GaussianRational(a.density.to_rational())});
    return mu;
  }
  AtomicMeasure<Complex> mu;
  for (const auto& a : p.atoms) mu.atoms.push_back({Complex(a.z_re.approx, a.z_im.approx), Complex(a.density.approx, 0)});
  return mu;
}

/// Moments i <= j of a sequence, as file entries.
template <Scalar S>
std::vector<MomentEntry> moment_entries(const MomentSequence<S>& g) {
  std::vector<MomentEntry> out;
  for (const auto& [idx, v] : g.entries()) {
    if (idx.first > idx.second) continue;
    MomentEntry e;
    e.i = idx.first;
    e.j = idx.second;
    if constexpr (is_exact_v<S>) {
      e.re = FileNumber::of(v.re());
      e.im = FileNumber::of(v.im());
    } else {
      e.re = FileNumber::of(v.real());
      e.im = FileNumber::of(v.imag());
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace mforge

#endif  // MOMENT_FORGE_PROBLEM_FILE_HPP
