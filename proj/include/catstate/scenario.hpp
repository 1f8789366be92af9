#pragma once

// Declarative run description and its flat key = value document format.
//
//   # comment
//   kind     = cat_even          # coherent | cat_even | cat_odd | number
//   x0       = 2.8284271247461903
//   p0       = 0
//   alpha_re = 2                 # alternative to x0/p0
//   alpha_im = 0
//   n        = 3                 # number states only
//   dim      = auto              # or a positive integer
//   epsilon  = 1e-12             # truncated probability tolerance
//   pad      = 8                 # extra levels above the tail rule
//   x_min = -8   x_max = 8   x_points = 241   (one key per line)
//   t_min = 0    t_max = 6.283185307179586   t_steps = 129
//   outputs  = density_surface, observables_trace, photon_distribution, amplitudes
//   format   = csv               # csv | json
//   out      = fig1-even         # output path prefix
//
// Omitted keys take the even-cat figure defaults.

#include "catstate/dynamics.hpp"
#include "catstate/states.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace catstate {

enum class StateKind { coherent, cat_even, cat_odd, number };
enum class Product { density_surface, observables_trace, photon_distribution, amplitudes };
enum class OutputFormat { csv, json };

inline const char* to_string(StateKind k) {
  switch (k) {
    case StateKind::coherent: return "coherent";
    case StateKind::cat_even: return "cat_even";
    case StateKind::cat_odd: return "cat_odd";
    case StateKind::number: return "number";
  }
  return "?";
}

inline const char* to_string(Product p) {
  switch (p) {
    case Product::density_surface: return "density_surface";
    case Product::observables_trace: return "observables_trace";
    case Product::photon_distribution: return "photon_distribution";
    case Product::amplitudes: return "amplitudes";
  }
  return "?";
}

inline const char* to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

/// Initial displacement of the figure scenarios: x0 = 2^{3/2}, p0 = 0.
inline constexpr double figure_x0 = 2.0 * std::numbers::sqrt2;

struct Scenario {
  StateKind kind = StateKind::cat_even;
  std::optional<Alpha> alpha;
  std::optional<PhaseSpacePoint> phase_point;
  std::optional<long long> level;
  std::optional<long long> dim;  ///< empty means auto
  Tolerances tol;
  PositionGrid x_grid{-8.0, 8.0, 241};
  TimeGrid t_grid{0.0, 2.0 * std::numbers::pi, 129};
  std::vector<Product> outputs{Product::density_surface};
  OutputFormat format = OutputFormat::csv;
  std::string out_prefix = "catstate";

  /// Line numbers of the keys that set each field, for error reporting.
  std::map<std::string, int> key_lines;

  bool is_cat() const { return kind == StateKind::cat_even || kind == StateKind::cat_odd; }

  /// alpha, from either alpha_* or (x0, p0) in natural units.
  Alpha resolved_alpha() const {
    if (alpha) return *alpha;
    if (phase_point) return alpha_from_phase_space(*phase_point);
    return {0.0, 0.0};
  }
};

/// Validation or parse failure tied to a document line and field.
class ScenarioError : public std::invalid_argument {
 public:
  ScenarioError(int line, std::string field, const std::string& message)
      : std::invalid_argument(format(line, field, message)), line_(line), field_(std::move(field)),
        message_(message) {}

  int line() const { return line_; }
  const std::string& field() const { return field_; }
  const std::string& message() const { return message_; }

 private:
  static std::string format(int line, const std::string& field, const std::string& message) {
    std::ostringstream os;
    os << "line " << line << ": field '" << field << "': " << message;
    return os.str();
  }
  int line_;
  std::string field_;
  std::string message_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline double parse_real(std::string_view text, int line, const std::string& field) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty() || !std::isfinite(v)) {
    throw ScenarioError(line, field, "malformed number '" + std::string(text) + "'");
  }
  return v;
}

inline long long parse_integer(std::string_view text, int line, const std::string& field) {
  long long v = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw ScenarioError(line, field, "malformed integer '" + std::string(text) + "'");
  }
  return v;
}

inline int line_of(const Scenario& s, const std::string& key) {
  const auto it = s.key_lines.find(key);
  return it == s.key_lines.end() ? 0 : it->second;
}

}  // namespace detail

/// Checks every scenario invariant without computing any product.
inline void validate(const Scenario& s) {
  const auto fail = [&](const std::string& field, const std::string& msg) {
    throw ScenarioError(detail::line_of(s, field), field, msg);
  };

  if (s.alpha && s.phase_point) {
    const std::string field = s.key_lines.count("alpha_re") ? "alpha_re" : "alpha_im";
    fail(field, "give either alpha_re/alpha_im or x0/p0, not both");
  }
  if (s.kind == StateKind::number) {
    if (s.alpha) fail(s.key_lines.count("alpha_re") ? "alpha_re" : "alpha_im", "number states take n, not alpha");
    if (s.phase_point) fail(s.key_lines.count("x0") ? "x0" : "p0", "number states take n, not x0/p0");
    if (!s.level) fail("n", "number state needs n");
    if (*s.level < 0) fail("n", "n must be >= 0");
  } else {
    if (s.level) fail("n", std::string("n is only valid for kind=number, not ") + to_string(s.kind));
  }
  if (s.kind == StateKind::cat_odd && std::norm(s.resolved_alpha()) == 0.0) {
    fail(s.alpha ? "alpha_re" : "x0", "odd cat state is undefined at alpha = 0");
  }

  if (!(s.tol.norm > 0.0)) fail("epsilon", "epsilon must be > 0");
  if (s.tol.pad < 0) fail("pad", "pad must be >= 0");

  if (s.dim) {
    if (*s.dim < 1) fail("dim", "dim must be >= 1");
    const auto d = static_cast<std::size_t>(*s.dim);
    if (s.kind == StateKind::number && *s.level >= *s.dim) {
      fail("n", "n=" + std::to_string(*s.level) + " needs dim > n, got dim=" + std::to_string(*s.dim));
    }
    if (s.kind == StateKind::coherent && coherent_tail(s.resolved_alpha(), d) >= s.tol.norm) {
      fail("dim", "dim=" + std::to_string(d) + " truncates the state; need at least " +
                      std::to_string(coherent_min_dimension(s.resolved_alpha(), s.tol)));
    }
    if (s.is_cat()) {
      const Parity par = s.kind == StateKind::cat_even ? Parity::even : Parity::odd;
      if (cat_tail(s.resolved_alpha(), par, d) >= s.tol.norm) {
        fail("dim", "dim=" + std::to_string(d) + " truncates the state; need at least " +
                        std::to_string(cat_min_dimension(s.resolved_alpha(), par, s.tol)));
      }
    }
  }

  if (!(s.x_grid.x_min < s.x_grid.x_max)) fail("x_max", "x_min must be < x_max");
  if (s.x_grid.n_points < 2) fail("x_points", "x_points must be >= 2");
  if (s.t_grid.t_min > s.t_grid.t_max) fail("t_max", "t_min must be <= t_max");
  if (s.t_grid.n_steps < 1) fail("t_steps", "t_steps must be >= 1");

  if (s.outputs.empty()) fail("outputs", "at least one output product is required");
  if (s.out_prefix.empty()) fail("out", "output prefix must not be empty");
}

/// Parses a key = value document, applies defaults and validates.
inline Scenario parse_scenario(std::string_view text) {
  static const std::set<std::string, std::less<>> known{
      "kind",  "alpha_re", "alpha_im", "x0",    "p0",       "n",     "dim",
      "epsilon", "pad",    "x_min",    "x_max", "x_points", "t_min", "t_max",
      "t_steps", "outputs", "format",  "out"};

  Scenario s;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ScenarioError(line_no, std::string(line), "expected 'key = value'");
    }
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    if (!known.count(key)) throw ScenarioError(line_no, key, "unknown key");
    if (s.key_lines.count(key)) {
      throw ScenarioError(line_no, key, "duplicate key (first set on line " +
                                            std::to_string(s.key_lines[key]) + ")");
    }
    s.key_lines[key] = line_no;

    if (key == "kind") {
      if (value == "coherent") s.kind = StateKind::coherent;
      else if (value == "cat_even") s.kind = StateKind::cat_even;
      else if (value == "cat_odd") s.kind = StateKind::cat_odd;
      else if (value == "number") s.kind = StateKind::number;
      else throw ScenarioError(line_no, key, "unknown kind '" + std::string(value) + "'");
    } else if (key == "alpha_re" || key == "alpha_im") {
      const double v = detail::parse_real(value, line_no, key);
      Alpha a = s.alpha.value_or(Alpha{});
      s.alpha = key == "alpha_re" ? Alpha{v, a.imag()} : Alpha{a.real(), v};
    } else if (key == "x0" || key == "p0") {
      const double v = detail::parse_real(value, line_no, key);
      PhaseSpacePoint p = s.phase_point.value_or(PhaseSpacePoint{});
      (key == "x0" ? p.x0 : p.p0) = v;
      s.phase_point = p;
    } else if (key == "n") {
      s.level = detail::parse_integer(value, line_no, key);
    } else if (key == "dim") {
      if (value == "auto") s.dim.reset();
      else s.dim = detail::parse_integer(value, line_no, key);
    } else if (key == "epsilon") {
      s.tol.norm = detail::parse_real(value, line_no, key);
    } else if (key == "pad") {
      s.tol.pad = static_cast<int>(std::clamp<long long>(detail::parse_integer(value, line_no, key), -1, 1 << 20));
    } else if (key == "x_min") {
      s.x_grid.x_min = detail::parse_real(value, line_no, key);
    } else if (key == "x_max") {
      s.x_grid.x_max = detail::parse_real(value, line_no, key);
    } else if (key == "x_points") {
      s.x_grid.n_points = static_cast<int>(std::clamp<long long>(detail::parse_integer(value, line_no, key), -1, 1 << 24));
    } else if (key == "t_min") {
      s.t_grid.t_min = detail::parse_real(value, line_no, key);
    } else if (key == "t_max") {
      s.t_grid.t_max = detail::parse_real(value, line_no, key);
    } else if (key == "t_steps") {
      s.t_grid.n_steps = static_cast<int>(std::clamp<long long>(detail::parse_integer(value, line_no, key), -1, 1 << 24));
    } else if (key == "outputs") {
      s.outputs.clear();
      std::string_view rest = value;
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto item = detail::trim(rest.substr(0, comma));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        Product p{};
        if (item == "density_surface") p = Product::density_surface;
        else if (item == "observables_trace") p = Product::observables_trace;
        else if (item == "photon_distribution") p = Product::photon_distribution;
        else if (item == "amplitudes") p = Product::amplitudes;
        else throw ScenarioError(line_no, key, "unknown product '" + std::string(item) + "'");
        if (std::find(s.outputs.begin(), s.outputs.end(), p) != s.outputs.end()) {
          throw ScenarioError(line_no, key, "product '" + std::string(item) + "' listed twice");
        }
        s.outputs.push_back(p);
      }
    } else if (key == "format") {
      if (value == "csv") s.format = OutputFormat::csv;
      else if (value == "json") s.format = OutputFormat::json;
      else throw ScenarioError(line_no, key, "format must be csv or json");
    } else if (key == "out") {
      s.out_prefix = std::string(value);
    }
  }

  if (s.kind != StateKind::number && !s.alpha && !s.phase_point) {
    s.phase_point = PhaseSpacePoint{figure_x0, 0.0};
  }
  validate(s);
  return s;
}

/// Built-in scenarios: "fig1-even", "fig1-odd", "coherent".
inline Scenario preset_scenario(std::string_view name) {
  Scenario s;
  s.phase_point = PhaseSpacePoint{figure_x0, 0.0};
  if (name == "fig1-even") {
    s.kind = StateKind::cat_even;
    s.out_prefix = "fig1-even";
  } else if (name == "fig1-odd") {
    s.kind = StateKind::cat_odd;
    s.out_prefix = "fig1-odd";
  } else if (name == "coherent") {
    s.kind = StateKind::coherent;
    s.outputs = {Product::density_surface, Product::observables_trace, Product::photon_distribution,
                 Product::amplitudes};
    s.out_prefix = "coherent";
  } else {
    throw std::invalid_argument("unknown preset '" + std::string(name) +
                                "' (expected fig1-even, fig1-odd or coherent)");
  }
  validate(s);
  return s;
}

}  // namespace catstate
