#pragma once

// Executes a Scenario: builds the state, computes the requested products and
// writes them as CSV or JSON data files.

#include "catstate/dynamics.hpp"
#include "catstate/observables.hpp"
#include "catstate/scenario.hpp"
#include "catstate/states.hpp"

#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace catstate {

struct OutputFile {
  std::string path;
  Product product{};
  std::size_t rows = 0;     ///< data rows, excluding headers
  std::size_t columns = 0;  ///< data columns, excluding the CSV t column of surfaces
};

struct RunManifest {
  Scenario scenario;
  std::size_t dimension = 0;
  Tolerances tolerances;
  std::vector<OutputFile> files;
  double duration_seconds = 0.0;
};

class RunError : public std::runtime_error {
 public:
  RunError(std::string product, const std::string& message)
      : std::runtime_error("product " + product + ": " + message), product_(std::move(product)) {}
  const std::string& product() const { return product_; }

 private:
  std::string product_;
};

/// 17 significant digits; round-trips every double.
inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Truncation actually used for a scenario.
inline std::size_t resolved_dimension(const Scenario& s) {
  if (s.dim) return static_cast<std::size_t>(*s.dim);
  switch (s.kind) {
    case StateKind::coherent: return auto_dimension(s.resolved_alpha(), s.tol);
    case StateKind::cat_even: return cat_auto_dimension(s.resolved_alpha(), Parity::even, s.tol);
    case StateKind::cat_odd: return cat_auto_dimension(s.resolved_alpha(), Parity::odd, s.tol);
    case StateKind::number:
      return static_cast<std::size_t>(*s.level) + 1 + static_cast<std::size_t>(s.tol.pad);
  }
  return 1;
}

inline FockState build_state(const Scenario& s) {
  const std::size_t dim = resolved_dimension(s);
  switch (s.kind) {
    case StateKind::coherent: return coherent_state(s.resolved_alpha(), dim, s.tol);
    case StateKind::cat_even: return cat_state(s.resolved_alpha(), Parity::even, dim, s.tol);
    case StateKind::cat_odd: return cat_state(s.resolved_alpha(), Parity::odd, dim, s.tol);
    case StateKind::number: return number_state(static_cast<std::size_t>(*s.level), dim);
  }
  throw std::logic_error("unhandled state kind");
}

namespace detail {

inline const char* file_stem(Product p) {
  switch (p) {
    case Product::density_surface: return "density";
    case Product::observables_trace: return "observables";
    case Product::photon_distribution: return "photons";
    case Product::amplitudes: return "amplitudes";
  }
  return "out";
}

// A plain table: named columns, row-major values.
struct Table {
  std::vector<std::string> names;
  std::vector<double> values;
  std::size_t rows() const { return names.empty() ? 0 : values.size() / names.size(); }
};

inline Table observables_table(const FockState& s, const TimeGrid& tg) {
  Table t{{"t", "mean_x", "mean_p", "var_x", "var_p", "product"}, {}};
  for (std::size_t j = 0; j < tg.size(); ++j) {
    const double time = tg.time(j);
    const auto r = quadrature_expectations(evolve(s, time));
    t.values.insert(t.values.end(), {time, r.mean_x, r.mean_p, r.var_x, r.var_p, r.product});
  }
  return t;
}

inline Table photon_table(const FockState& s) {
  Table t{{"n", "probability"}, {}};
  const auto d = photon_distribution(s);
  for (std::size_t n = 0; n < d.probabilities.size(); ++n) {
    t.values.insert(t.values.end(), {static_cast<double>(n), d.probabilities[n]});
  }
  return t;
}

inline Table amplitude_table(const FockState& s) {
  Table t{{"n", "re", "im"}, {}};
  for (std::size_t n = 0; n < s.dim(); ++n) {
    t.values.insert(t.values.end(), {static_cast<double>(n), s[n].real(), s[n].imag()});
  }
  return t;
}

inline void write_array(std::ostream& os, std::span<const double> v) {
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << format_real(v[i]);
  os << ']';
}

inline void write_surface_csv(std::ostream& os, const DensitySurface& surf) {
  const auto& xg = surf.x_grid();
  const auto& tg = surf.t_grid();
  os << "t/x";
  for (std::size_t i = 0; i < xg.size(); ++i) os << ',' << format_real(xg.coordinate(i));
  os << '\n';
  for (std::size_t j = 0; j < tg.size(); ++j) {
    os << format_real(tg.time(j));
    for (double v : surf.slice(j)) os << ',' << format_real(v);
    os << '\n';
  }
}

inline void write_surface_json(std::ostream& os, const DensitySurface& surf) {
  const auto& xg = surf.x_grid();
  const auto& tg = surf.t_grid();
  std::vector<double> xs = xg.points();
  std::vector<double> ts(tg.size());
  for (std::size_t j = 0; j < ts.size(); ++j) ts[j] = tg.time(j);
  os << "{\"product\":\"density_surface\",\"layout\":\"row_major_t_by_x\",\"shape\":[" << tg.size()
     << ',' << xg.size() << "],\n\"x_grid\":{\"x_min\":" << format_real(xg.x_min)
     << ",\"x_max\":" << format_real(xg.x_max) << ",\"n_points\":" << xg.n_points << ",\"points\":";
  write_array(os, xs);
  os << "},\n\"t_grid\":{\"t_min\":" << format_real(tg.t_min) << ",\"t_max\":" << format_real(tg.t_max)
     << ",\"n_steps\":" << tg.n_steps << ",\"points\":";
  write_array(os, ts);
  os << "},\n\"values\":";
  write_array(os, surf.values());
  os << "}\n";
}

inline void write_table_csv(std::ostream& os, const Table& t) {
  for (std::size_t c = 0; c < t.names.size(); ++c) os << (c ? "," : "") << t.names[c];
  os << '\n';
  const std::size_t nc = t.names.size();
  for (std::size_t r = 0; r < t.rows(); ++r) {
    for (std::size_t c = 0; c < nc; ++c) os << (c ? "," : "") << format_real(t.values[r * nc + c]);
    os << '\n';
  }
}

inline void write_table_json(std::ostream& os, Product p, const Table& t) {
  os << "{\"product\":\"" << to_string(p) << "\",\"layout\":\"row_major\",\"shape\":[" << t.rows()
     << ',' << t.names.size() << "],\"column_names\":[";
  for (std::size_t c = 0; c < t.names.size(); ++c) os << (c ? "," : "") << '"' << t.names[c] << '"';
  os << "],\n\"values\":";
  write_array(os, t.values);
  os << "}\n";
}

}  // namespace detail

inline std::string output_path(const Scenario& s, Product p) {
  return s.out_prefix + "_" + detail::file_stem(p) + (s.format == OutputFormat::csv ? ".csv" : ".json");
}

/// Runs every requested product and writes one file per product. On any
/// failure the files already written by this call are removed and a
/// RunError naming the product is thrown. Identical scenarios give
/// identical bytes.
inline RunManifest run_scenario(const Scenario& s) {
  const auto start = std::chrono::steady_clock::now();
  validate(s);

  RunManifest m;
  m.scenario = s;
  m.tolerances = s.tol;

  const auto cleanup = [&] {
    std::error_code ec;
    for (const auto& f : m.files) std::filesystem::remove(f.path, ec);
  };

  FockState state = FockState::zeros(1);
  try {
    m.dimension = resolved_dimension(s);
    state = build_state(s);
  } catch (const std::exception& e) {
    throw RunError("state", e.what());
  }

  for (Product p : s.outputs) {
    const std::string path = output_path(s, p);
    try {
      const auto parent = std::filesystem::path(path).parent_path();
      if (!parent.empty()) std::filesystem::create_directories(parent);

      OutputFile f{path, p, 0, 0};
      std::ostringstream os;
      if (p == Product::density_surface) {
        const DensitySurface surf = density_surface(state, s.x_grid, s.t_grid);
        f.rows = s.t_grid.size();
        f.columns = s.x_grid.size();
        if (s.format == OutputFormat::csv) detail::write_surface_csv(os, surf);
        else detail::write_surface_json(os, surf);
      } else {
        const detail::Table t = p == Product::observables_trace   ? detail::observables_table(state, s.t_grid)
                                : p == Product::photon_distribution ? detail::photon_table(state)
                                                                    : detail::amplitude_table(state);
        f.rows = t.rows();
        f.columns = t.names.size();
        if (s.format == OutputFormat::csv) detail::write_table_csv(os, t);
        else detail::write_table_json(os, p, t);
      }

      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
      m.files.push_back(f);
      out << os.str();
      out.close();
      if (!out) throw std::runtime_error("failed writing '" + path + "'");
    } catch (const std::exception& e) {
      cleanup();
      throw RunError(to_string(p), e.what());
    }
  }

  m.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return m;
}

inline nlohmann::json to_json(const Scenario& s) {
  nlohmann::json j;
  j["kind"] = to_string(s.kind);
  if (s.alpha) j["alpha"] = {{"re", s.alpha->real()}, {"im", s.alpha->imag()}};
  if (s.phase_point) j["phase_point"] = {{"x0", s.phase_point->x0}, {"p0", s.phase_point->p0}};
  if (s.level) j["n"] = *s.level;
  j["dim"] = s.dim ? nlohmann::json(*s.dim) : nlohmann::json("auto");
  j["epsilon"] = s.tol.norm;
  j["pad"] = s.tol.pad;
  j["x_grid"] = {{"x_min", s.x_grid.x_min}, {"x_max", s.x_grid.x_max}, {"n_points", s.x_grid.n_points}};
  j["t_grid"] = {{"t_min", s.t_grid.t_min}, {"t_max", s.t_grid.t_max}, {"n_steps", s.t_grid.n_steps}};
  j["outputs"] = nlohmann::json::array();
  for (Product p : s.outputs) j["outputs"].push_back(to_string(p));
  j["format"] = to_string(s.format);
  j["out"] = s.out_prefix;
  return j;
}

inline nlohmann::json to_json(const RunManifest& m) {
  nlohmann::json j;
  j["scenario"] = to_json(m.scenario);
  j["dimension"] = m.dimension;
  j["tolerances"] = {{"norm", m.tolerances.norm},
                     {"op", m.tolerances.op},
                     {"eq", m.tolerances.eq},
                     {"pad", m.tolerances.pad}};
  j["files"] = nlohmann::json::array();
  for (const auto& f : m.files) {
    j["files"].push_back(
        {{"path", f.path}, {"product", to_string(f.product)}, {"rows", f.rows}, {"columns", f.columns}});
  }
  j["duration_seconds"] = m.duration_seconds;
  return j;
}

}  // namespace catstate
