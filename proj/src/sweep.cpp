#include "otcss/sweep.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>

#include "json.hpp"

#include "otcss/bell.hpp"
#include "otcss/error.hpp"
#include "otcss/model.hpp"
#include "otcss/parallel.hpp"
#include "otcss/teleport.hpp"

#ifndef OTCSS_VERSION
#define OTCSS_VERSION "0.0.0"
#endif

namespace otcss {

namespace {

double parse_number(std::string_view text, const std::string& axis) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw InvalidArgument("invalid number '" + std::string(text) + "' for " + axis);
  }
  return v;
}

using Evaluator = std::function<std::optional<double>(const std::vector<double>&)>;

SweepResult run_grid(std::string quantity, std::string source, const std::vector<const SweepAxis*>& axes,
                     const Evaluator& eval) {
  SweepResult result;
  result.quantity = std::move(quantity);
  result.source = std::move(source);
  std::size_t total = 1;
  for (const SweepAxis* a : axes) {
    result.columns.push_back(a->name);
    total *= a->values.size();
  }
  result.columns.push_back(result.quantity);
  result.rows.resize(total);

  parallel_for(total, [&](std::size_t index) {
    std::vector<double> coords(axes.size());
    std::size_t rem = index;
    for (std::size_t k = axes.size(); k-- > 0;) {
      const auto& vals = axes[k]->values;
      coords[k] = vals[rem % vals.size()];
      rem /= vals.size();
    }
    std::vector<std::optional<double>> row(coords.begin(), coords.end());
    row.push_back(eval(coords));
    result.rows[index] = std::move(row);
  });
  return result;
}

// Builds every parameter set up front so envelope violations surface before
// any computation.
void check_params(const SweepAxis& lambda, const SweepAxis& gamma) {
  for (double l : lambda.values)
    for (double g : gamma.values) OtcssParams(l, g);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string_view version() { return OTCSS_VERSION; }

SweepAxis SweepAxis::parse(std::string name, std::string_view text) {
  SweepAxis axis;
  axis.name = std::move(name);
  const auto c1 = text.find(':');
  if (c1 == std::string_view::npos) {
    axis.values.push_back(parse_number(text, axis.name));
    return axis;
  }
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos) {
    throw InvalidArgument("range for " + axis.name + " must be a:b:n");
  }
  const double a = parse_number(text.substr(0, c1), axis.name);
  const double b = parse_number(text.substr(c1 + 1, c2 - c1 - 1), axis.name);
  const std::string_view n_text = text.substr(c2 + 1);
  int n = 0;
  const auto [ptr, ec] = std::from_chars(n_text.data(), n_text.data() + n_text.size(), n);
  if (ec != std::errc() || ptr != n_text.data() + n_text.size()) {
    throw InvalidArgument("invalid step count for " + axis.name);
  }
  if (n < 2) throw InvalidArgument("range for " + axis.name + " needs at least 2 steps");
  if (!(a < b)) throw InvalidArgument("range for " + axis.name + " needs min < max");
  axis.values.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) axis.values.push_back(i + 1 == n ? b : a + (b - a) * i / (n - 1));
  return axis;
}

SweepAxis SweepAxis::fixed(std::string name, double value) { return {std::move(name), {value}}; }

SweepFormat parse_format(std::string_view text) {
  if (text == "csv") return SweepFormat::csv;
  if (text == "json") return SweepFormat::json;
  throw InvalidArgument("unknown format '" + std::string(text) + "'");
}

SweepResult sweep_negativity(const SweepAxis& lambda, const SweepAxis& gamma) {
  check_params(lambda, gamma);
  return run_grid("log_negativity", "ppt-symplectic-eigenvalue", {&lambda, &gamma},
                  [](const std::vector<double>& x) -> std::optional<double> {
                    return log_negativity(covariance(OtcssParams(x[0], x[1])));
                  });
}

SweepResult sweep_bell(const SweepAxis& lambda, const SweepAxis& gamma, const SweepAxis& j,
                       const SweepAxis& theta, const SweepAxis& phi, bool clip_at_2) {
  check_params(lambda, gamma);
  for (double v : j.values) BellSetting(v, 0.0, 0.0);
  for (double v : theta.values) BellSetting(0.0, v, 0.0);
  for (double v : phi.values) BellSetting(0.0, 0.0, v);
  return run_grid("bell", "displaced-parity-closed-form", {&lambda, &gamma, &j, &theta, &phi},
                  [clip_at_2](const std::vector<double>& x) -> std::optional<double> {
                    const double b =
                        bell_function(OtcssParams(x[0], x[1]), BellSetting(x[2], x[3], x[4])).value;
                    if (clip_at_2 && !(b > 2.0)) return std::nullopt;
                    return b;
                  });
}

SweepResult sweep_fidelity(const SweepAxis& lambda, const SweepAxis& gamma, const SweepAxis& r,
                           bool difference) {
  check_params(lambda, gamma);
  for (double v : r.values) InputState::squeezed_vacuum(v);
  const bool coherent_only = r.values.size() == 1 && r.values[0] == 0.0;
  const std::string source = difference ? "squeezed-input-closed-form-difference"
                             : coherent_only ? "coherent-input-closed-form"
                                             : "squeezed-input-closed-form";
  return run_grid(difference ? "fidelity_difference" : "fidelity", source, {&lambda, &gamma, &r},
                  [difference](const std::vector<double>& x) -> std::optional<double> {
                    const OtcssParams p(x[0], x[1]);
                    if (difference) return fidelity_difference(p, x[2]);
                    if (x[2] == 0.0) return fidelity_coherent_closed(p).value();
                    return fidelity_squeezed_closed(p, x[2]).value();
                  });
}

void write_csv(std::ostream& out, const SweepResult& result, const WriteOptions& options) {
  out << "# quantity=" << result.quantity << " source=" << result.source
      << " version=" << version();
  if (!options.timestamp.empty()) out << " timestamp=" << options.timestamp;
  out << '\n';
  for (std::size_t i = 0; i < result.columns.size(); ++i) {
    out << (i ? "," : "") << result.columns[i];
  }
  out << '\n';
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (row[i]) out << format_double(*row[i]);
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const SweepResult& result, const WriteOptions& options) {
  nlohmann::ordered_json meta;
  meta["quantity"] = result.quantity;
  meta["source"] = result.source;
  meta["version"] = std::string(version());
  if (!options.timestamp.empty()) meta["timestamp"] = options.timestamp;
  meta["columns"] = result.columns;

  nlohmann::ordered_json grid = nlohmann::ordered_json::array();
  for (const auto& row : result.rows) {
    nlohmann::ordered_json rec;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i]) {
        rec[result.columns[i]] = *row[i];
      } else {
        rec[result.columns[i]] = nullptr;
      }
    }
    grid.push_back(std::move(rec));
  }
  nlohmann::ordered_json doc;
  doc["meta"] = std::move(meta);
  doc["grid"] = std::move(grid);
  out << doc.dump(2) << '\n';
}

}  // namespace otcss
