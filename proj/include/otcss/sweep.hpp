#pragma once

// Grid sweeps over the closed forms, written as CSV or JSON.

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace otcss {

std::string_view version();

/// One sweep coordinate: either "a:b:n" (n >= 2 evenly spaced values, a < b)
/// or a single fixed value.
struct SweepAxis {
  std::string name;
  std::vector<double> values;

  static SweepAxis parse(std::string name, std::string_view text);
  static SweepAxis fixed(std::string name, double value);
};

enum class SweepFormat { csv, json };

SweepFormat parse_format(std::string_view text);

struct SweepResult {
  std::string quantity;
  std::string source;
  std::vector<std::string> columns;
  /// Full Cartesian product in row-major axis order; the last column is the
  /// computed quantity, empty when masked.
  std::vector<std::vector<std::optional<double>>> rows;
};

/// E_N over (lambda, gamma).
SweepResult sweep_negativity(const SweepAxis& lambda, const SweepAxis& gamma);

/// Bell function over (lambda, gamma, J, theta, phi). With clip_at_2, values
/// not above 2 are emitted as null.
SweepResult sweep_bell(const SweepAxis& lambda, const SweepAxis& gamma, const SweepAxis& j,
                       const SweepAxis& theta, const SweepAxis& phi, bool clip_at_2);

/// Teleportation fidelity over (lambda, gamma, r); r = 0 is the coherent
/// input. With difference, F(r) - F(0) instead.
SweepResult sweep_fidelity(const SweepAxis& lambda, const SweepAxis& gamma, const SweepAxis& r,
                           bool difference);

struct WriteOptions {
  /// ISO-8601 timestamp recorded in the metadata; omitted when empty.
  std::string timestamp;
};

void write_csv(std::ostream& out, const SweepResult& result, const WriteOptions& options = {});
void write_json(std::ostream& out, const SweepResult& result, const WriteOptions& options = {});

}  // namespace otcss
