// otcss: sweeps and oracle verification from the command line.
//
// Exit codes: 0 ok, 1 invalid input, 2 tolerance breach, 3 I/O failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "otcss/error.hpp"
#include "otcss/model.hpp"
#include "otcss/sweep.hpp"
#include "otcss/verify.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitTolerance = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputFlags {
  std::string output = "-";
  std::string format = "csv";
  std::string timestamp;
};

void add_output_flags(CLI::App* cmd, OutputFlags& f) {
  cmd->add_option("--output,-o", f.output, "Output file, '-' for stdout")->capture_default_str();
  cmd->add_option("--format", f.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--timestamp", f.timestamp, "Timestamp to record in the metadata");
}

void emit(const otcss::SweepResult& result, const OutputFlags& f) {
  std::ostringstream buf;
  const otcss::WriteOptions opts{f.timestamp};
  if (otcss::parse_format(f.format) == otcss::SweepFormat::json) {
    otcss::write_json(buf, result, opts);
  } else {
    otcss::write_csv(buf, result, opts);
  }
  if (f.output == "-") {
    std::cout << buf.str();
    std::cout.flush();
    if (!std::cout) throw IoError("failed to write to stdout");
    return;
  }
  std::ofstream file(f.output, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + f.output + "' for writing");
  file << buf.str();
  file.close();
  if (!file) throw IoError("failed to write '" + f.output + "'");
}

int run_verify(int cutoff, const std::string& grid, const std::string& lambda,
               const std::string& gamma) {
  otcss::VerifyOptions opts;
  opts.cutoff = cutoff;
  if (!lambda.empty() || !gamma.empty()) {
    const auto l = otcss::SweepAxis::parse("lambda", lambda.empty() ? "0.5" : lambda);
    const auto g = otcss::SweepAxis::parse("gamma", gamma.empty() ? "0" : gamma);
    for (double a : l.values)
      for (double b : g.values) opts.points.emplace_back(a, b);
  } else {
    opts.points = otcss::verify_grid(grid);
  }

  for (const auto& [l, g] : opts.points) otcss::OtcssParams(l, g);

  std::printf("cutoff %d, %zu parameter points\n", cutoff, opts.points.size());
  const auto results = otcss::run_verification(opts);
  bool ok = true;
  for (const auto& r : results) {
    if (r.error.empty()) {
      std::printf("%-26s max deviation %.3e  tolerance %.0e  %s\n", r.name.c_str(),
                  r.max_deviation, r.tolerance, r.passed ? "PASS" : "FAIL");
    } else {
      std::printf("%-26s not run: %s  FAIL\n", r.name.c_str(), r.error.c_str());
    }
    ok = ok && r.passed;
  }
  if (!ok) {
    for (const auto& r : results) {
      if (!r.passed) std::fprintf(stderr, "verification failed: %s\n", r.name.c_str());
    }
  }
  return ok ? 0 : kExitTolerance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One- and two-mode combination squeezed vacuum: sweeps and oracle checks"};
  app.set_version_flag("--version", std::string(otcss::version()));
  app.require_subcommand(1);

  std::string lambda, gamma, j, theta, phi, r;
  OutputFlags out;
  bool clip = false;
  bool difference = false;
  int cutoff = 40;
  std::string grid = "coarse";

  auto* neg = app.add_subcommand("negativity", "Logarithmic negativity over (lambda, gamma)");
  neg->add_option("--lambda", lambda, "a:b:n or value")->default_str("0:1.5:50");
  neg->add_option("--gamma", gamma, "a:b:n or value")->default_str("-2:2:50");
  add_output_flags(neg, out);

  auto* bell = app.add_subcommand("bell", "Bell function over any of lambda, gamma, J, theta, phi");
  bell->add_option("--lambda", lambda, "a:b:n or value")->default_str("0:1.2:49");
  bell->add_option("--gamma", gamma, "a:b:n or value")->default_str("0");
  bell->add_option("--j", j, "a:b:n or value")->default_str("0.01:0.5:50");
  bell->add_option("--theta", theta, "a:b:n or value (radians)")->default_str("pi");
  bell->add_option("--phi", phi, "a:b:n or value (radians)")->default_str("0");
  bell->add_flag("--clip-at-2", clip, "Emit null where B <= 2");
  add_output_flags(bell, out);

  auto* fid = app.add_subcommand("fidelity", "Teleportation fidelity over (lambda, gamma)");
  fid->add_option("--lambda", lambda, "a:b:n or value")->default_str("0:1.5:31");
  fid->add_option("--gamma", gamma, "a:b:n or value")->default_str("-2:2:41");
  fid->add_option("--r", r, "Input squeeze; 0 is a coherent input")->default_str("0");
  fid->add_flag("--difference", difference, "Emit F(r) - F(0)");
  add_output_flags(fid, out);

  auto* ver = app.add_subcommand("verify", "Compare closed forms against the Fock-space oracle");
  ver->add_option("--cutoff", cutoff, "Photon-number cutoff per mode")->capture_default_str();
  ver->add_option("--grid", grid, "coarse or fine")
      ->check(CLI::IsMember({"coarse", "fine"}))
      ->capture_default_str();
  ver->add_option("--lambda", lambda, "Override the grid: a:b:n or value");
  ver->add_option("--gamma", gamma, "Override the grid: a:b:n or value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  // Angle axes accept "pi" as shorthand for a fixed value of pi.
  const auto angle_axis = [](const char* name, const std::string& text, const char* dflt) {
    const std::string t = text.empty() ? dflt : text;
    if (t == "pi") return otcss::SweepAxis::fixed(name, std::numbers::pi);
    return otcss::SweepAxis::parse(name, t);
  };
  const auto axis = [](const char* name, const std::string& text, const char* dflt) {
    return otcss::SweepAxis::parse(name, text.empty() ? dflt : text);
  };

  try {
    if (*neg) {
      emit(otcss::sweep_negativity(axis("lambda", lambda, "0:1.5:50"),
                                   axis("gamma", gamma, "-2:2:50")),
           out);
    } else if (*bell) {
      emit(otcss::sweep_bell(axis("lambda", lambda, "0:1.2:49"), axis("gamma", gamma, "0"),
                             axis("J", j, "0.01:0.5:50"), angle_axis("theta", theta, "pi"),
                             angle_axis("phi", phi, "0"), clip),
           out);
    } else if (*fid) {
      emit(otcss::sweep_fidelity(axis("lambda", lambda, "0:1.5:31"),
                                 axis("gamma", gamma, "-2:2:41"), axis("r", r, "0"), difference),
           out);
    } else if (*ver) {
      if (cutoff < 10) throw otcss::InvalidArgument("verify needs --cutoff >= 10");
      return run_verify(cutoff, grid, lambda, gamma);
    }
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const otcss::CutoffTooSmall& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitTolerance;
  } catch (const otcss::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  }
  return 0;
}
