#include "jacobi/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "jacobi/coords.hpp"
#include "jacobi/harness.hpp"
#include "jacobi/io.hpp"
#include "jacobi/reconstruct.hpp"
#include "jacobi/report.hpp"
#include "jacobi/spectral.hpp"
#include "jacobi/tighten.hpp"

namespace jacobi {
namespace {

template <typename Reader>
auto read_input(const std::string& path, std::istream& in, Reader reader) {
  if (path == "-") return reader(in);
  std::ifstream file(path);
  if (!file) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  return reader(file);
}

void write_list(std::ostream& out, const char* label, const auto& xs) {
  out << label << ':';
  for (const auto& x : xs) {
    if constexpr (std::is_floating_point_v<std::decay_t<decltype(x)>>) {
      out << ' ' << format_double(x);
    } else {
      out << ' ' << x;
    }
  }
  out << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Reconstruction of Jacobi matrices from spectral data"};
  app.require_subcommand(1);

  std::string matrix_file;
  auto* forward = app.add_subcommand("forward", "Print eigenvalues and norming constants");
  forward->add_option("matrix-file", matrix_file, "Matrix file ('-' for stdin)")->required();

  std::string algo_name;
  int digits = 0;
  std::string spectral_file;
  auto* reconstruct_cmd = app.add_subcommand("reconstruct", "Rebuild a matrix from spectral data");
  reconstruct_cmd->add_option("--algo", algo_name, "bg, bi, bg2, bi2 or qr")
      ->required()
      ->check(CLI::IsMember({"bg", "bi", "bg2", "bi2", "qr"}));
  reconstruct_cmd->add_option("--digits", digits, "Significant decimal digits (0 = native)");
  reconstruct_cmd->add_option("spectral-file", spectral_file, "Spectral file ('-' for stdin)")
      ->required();

  std::string tighten_file;
  auto* tighten_cmd = app.add_subcommand("tighten", "Find a tight permutation");
  tighten_cmd->add_option("spectral-file", tighten_file, "Spectral file ('-' for stdin)")
      ->required();

  BenchmarkConfig config;
  std::string experiment = "random";
  std::string format = "table";
  auto* bench = app.add_subcommand("bench", "Run a seeded benchmark");
  bench->add_option("--experiment", experiment)
      ->required()
      ->check(CLI::IsMember({"random", "laplacian", "permutations"}));
  bench->add_option("--n", config.n)->required()->check(CLI::PositiveNumber);
  bench->add_option("--trials", config.trials)->required();
  bench->add_option("--digits", config.digits)->required();
  bench->add_option("--sigma", config.sigma)->capture_default_str();
  bench->add_option("--seed", config.seed)->required();
  bench->add_option("--format", format)->check(CLI::IsMember({"table", "csv"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    if (*forward) {
      const TridiagonalMatrix t = read_input(matrix_file, in, read_matrix);
      write_spectral(out, norming_constants(t));
    } else if (*reconstruct_cmd) {
      const SpectralData d = read_input(spectral_file, in, read_spectral);
      const Arithmetic ar(ScalarMode::with_digits(digits));
      write_matrix(out, reconstruct_from_w(d, parse_algorithm(algo_name), ar));
    } else if (*tighten_cmd) {
      const SpectralData d = validate_spectral(read_input(tighten_file, in, read_spectral));
      const TightenReport report = tighten(w_to_beta(d, initial_permutation(d)));
      write_list(out, "permutation", report.result.pi.one_line());
      write_list(out, "beta", report.result.beta);
      out << "sweeps: " << report.sweeps << '\n';
      out << "transpositions: " << report.transpositions << '\n';
    } else if (*bench) {
      config.experiment = parse_experiment(experiment);
      write_report(out, benchmark(config), parse_report_format(format));
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_numerical() ? kExitBreakdown : kExitValidation;
  }
  return kExitOk;
}

}  // namespace jacobi
