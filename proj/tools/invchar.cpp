#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "invchar/cli.hpp"

namespace {

std::vector<invchar::Rational> parse_list(const std::vector<std::string>& tokens) {
  std::vector<invchar::Rational> out;
  for (const auto& t : tokens) out.push_back(invchar::parse_rational(t));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace invchar::cli;

  CLI::App app{"Signed Betti numbers and graded characters of involutions on Hamiltonian torus spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string report_path;
  int expand_order = -1;
  app.add_option("--report", report_path, "Write the machine-readable TSV report here");
  app.add_option("--expand-order", expand_order, "Series cross-check depth (default 2*dim+10)")->check(CLI::NonNegativeNumber);

  std::string polytope, involution, subtorus, fan, matrix, crit, betti;
  std::optional<int> k;
  int flag_n = 0;
  std::vector<std::string> spectrum, weights;

  auto* stats = app.add_subcommand("stats", "f- and h-vectors, simplicity and symmetry of a polytope");
  stats->add_option("polytope", polytope, "Polytope file")->required();

  auto* stanley = app.add_subcommand("verify-stanley", "Signed Betti numbers of a symmetric toric variety");
  stanley->add_option("polytope", polytope, "Centrally symmetric simple polytope file")->required();

  auto* verify_main = app.add_subcommand("verify-main", "Compare a toric variety with its reduction by a subtorus");
  auto* reduce = app.add_subcommand("reduce", "Slice a polytope by a subtorus moment level");
  for (auto* sub : {verify_main, reduce}) {
    sub->add_option("polytope", polytope, "Polytope file")->required();
    sub->add_option("involution", involution, "Affine involution file")->required();
    sub->add_option("subtorus", subtorus, "Subtorus projection file")->required();
  }

  auto* trace = app.add_subcommand("trace", "Graded trace of a fan involution");
  trace->add_option("--fan", fan, "Fan file");
  trace->add_option("--psi", matrix, "Lattice involution matrix (default -id)");
  trace->add_option("--polytope", polytope, "Centrally symmetric polytope (uses its normal fan and -id)");

  auto* morse = app.add_subcommand("morse", "Equivariant perfection of the moment map norm square");
  morse->add_option("--polytope", polytope, "Centrally symmetric simple polytope, full torus");
  morse->add_option("--crit", crit, "Critical data file");
  morse->add_option("--betti", betti, "Signed Betti table of the manifold");
  morse->add_option("--k", k, "Torus rank");

  auto* flag = app.add_subcommand("flag", "Involution A -> -A^t on the complete flag variety");
  std::string spec_file;
  flag->add_option("n", flag_n, "Matrix size");
  flag->add_option("--spec", spec_file, "Flag spec file (n, spectrum, weights)");
  flag->add_option("--spectrum", spectrum, "Eigenvalues (centrally symmetric)");
  flag->add_option("--weights", weights, "Circle weights r_1..r_n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  Options opts;
  if (expand_order >= 0) opts.expand_order = expand_order;
  auto opt_path = [](const std::string& s) { return s.empty() ? std::nullopt : std::optional<std::filesystem::path>(s); };

  RunReport report;
  if (*stats) {
    report = cmd_polytope_stats(polytope);
  } else if (*stanley) {
    report = cmd_verify_stanley(polytope);
  } else if (*verify_main) {
    report = cmd_verify_main(polytope, involution, subtorus);
  } else if (*reduce) {
    report = cmd_reduce(polytope, involution, subtorus);
  } else if (*trace) {
    report = cmd_trace({opt_path(fan), opt_path(matrix), opt_path(polytope)});
  } else if (*morse) {
    report = cmd_morse({opt_path(polytope), opt_path(crit), opt_path(betti), k}, opts);
  } else if (*flag) {
    try {
      report = cmd_flag({flag_n, parse_list(spectrum), parse_list(weights), opt_path(spec_file)});
    } catch (const invchar::Error& e) {
      report.command = "flag";
      report.verdict = Verdict::Error;
      report.failure = e.what();
    }
  }

  std::cout << report.text();
  if (!report_path.empty()) {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write report to " << report_path << "\n";
      return 2;
    }
    out << report.tsv();
  }
  return report.exit_code();
}
