#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "clalg/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"clalg: closures, phantom extensions and modifications over graded rings mod p"};
  std::string input = "-";
  clalg::RunOptions opts;
  bool json = false;
  app.add_option("script", input, "session script, or - for stdin");
  app.add_option("--emax", opts.emax, "Frobenius depth for tight closures without an explicit emax")
      ->capture_default_str();
  app.add_option("--budget", opts.budget, "S-pair budget per Groebner run and per build (0 = default)");
  app.add_option("--seed", opts.seed, "seed for randomized axiom checks")->capture_default_str();
  app.add_flag("--json", json, "emit JSON instead of text");
  app.add_flag("--parallel", opts.parallel, "run commands concurrently (report order is unchanged)");
  app.add_flag("--timing", opts.timing, "include wall-clock timings (makes output run-dependent)");
  CLI11_PARSE(app, argc, argv);

  if (const char* env = std::getenv("CLALG_BUDGET"); env && !opts.budget) opts.budget = std::strtoull(env, nullptr, 10);

  std::stringstream buf;
  if (input == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(input, std::ios::binary);
    if (!in) {
      std::cerr << "clalg: cannot read " << input << "\n";
      return 1;
    }
    buf << in.rdbuf();
  }

  clalg::SessionScript script;
  try {
    script = clalg::parse_session(buf.str());
  } catch (const clalg::SessionError& e) {
    std::cerr << (input == "-" ? "<stdin>" : input) << ":" << e.pos().line << ":" << e.pos().column
              << ": error: " << e.message() << "\n";
    return 1;
  }
  auto reports = clalg::run_session(script, opts);
  std::cout << (json ? clalg::emit_json(reports) : clalg::emit_text(reports));
  return clalg::exit_code(reports);
}
