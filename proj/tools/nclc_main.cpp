#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "nclc/cli/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Levi-Civita connections on noncommutative tori"};
  std::string config_path, command, format = "json", out_path;
  bool params_zero = false;
  app.add_option("--config", config_path, "problem description")->required();
  app.add_option("--command", command, "overrides [run] command")
      ->check(CLI::IsMember(nclc::cli::commands()));
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--params-zero", params_zero, "ignore [params] and use X = H = A = 0");
  app.add_option("--out", out_path, "write the report here instead of stdout");
  CLI11_PARSE(app, argc, argv);

  nclc::cli::Report report;
  try {
    nclc::cli::ProblemConfig cfg = nclc::cli::load_config(config_path);
    if (!command.empty()) cfg.command = command;
    if (params_zero) cfg.params = nclc::SolverParams::zero(cfg.algebra, cfg.lie.dim());
    report = nclc::cli::run(cfg);
  } catch (const nclc::Error& e) {
    report = nclc::cli::failed(command.empty() ? "unknown" : command, e);
  }

  std::string text = nclc::cli::emit_report(report, format);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 1;
    }
    out << text;
  }
  if (report.status == nclc::cli::Status::Error) std::cerr << report.error_message << "\n";
  return report.exit_code();
}
