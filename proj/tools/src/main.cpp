#include <iostream>

#include <CLI11.hpp>

#include "tinv_cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace tinv::cli;

  CLI::App app{"Thomas- and Weyl-type invariants of mappings between affine connection spaces"};
  app.require_subcommand(1);

  RunOptions opts;
  std::vector<std::string> points;
  std::string ricci;
  std::string format;
  std::string out_dir;
  std::uint64_t seed = 0;
  double tol = 0.0;

  std::string builtins;
  for (const auto& b : builtin_names()) builtins += (builtins.empty() ? "" : ", ") + b;

  for (const auto& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", opts.config, "config file or built-in (" + builtins + ")");
    sub->add_option("--point", points, "evaluation point c1,c2,...; repeatable");
    sub->add_option("--points-seed", seed, "seed for sampled points");
    sub->add_option("--tol", tol, "absolute tolerance");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--ricci-convention", ricci, "last or middle")->check(CLI::IsMember({"last", "middle"}));
    sub->add_option("--out", out_dir, "directory for output files");
    if (name == "verify") {
      sub->add_flag("--source-derivatives", opts.source_derivatives,
                    "take target covariant derivatives with the source connection");
    }
    if (name != "example-r3" && name != "audit-paper") sub->get_option("--config")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    for (const auto& p : points) opts.points.push_back(parse_point(p));
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  if (sub->count("--points-seed")) opts.points_seed = seed;
  if (sub->count("--tol")) opts.tol = tol;
  if (sub->count("--format")) opts.format = format;
  if (sub->count("--ricci-convention")) opts.ricci = ricci_from_string(ricci);
  if (sub->count("--out")) opts.out_dir = out_dir;

  return run(sub->get_name(), opts, std::cout, std::cerr);
}
