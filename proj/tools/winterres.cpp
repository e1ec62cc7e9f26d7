// winterres: resonances of the generalized Winter model.
//
//   winterres classify --alpha 50
//   winterres poles --gamma 1+1i --re-max 60 --csv poles.csv --svg poles.svg
//   winterres compare --beta 0.1 --re-max 260
//
// Exit codes: 0 success, 2 usage error, 3 solver failure.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "winter/error.hpp"
#include "winter/report.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;

struct Flags {
  double alpha = 0.0;
  double beta = 0.0;
  std::string gamma;
  int l = 0;
  double radius = 1.0;
  double re_max = 40.0;
  std::string im_min;
  std::string config;
  std::string csv;
  std::string svg;
  std::vector<std::string> interactions;
  bool table = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--alpha", f.alpha, "delta coupling alpha (1/length)");
  cmd->add_option("--beta", f.beta, "delta-prime coupling beta (length)");
  cmd->add_option("--gamma", f.gamma, "complex coupling gamma, written a+bi");
  cmd->add_option("--l", f.l, "partial wave l")->check(CLI::NonNegativeNumber);
  cmd->add_option("--radius", f.radius, "sphere radius R")->check(CLI::PositiveNumber);
  cmd->add_option("--re-max", f.re_max, "upper end of the Re k search window");
  cmd->add_option("--im-min", f.im_min, "lower end of the Im k search window, or 'auto'");
  cmd->add_option("--config", f.config, "JSON run configuration; flags override it");
  cmd->add_option("--csv", f.csv, "write the pole table here instead of stdout");
  cmd->add_option("--svg", f.svg, "write a momentum-plane scatter figure here");
  cmd->add_option("--interaction", f.interactions,
                  "overlay an interaction, e.g. alpha=50 or gamma=1+1i (repeatable)");
}

bool given(const CLI::App* cmd, const char* name) { return cmd->count(name) > 0; }

winter::RunConfig build_config(const CLI::App* cmd, const Flags& f) {
  winter::RunConfig config;
  if (!f.config.empty()) config = winter::load_config_file(f.config);

  const bool coupling_flag = given(cmd, "--alpha") || given(cmd, "--beta") || given(cmd, "--gamma");
  if (!f.interactions.empty()) {
    config.interaction.clear();
    for (const auto& text : f.interactions) config.interaction.push_back(winter::parse_interaction(text));
  }
  if (coupling_flag) {
    winter::GpiParams& p = config.interaction.front();
    if (given(cmd, "--alpha")) p.alpha = f.alpha;
    if (given(cmd, "--beta")) p.beta = f.beta;
    if (given(cmd, "--gamma")) p.gamma = winter::parse_complex(f.gamma);
  }
  if (given(cmd, "--l")) config.channel.l = f.l;
  if (given(cmd, "--radius")) config.channel.radius = f.radius;
  if (given(cmd, "--re-max")) config.search.re_max = f.re_max;
  if (given(cmd, "--im-min")) {
    if (f.im_min == "auto") {
      config.search.im_min.reset();
    } else {
      config.search.im_min = winter::parse_complex(f.im_min).real();
    }
  }
  if (given(cmd, "--csv")) config.outputs.csv_path = f.csv;
  if (given(cmd, "--svg")) config.outputs.svg_path = f.svg;
  if (cmd->get_name() == "poles" && given(cmd, "--table")) config.outputs.table = f.table;
  winter::validate(config);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resonance poles of the generalized Winter model"};
  app.require_subcommand(1);
  Flags flags;
  auto* classify = app.add_subcommand("classify", "classify an interaction and print its equivalent forms");
  auto* poles = app.add_subcommand("poles", "locate resonance poles; CSV table and optional SVG figure");
  auto* compare = app.add_subcommand("compare", "compare located poles with the high-energy asymptotics");
  for (auto* cmd : {classify, poles, compare}) add_common(cmd, flags);
  poles->add_flag("--table", flags.table, "also print the comparison table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (classify->parsed()) {
      const winter::RunConfig config = build_config(classify, flags);
      for (const auto& p : config.interaction) std::cout << winter::cmd_classify(p);
    } else if (poles->parsed()) {
      const winter::RunConfig config = build_config(poles, flags);
      const winter::PolesReport report = winter::cmd_poles(config);
      if (config.outputs.csv_path.empty()) std::cout << report.csv;
      if (config.outputs.table) std::cout << winter::cmd_compare(config);
    } else if (compare->parsed()) {
      std::cout << winter::cmd_compare(build_config(compare, flags));
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const winter::Error& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  }
  return 0;
}
