#include "flagspec/commands.hpp"
#include "flagspec/errors.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

using flagspec::RunConfig;

namespace {

// Raw flag values, applied on top of the config file so that flags win.
struct FlagValues {
  std::map<std::string, std::string> settings;
  std::string config_file;
};

void add_run_flags(CLI::App* cmd, FlagValues& v) {
  auto setting = [&](const std::string& flag, const std::string& key, const std::string& help) {
    cmd->add_option_function<std::string>(flag, [&v, key](const std::string& s) { v.settings[key] = s; }, help);
  };
  setting("--n", "n", "ambient dimensions, comma separated");
  setting("--q", "q", "field sizes, comma separated");
  setting("--k", "k", "k selection (subspace dimensions for subspaces, b for qbinom)");
  setting("--source", "source", "blocks | numeric | both");
  setting("--suite", "suite", "identities | blocks | asymptotics | all");
  setting("--C", "C", "interval constant; calibrated from the prime list when absent");
  setting("--out-dir", "out_dir", "output directory");
  setting("--format", "format", "json, csv or json,csv");
  setting("--max-numeric", "max_numeric", "largest vertex count for dense eigensolves");
  setting("--max-subspaces", "max_subspaces", "largest subspace count per dimension");
  setting("--cluster-tol", "cluster_tol", "eigenvalue clustering tolerance");
  setting("--precision", "precision", "root isolation width");
  setting("--jobs", "jobs", "worker threads");
  cmd->add_option("--config", v.config_file, "key=value config file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of weighted Laplacians on flag complexes over finite fields"};
  app.set_version_flag("--version", FLAGSPEC_VERSION);
  app.require_subcommand(1);

  using Command = std::function<int(const RunConfig&, std::ostream&, std::ostream&)>;
  struct Entry {
    const char* name;
    const char* help;
    Command run;
    FlagValues values;
  };
  std::vector<Entry> entries = {
      {"spectrum", "block and/or numeric spectrum of Delta_0", flagspec::cmd_spectrum, {}},
      {"verify", "run invariant suites and write manifest.json", flagspec::cmd_verify, {}},
      {"asymptotics", "containment report and convergence tables", flagspec::cmd_asymptotics, {}},
      {"distinct", "distinct eigenvalue counts against floor(n^2/4)+2", flagspec::cmd_distinct, {}},
      {"subspaces", "dump the subspace enumeration", flagspec::cmd_subspaces, {}},
      {"qbinom", "Gaussian binomial calculator", flagspec::cmd_qbinom, {}},
  };
  std::vector<CLI::App*> subs;
  for (auto& e : entries) {
    subs.push_back(app.add_subcommand(e.name, e.help));
    add_run_flags(subs.back(), e.values);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : flagspec::kExitUsage;
  }

  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    auto& e = entries[i];
    try {
      RunConfig config;
      if (!e.values.config_file.empty()) flagspec::apply_config_file(config, e.values.config_file);
      for (const auto& [key, value] : e.values.settings) flagspec::apply_setting(config, key, value);
      // The calculator accepts any q >= 2; everything else works over prime fields.
      if (std::string(e.name) == "qbinom") {
        auto check = config;
        check.prime_list.clear();
        check.validate();
      } else {
        config.validate();
      }
      return e.run(config, std::cout, std::cerr);
    } catch (const flagspec::UsageError& ex) {
      std::cerr << "usage error: " << ex.what() << "\n";
      return flagspec::kExitUsage;
    } catch (const flagspec::DomainError& ex) {
      std::cerr << "usage error: " << ex.what() << "\n";
      return flagspec::kExitUsage;
    } catch (const flagspec::ResourceError& ex) {
      std::cerr << "resource refusal: " << ex.what() << "\n";
      return flagspec::kExitResource;
    } catch (const std::exception& ex) {
      std::cerr << "error: " << ex.what() << "\n";
      return flagspec::kExitCheckFailure;
    }
  }
  return flagspec::kExitUsage;
}
