#pragma once

#include "flagspec/enumeration.hpp"
#include "flagspec/flag_laplacian.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace flagspec {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailure = 1,
  kExitUsage = 2,
  kExitResource = 3,
};

/// Invalid command-line or config input.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::vector<int> n_list;
  std::vector<std::uint32_t> prime_list;
  std::vector<int> k_selection;  // empty: every admissible k
  std::size_t max_vertices_numeric = kDefaultMaxNumeric;
  std::uint64_t max_subspaces_per_dim = kDefaultMaxSubspacesPerDim;
  double cluster_tol = 1e-7;
  double root_precision = 1e-12;
  std::filesystem::path out_dir = "flagspec-out";
  std::vector<std::string> formats = {"json", "csv"};
  std::optional<double> C;
  std::string source = "both";
  std::string suite = "all";
  unsigned jobs = 1;

  bool wants(const std::string& format) const;

  /// Throws UsageError: non-prime q, non-positive caps, tolerances outside (0, 1e-3],
  /// unknown source, suite or format.
  void validate() const;
};

/// key=value lines; blank lines and lines starting with '#' are ignored.
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Applies one setting by config-file key (n, q, k, source, suite, C, out_dir, format,
/// max_numeric, max_subspaces, cluster_tol, precision, jobs). Throws UsageError.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Reads the file and applies every setting in it.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// Every command writes its artifacts under config.out_dir, prints a short
/// summary to `out` and returns an ExitCode. Usage and resource errors are
/// reported on `err`.
int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_asymptotics(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_distinct(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_subspaces(const RunConfig& config, std::ostream& out, std::ostream& err);
/// (a choose b)_q for a in n_list, b in k_selection, q in prime_list; stdout only.
int cmd_qbinom(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace flagspec
