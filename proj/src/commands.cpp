#include "flagspec/commands.hpp"

#include "flagspec/asymptotics.hpp"
#include "flagspec/block_spectra.hpp"
#include "flagspec/errors.hpp"
#include "flagspec/inclusion_algebra.hpp"
#include "flagspec/prime_field.hpp"
#include "flagspec/qcombinatorics.hpp"
#include "flagspec/reporting.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace flagspec {

namespace {

using json = nlohmann::ordered_json;

// Multiset matching tolerance between block and numeric spectra.
constexpr double kReconcileTol = 1e-8;
// Vertex count up to which the blocks suite runs the exact B^{-1} Delta_0 B check.
constexpr std::size_t kConjugationCap = 500;
// Dense exact matrices (rank, null space, decomposition) above this many entries are skipped.
constexpr std::size_t kMaxDenseExactEntries = 4'000'000;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<long> int_list(const std::string& key, const std::string& value) {
  try {
    return parse_int_list(value);
  } catch (const DomainError& e) {
    throw UsageError(key + ": " + e.what());
  }
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double d = 0;
  try {
    d = std::stod(value, &used);
  } catch (const std::exception&) {
    throw UsageError(key + ": not a number: " + value);
  }
  if (used != value.size() || !std::isfinite(d)) throw UsageError(key + ": not a number: " + value);
  return d;
}

long parse_long(const std::string& key, const std::string& value) {
  const auto v = int_list(key, value);
  if (v.size() != 1) throw UsageError(key + ": expected one integer: " + value);
  return v[0];
}

json rational_json(const Rational& r) { return to_string(r); }

json finite_or_null(double d) { return std::isfinite(d) ? json(d) : json(nullptr); }

std::string hp_decimal(const HighPrecision& x) { return decimal(static_cast<double>(x)); }

std::string param_string(const json& params) {
  std::string s;
  for (auto it = params.begin(); it != params.end(); ++it) {
    if (!s.empty()) s += " ";
    s += it.key() + "=" + (it->is_string() ? it->get<std::string>() : it->dump());
  }
  return s;
}

// Runs tasks on at most `jobs` threads; results come back in task order.
template <typename R>
std::vector<R> run_pool(const std::vector<std::function<R()>>& tasks, unsigned jobs) {
  std::vector<R> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

void write_artifact(const RunConfig& config, const std::string& name, const std::string& contents,
                    std::vector<std::string>& artifacts) {
  const auto path = config.out_dir / name;
  write_file_atomic(path, contents);
  artifacts.push_back(path.string());
}

std::size_t vertex_count(int n, std::uint32_t q) {
  BigInt total = 0;
  for (int i = 1; i <= n - 1; ++i) total += q_binomial(n, i, q);
  return fits_u64(total) ? static_cast<std::size_t>(to_u64(total)) : SIZE_MAX;
}

BigInt largest_level(int n, std::uint32_t q) {
  BigInt best = 0;
  for (int d = 0; d <= n; ++d) best = std::max(best, q_binomial(n, d, q));
  return best;
}

void require_n_at_least(const RunConfig& config, int lo, const std::string& what) {
  if (config.n_list.empty()) throw UsageError(what + " needs --n");
  for (int n : config.n_list) {
    if (n < lo) throw UsageError(what + " needs n >= " + std::to_string(lo));
  }
}

void require_primes(const RunConfig& config, const std::string& what) {
  if (config.prime_list.empty()) throw UsageError(what + " needs --q");
}

// ---- spectrum -------------------------------------------------------------

json eigenvalues_json(const SpectrumReport& r) {
  json list = json::array();
  for (const auto& e : r.eigenvalues) {
    json item;
    item["value_decimal"] = decimal(e.value);
    item["isolating_interval"] = json::array({rational_json(e.lo), rational_json(e.hi)});
    item["multiplicity"] = to_string(e.multiplicity);
    if (e.block_k >= 0) item["block_k"] = e.block_k;
    list.push_back(std::move(item));
  }
  return list;
}

std::string spectrum_csv(const SpectrumReport& r) {
  std::string out = csv_line({"value_decimal", "lo", "hi", "multiplicity", "block_k"});
  for (const auto& e : r.eigenvalues) {
    out += csv_line({decimal(e.value), to_string(e.lo), to_string(e.hi), to_string(e.multiplicity),
                     e.block_k >= 0 ? std::to_string(e.block_k) : ""});
  }
  return out;
}

struct SpectrumOutcome {
  int exit_code = kExitOk;
  std::vector<std::pair<std::string, std::string>> files;  // name, contents
  std::string summary;
};

SpectrumOutcome spectrum_job(const RunConfig& config, int n, std::uint32_t q) {
  SpectrumOutcome out;
  const std::string stem = "spectrum_n" + std::to_string(n) + "_q" + std::to_string(q);
  const bool blocks = config.source != "numeric";
  const bool numeric = config.source != "blocks";
  std::ostringstream summary;
  summary << "n=" << n << " q=" << q;

  std::optional<SpectrumReport> block_rep, numeric_rep;
  if (blocks) {
    block_rep = spectrum_via_blocks(n, q, config.root_precision);
    json j;
    j["n"] = n;
    j["q"] = q;
    j["source"] = "blocks";
    j["total_multiplicity"] = to_string(block_rep->total_multiplicity());
    json bl = json::array();
    for (int k = 0; 2 * k <= n; ++k) {
      const auto b = build_block(n, q, k);
      bl.push_back({{"k", k},
                    {"size", b.entries.rows()},
                    {"multiplicity", to_string(block_multiplicity(n, q, k))},
                    {"char_poly", char_poly_exact(b).to_string("t")}});
    }
    j["blocks"] = std::move(bl);
    j["eigenvalues"] = eigenvalues_json(*block_rep);
    if (config.wants("json")) out.files.emplace_back(stem + "_blocks.json", j.dump(2) + "\n");
    if (config.wants("csv")) out.files.emplace_back(stem + "_blocks.csv", spectrum_csv(*block_rep));
    summary << " blocks: " << block_rep->eigenvalues.size() << " entries, total multiplicity "
            << to_string(block_rep->total_multiplicity());
  }
  if (numeric) {
    const std::size_t vertices = vertex_count(n, q);
    if (vertices > config.max_vertices_numeric) {
      throw ResourceError("numeric spectrum of " + std::to_string(vertices) +
                          " vertices exceeds --max-numeric " + std::to_string(config.max_vertices_numeric));
    }
    const auto lap = assemble_laplacian(n, q, 0);
    const auto values = numeric_eigenvalues(lap, config.max_vertices_numeric);
    SpectrumReport rep;
    rep.n = n;
    rep.q = q;
    rep.source = "numeric";
    rep.cluster_tol = config.cluster_tol;
    for (const auto& c : cluster_sorted(values, config.cluster_tol)) {
      Eigenvalue e;
      e.value = c.mean;
      e.lo = Rational(c.min);
      e.hi = Rational(c.max);
      e.multiplicity = static_cast<unsigned long>(c.count);
      rep.eigenvalues.push_back(std::move(e));
    }
    json j;
    j["n"] = n;
    j["q"] = q;
    j["source"] = "numeric";
    j["vertices"] = values.size();
    j["cluster_tol"] = config.cluster_tol;
    j["eigenvalues"] = eigenvalues_json(rep);
    json all = json::array();
    for (double v : values) all.push_back(decimal(v));
    j["values"] = std::move(all);
    if (config.wants("json")) out.files.emplace_back(stem + "_numeric.json", j.dump(2) + "\n");
    if (config.wants("csv")) out.files.emplace_back(stem + "_numeric.csv", spectrum_csv(rep));
    summary << " numeric: " << values.size() << " eigenvalues in " << rep.eigenvalues.size() << " clusters";
    numeric_rep = std::move(rep);
  }
  if (block_rep && numeric_rep) {
    const auto rec = reconcile_spectra(*block_rep, *numeric_rep, kReconcileTol, config.cluster_tol);
    json j;
    j["n"] = n;
    j["q"] = q;
    j["pass"] = rec.pass;
    j["tolerance"] = kReconcileTol;
    j["block_clusters"] = rec.block_clusters;
    j["numeric_clusters"] = rec.numeric_clusters;
    j["block_total"] = to_string(rec.block_total);
    j["numeric_total"] = to_string(rec.numeric_total);
    j["expected_total"] = to_string(rec.expected_total);
    j["max_distance"] = rec.max_distance;
    j["diff"] = rec.diff;
    out.files.emplace_back("reconcile_n" + std::to_string(n) + "_q" + std::to_string(q) + ".json",
                           j.dump(2) + "\n");
    summary << " reconciliation " << (rec.pass ? "pass" : "FAIL");
    if (!rec.pass) out.exit_code = kExitCheckFailure;
  }
  out.summary = summary.str();
  return out;
}

// ---- verify ---------------------------------------------------------------

struct CheckEntry {
  json record;  // check, params, status, reason, witness
  double seconds = 0;
};

class CheckList {
 public:
  void run(const std::string& name, json params, const std::function<CheckResult()>& body) {
    const auto start = std::chrono::steady_clock::now();
    CheckEntry e;
    e.record["check"] = name;
    e.record["params"] = params;
    try {
      const auto r = body();
      e.record["status"] = r.pass ? "pass" : "fail";
      if (!r.pass) e.record["witness"] = r.witness;
    } catch (const ResourceError& ex) {
      e.record["status"] = "skipped";
      e.record["reason"] = std::string("resource cap: ") + ex.what();
    } catch (const IntegrityError& ex) {
      e.record["status"] = "fail";
      e.record["witness"] = std::string("integrity error: ") + ex.what();
    }
    e.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    entries_.push_back(std::move(e));
  }

  void skip(const std::string& name, json params, const std::string& reason) {
    CheckEntry e;
    e.record["check"] = name;
    e.record["params"] = std::move(params);
    e.record["status"] = "skipped";
    e.record["reason"] = reason;
    entries_.push_back(std::move(e));
  }

  std::vector<CheckEntry> take() { return std::move(entries_); }

 private:
  std::vector<CheckEntry> entries_;
};

void dense_guard(std::size_t rows, std::size_t cols) {
  if (rows * cols > kMaxDenseExactEntries) {
    throw ResourceError("dense exact matrix " + std::to_string(rows) + "x" + std::to_string(cols) +
                        " exceeds " + std::to_string(kMaxDenseExactEntries) + " entries");
  }
}

std::size_t level_count(int n, std::uint32_t q, int d) { return to_u64(q_binomial(n, d, q)); }

std::vector<CheckEntry> identity_checks(const RunConfig& config, int n, std::uint32_t q) {
  CheckList list;
  const json base = {{"n", n}, {"q", q}};
  auto with = [&](json extra) {
    json p = base;
    for (auto it = extra.begin(); it != extra.end(); ++it) p[it.key()] = it.value();
    return p;
  };
  if (largest_level(n, q) > BigInt(static_cast<unsigned long>(config.max_subspaces_per_dim))) {
    list.skip("identities", base, "resource cap: subspace level exceeds max_subspaces_per_dim");
    return list.take();
  }
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= i; ++j) {
      for (int k = 0; k <= j; ++k) {
        list.run("kantor_product", with({{"i", i}, {"j", j}, {"k", k}}),
                 [&] { return verify_kantor_product(n, q, i, j, k); });
      }
    }
  }
  for (int k = 0; k <= n; ++k) {
    for (int i = k; i <= n; ++i) {
      for (int j = i; j <= n; ++j) {
        list.run("triple_product", with({{"i", i}, {"j", j}, {"k", k}}),
                 [&] { return verify_triple_product(n, q, i, j, k); });
      }
    }
  }
  for (int k = 0; 2 * k <= n; ++k) {
    for (int i = k; i <= n - k; ++i) {
      list.run("rank", with({{"i", i}, {"k", k}}), [&] {
        dense_guard(level_count(n, q, i), level_count(n, q, k));
        const std::size_t rank = rank_check(n, q, i, k);
        const BigInt expected = q_binomial(n, k, q);
        CheckResult r;
        if (BigInt(static_cast<unsigned long>(rank)) != expected) {
          r.pass = false;
          r.witness = "rank " + std::to_string(rank) + " expected " + to_string(expected);
        }
        return r;
      });
    }
  }
  for (int k = 1; 2 * k <= n; ++k) {
    list.run("annihilation", with({{"k", k}}), [&] {
      dense_guard(level_count(n, q, k - 1), level_count(n, q, k));
      dense_guard(level_count(n, q, n / 2), level_count(n, q, k));
      return verify_annihilation(n, q, k);
    });
  }
  for (int i = 0; i <= n; ++i) {
    list.run("decomposition", with({{"i", i}}), [&] {
      dense_guard(level_count(n, q, i), level_count(n, q, i));
      dense_guard(level_count(n, q, n / 2), level_count(n, q, n / 2));
      return verify_decomposition(n, q, i);
    });
  }
  list.run("weight_ratio", base, [&] { return verify_weight_ratio(n, q); });
  list.run("weight_partition", base, [&] { return verify_weight_partition(n, q); });
  for (int k = 0; k <= n - 3; ++k) {
    if (!config.k_selection.empty() &&
        std::find(config.k_selection.begin(), config.k_selection.end(), k) == config.k_selection.end()) {
      continue;
    }
    list.run("laplacian_structure", with({{"k", k}}),
             [&] { return verify_laplacian_structure(assemble_laplacian(n, q, k)); });
  }
  return list.take();
}

CheckResult multiplicity_equals(int n, std::uint32_t q, const Rational& x, const BigInt& expected,
                                bool at_least) {
  const BigInt m = exact_eigenvalue_multiplicity(n, q, x);
  CheckResult r;
  if (at_least ? m < expected : m != expected) {
    r.pass = false;
    r.witness = "eigenvalue " + to_string(x) + " has multiplicity " + to_string(m) +
                (at_least ? ", expected at least " : ", expected ") + to_string(expected);
  }
  return r;
}

std::vector<CheckEntry> block_checks(const RunConfig& config, int n, std::uint32_t q) {
  CheckList list;
  const json base = {{"n", n}, {"q", q}};
  const std::size_t vertices = vertex_count(n, q);
  if (vertices <= kConjugationCap) {
    list.run("block_conjugation", base, [&] { return verify_conjugation_literal(n, q); });
  } else {
    list.skip("block_conjugation", base,
              "resource cap: " + std::to_string(vertices) + " vertices exceeds exact conjugation cap " +
                  std::to_string(kConjugationCap));
  }
  if (vertices <= config.max_vertices_numeric) {
    list.run("reconciliation", base, [&] {
      const auto rec = reconcile(n, q, kReconcileTol, config.cluster_tol, config.max_vertices_numeric, 0);
      CheckResult r;
      r.pass = rec.pass;
      for (const auto& d : rec.diff) r.witness += (r.witness.empty() ? "" : "; ") + d;
      return r;
    });
  } else {
    list.skip("reconciliation", base,
              "resource cap: " + std::to_string(vertices) + " vertices exceeds max_numeric " +
                  std::to_string(config.max_vertices_numeric));
  }
  list.run("zero_multiplicity", base, [&] { return multiplicity_equals(n, q, 0, 1, false); });
  list.run("top_multiplicity", base, [&] {
    return multiplicity_equals(n, q, n - 1, static_cast<unsigned long>(n - 2), false);
  });
  if (n % 2 == 0) {
    list.run("middle_multiplicity", base, [&] {
      return multiplicity_equals(n, q, n - 2, q_binomial(n, n / 2, q) - q_binomial(n, n / 2 - 1, q), true);
    });
  }
  list.run("distinct_bound", base, [&] {
    const auto d = distinct_count(n, q);
    CheckResult r;
    if (d.count > d.bound) {
      r.pass = false;
      r.witness = std::to_string(d.count) + " distinct eigenvalues exceed " + std::to_string(d.bound);
    }
    return r;
  });
  return list.take();
}

double choose_C(const RunConfig& config, int n) {
  return config.C ? *config.C : calibrate_C(n, config.prime_list);
}

std::vector<CheckEntry> asymptotic_checks(const RunConfig& config, int n) {
  CheckList list;
  const json base = {{"n", n}};
  const double C = choose_C(config, n);
  std::optional<std::uint32_t> q0;
  list.run("containment", {{"n", n}, {"C", C}}, [&] {
    const auto rep = verify_containment(n, config.prime_list, C);
    q0 = rep.q0;
    CheckResult r;
    if (!rep.q0) {
      r.pass = false;
      r.witness = "containment fails at the largest listed prime " +
                  std::to_string(config.prime_list.back());
    }
    return r;
  });
  for (int k = 1; 2 * k <= n - 1; ++k) {
    if (!config.k_selection.empty() &&
        std::find(config.k_selection.begin(), config.k_selection.end(), k) == config.k_selection.end()) {
      continue;
    }
    const json params = {{"n", n}, {"k", k}};
    if (config.prime_list.size() < 3) {
      list.skip("convergence", params, "needs at least three primes");
    } else {
      list.run("convergence", params, [&] {
        const auto t = convergence_table(n, k, config.prime_list, C);
        CheckResult r;
        if (!t.non_increasing_tail) {
          r.pass = false;
          r.witness = "scaled residual increases over the last three primes";
        } else if (!(t.fitted_exponent >= t.required_exponent)) {
          r.pass = false;
          r.witness = "fitted exponent " + decimal(t.fitted_exponent) + " below " + decimal(t.required_exponent);
        }
        return r;
      });
    }
    list.run("charpoly_coefficients", params, [&] {
      const auto c = charpoly_coefficient_check(n, k, config.prime_list);
      CheckResult r;
      r.pass = c.pass;
      if (!c.pass) {
        r.witness = std::string("trace_zero=") + (c.trace_zero ? "1" : "0") +
                    " signs=" + (c.signs_at_largest ? "1" : "0");
      }
      return r;
    });
  }
  auto out = list.take();
  if (!out.empty() && q0) out.front().record["q0"] = *q0;
  return out;
}

std::vector<CheckEntry> global_asymptotic_checks() {
  CheckList list;
  for (int m = 2; m <= 12; ++m) {
    list.run("fibo_roots", {{"m", m}}, [m] {
      const auto p = fibo_poly(m);
      const auto roots = fibo_roots_closed_form(m);
      CheckResult r;
      if (static_cast<int>(roots.size()) != m) {
        r.pass = false;
        r.witness = std::to_string(roots.size()) + " closed-form roots for degree " + std::to_string(m);
        return r;
      }
      for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
        if (!(roots[i].value < roots[i + 1].value)) {
          r.pass = false;
          r.witness = "roots not distinct at " + roots[i].description;
          return r;
        }
      }
      for (const auto& root : roots) {
        if (abs(evaluate(p.f, root.value)) > HighPrecision("1e-10")) {
          r.pass = false;
          r.witness = "F_m(" + root.description + ") = " + hp_decimal(evaluate(p.f, root.value));
          return r;
        }
      }
      return r;
    });
  }
  for (int m = 1; m <= 8; ++m) {
    for (int l = 0; l <= m; ++l) {
      if (l == m - 1) continue;
      list.run("perm_counts", {{"m", m}, {"l", l}}, [m, l] {
        const auto closed = perm_counts(m, l);
        const auto brute = perm_counts_exhaustive(m, l);
        CheckResult r;
        if (closed.min_excess != brute.min_excess || closed.extremal_count != brute.extremal_count) {
          r.pass = false;
          r.witness = "closed form (" + std::to_string(closed.min_excess) + ", " +
                      to_string(closed.extremal_count) + ") vs scan (" + std::to_string(brute.min_excess) +
                      ", " + to_string(brute.extremal_count) + ")";
        }
        return r;
      });
    }
  }
  return list.take();
}

json config_snapshot(const RunConfig& c) {
  json j;
  j["n"] = c.n_list;
  j["q"] = c.prime_list;
  j["k"] = c.k_selection;
  j["max_numeric"] = c.max_vertices_numeric;
  j["max_subspaces"] = c.max_subspaces_per_dim;
  j["cluster_tol"] = c.cluster_tol;
  j["precision"] = c.root_precision;
  j["out_dir"] = c.out_dir.string();
  j["format"] = c.formats;
  j["C"] = c.C ? json(*c.C) : json(nullptr);
  j["source"] = c.source;
  j["suite"] = c.suite;
  j["jobs"] = c.jobs;
  return j;
}

// ---- asymptotics ----------------------------------------------------------

json interval_json(const IntervalOutcome& o) {
  json j;
  j["k"] = o.prediction.k;
  j["zeta"] = o.prediction.zeta_description();
  j["center"] = hp_decimal(o.prediction.center);
  j["radius"] = hp_decimal(o.prediction.radius);
  j["lo"] = hp_decimal(o.prediction.lo());
  j["hi"] = hp_decimal(o.prediction.hi());
  j["multiplicity"] = to_string(o.prediction.multiplicity);
  j["captured"] = o.captured;
  if (o.captured == 1) {
    j["captured_block"] = o.captured_block;
    j["eigenvalue"] = decimal(o.eigenvalue);
  }
  j["ambiguous"] = o.ambiguous;
  return j;
}

json containment_json(const ContainmentReport& rep) {
  json j;
  j["n"] = rep.n;
  j["C"] = rep.C;
  j["q0"] = rep.q0 ? json(*rep.q0) : json(nullptr);
  json per = json::array();
  for (const auto& a : rep.per_q) {
    json row;
    row["q"] = a.q;
    row["pass"] = a.pass;
    row["disjoint"] = a.disjoint;
    row["exactly_one"] = a.exactly_one;
    row["labels"] = a.labels;
    row["conservation"] = a.conservation;
    json iv = json::array();
    for (const auto& o : a.intervals) iv.push_back(interval_json(o));
    row["intervals"] = std::move(iv);
    per.push_back(std::move(row));
  }
  j["per_q"] = std::move(per);
  return j;
}

}  // namespace

// ---- config ---------------------------------------------------------------

bool RunConfig::wants(const std::string& format) const {
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

void RunConfig::validate() const {
  for (auto q : prime_list) {
    if (!is_prime(q)) throw UsageError("q = " + std::to_string(q) + " is not prime");
  }
  for (int n : n_list) {
    if (n < 1) throw UsageError("n must be positive");
  }
  if (max_vertices_numeric == 0 || max_subspaces_per_dim == 0) throw UsageError("caps must be positive");
  for (double t : {cluster_tol, root_precision}) {
    if (!(t > 0 && t <= 1e-3)) throw UsageError("tolerances must lie in (0, 1e-3]");
  }
  if (formats.empty()) throw UsageError("at least one output format is required");
  for (const auto& f : formats) {
    if (f != "json" && f != "csv") throw UsageError("unknown format: " + f);
  }
  if (source != "blocks" && source != "numeric" && source != "both") {
    throw UsageError("unknown source: " + source);
  }
  if (suite != "identities" && suite != "blocks" && suite != "asymptotics" && suite != "all") {
    throw UsageError("unknown suite: " + suite);
  }
  if (C && !(*C > 0)) throw UsageError("C must be positive");
  if (jobs == 0) throw UsageError("jobs must be positive");
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string line;
  int number = 0;
  while (std::getline(ss, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(number) + ": missing '='");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw UsageError("config line " + std::to_string(number) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "n") {
    c.n_list.clear();
    for (long v : int_list(key, value)) c.n_list.push_back(static_cast<int>(v));
  } else if (key == "q") {
    c.prime_list.clear();
    for (long v : int_list(key, value)) {
      if (v < 2 || v > UINT32_MAX) throw UsageError("q out of range: " + std::to_string(v));
      c.prime_list.push_back(static_cast<std::uint32_t>(v));
    }
  } else if (key == "k") {
    c.k_selection.clear();
    for (long v : int_list(key, value)) c.k_selection.push_back(static_cast<int>(v));
  } else if (key == "source") {
    c.source = value;
  } else if (key == "suite") {
    c.suite = value;
  } else if (key == "C") {
    c.C = parse_double(key, value);
  } else if (key == "out_dir") {
    c.out_dir = value;
  } else if (key == "format") {
    c.formats = split_list(value);
  } else if (key == "max_numeric") {
    const long v = parse_long(key, value);
    if (v <= 0) throw UsageError("max_numeric must be positive");
    c.max_vertices_numeric = static_cast<std::size_t>(v);
  } else if (key == "max_subspaces") {
    const long v = parse_long(key, value);
    if (v <= 0) throw UsageError("max_subspaces must be positive");
    c.max_subspaces_per_dim = static_cast<std::uint64_t>(v);
  } else if (key == "cluster_tol") {
    c.cluster_tol = parse_double(key, value);
  } else if (key == "precision") {
    c.root_precision = parse_double(key, value);
  } else if (key == "jobs") {
    const long v = parse_long(key, value);
    if (v <= 0) throw UsageError("jobs must be positive");
    c.jobs = static_cast<unsigned>(v);
  } else {
    throw UsageError("unknown setting: " + key);
  }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  for (const auto& [k, v] : parse_config_text(ss.str())) apply_setting(config, k, v);
}

// ---- commands -------------------------------------------------------------

int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err) {
  require_n_at_least(config, 3, "spectrum");
  require_primes(config, "spectrum");
  std::vector<std::function<SpectrumOutcome()>> tasks;
  for (int n : config.n_list) {
    for (auto q : config.prime_list) {
      tasks.push_back([&config, n, q]() -> SpectrumOutcome {
        try {
          return spectrum_job(config, n, q);
        } catch (const ResourceError& e) {
          SpectrumOutcome o;
          o.exit_code = kExitResource;
          o.summary = "n=" + std::to_string(n) + " q=" + std::to_string(q) + " refused: " + e.what();
          return o;
        }
      });
    }
  }
  const auto results = run_pool(tasks, config.jobs);
  int code = kExitOk;
  std::vector<std::string> artifacts;
  for (const auto& r : results) {
    for (const auto& [name, contents] : r.files) write_artifact(config, name, contents, artifacts);
    (r.exit_code == kExitResource ? err : out) << r.summary << "\n";
    if (r.exit_code == kExitCheckFailure) code = kExitCheckFailure;
    else if (r.exit_code == kExitResource && code == kExitOk) code = kExitResource;
  }
  return code;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream&) {
  const bool all = config.suite == "all";
  const bool identities = all || config.suite == "identities";
  const bool blocks = all || config.suite == "blocks";
  const bool asymptotics = all || config.suite == "asymptotics";
  require_n_at_least(config, identities && !blocks && !asymptotics ? 1 : 3, "verify");
  require_primes(config, "verify");

  const auto start = std::chrono::steady_clock::now();
  std::vector<std::function<std::vector<CheckEntry>()>> tasks;
  for (int n : config.n_list) {
    for (auto q : config.prime_list) {
      if (identities) tasks.push_back([&config, n, q] { return identity_checks(config, n, q); });
      if (blocks) tasks.push_back([&config, n, q] { return block_checks(config, n, q); });
    }
    if (asymptotics) tasks.push_back([&config, n] { return asymptotic_checks(config, n); });
  }
  if (asymptotics) tasks.push_back([] { return global_asymptotic_checks(); });
  const auto results = run_pool(tasks, config.jobs);

  json checks = json::array();
  json timings = json::array();
  std::size_t passed = 0, failed = 0, skipped = 0;
  for (const auto& group : results) {
    for (const auto& e : group) {
      const auto status = e.record["status"].get<std::string>();
      if (status == "pass") ++passed;
      else if (status == "fail") ++failed;
      else ++skipped;
      if (status == "fail") {
        out << "FAIL " << e.record["check"].get<std::string>() << " " << param_string(e.record["params"])
            << ": " << e.record["witness"].get<std::string>() << "\n";
      }
      checks.push_back(e.record);
      timings.push_back({{"check", e.record["check"]}, {"params", e.record["params"]}, {"seconds", e.seconds}});
    }
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto manifest_path = config.out_dir / "manifest.json";
  json manifest;
  manifest["tool"] = "flagspec";
  manifest["version"] = FLAGSPEC_VERSION;
  manifest["config"] = config_snapshot(config);
  manifest["summary"] = {{"pass", passed}, {"fail", failed}, {"skipped", skipped}};
  manifest["checks"] = std::move(checks);
  manifest["artifacts"] = json::array({manifest_path.string()});
  manifest["timings"] = {{"total_seconds", total}, {"checks", std::move(timings)}};
  write_file_atomic(manifest_path, manifest.dump(2) + "\n");
  out << passed << " passed, " << failed << " failed, " << skipped << " skipped; manifest "
      << manifest_path.string() << "\n";
  return failed == 0 ? kExitOk : kExitCheckFailure;
}

int cmd_asymptotics(const RunConfig& config, std::ostream& out, std::ostream&) {
  require_n_at_least(config, 3, "asymptotics");
  require_primes(config, "asymptotics");
  struct Outcome {
    std::vector<std::pair<std::string, std::string>> files;
    std::string summary;
  };
  std::vector<std::function<Outcome()>> tasks;
  for (int n : config.n_list) {
    tasks.push_back([&config, n] {
      Outcome o;
      const double C = choose_C(config, n);
      const auto rep = verify_containment(n, config.prime_list, C);
      json j = containment_json(rep);
      j["C_source"] = config.C ? "given" : "calibrated";
      std::string csv = csv_line({"n", "k", "zeta_description", "q", "eigenvalue", "center", "residual",
                                  "radius", "pass"});
      json conv = json::array();
      for (int k = 1; 2 * k <= n - 1; ++k) {
        if (!config.k_selection.empty() &&
            std::find(config.k_selection.begin(), config.k_selection.end(), k) == config.k_selection.end()) {
          continue;
        }
        const auto t = convergence_table(n, k, config.prime_list, C);
        std::map<std::string, std::string> series;
        std::vector<std::string> series_order;
        for (const auto& r : t.rows) {
          csv += csv_line({std::to_string(r.n), std::to_string(r.k), r.zeta_description, std::to_string(r.q),
                           decimal(r.eigenvalue), decimal(r.center), decimal(r.residual), decimal(r.radius),
                           r.pass ? "true" : "false"});
          if (!series.count(r.zeta_description)) {
            series_order.push_back(r.zeta_description);
            series[r.zeta_description] = "# n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                         " zeta=" + r.zeta_description + "\n# q residual\n";
          }
          series[r.zeta_description] += std::to_string(r.q) + " " + decimal(r.residual) + "\n";
        }
        for (std::size_t s = 0; s < series_order.size(); ++s) {
          o.files.emplace_back("series/residual_n" + std::to_string(n) + "_k" + std::to_string(k) + "_" +
                                   std::to_string(s) + ".dat",
                               series[series_order[s]]);
        }
        json c;
        c["k"] = k;
        c["fitted_exponent"] = finite_or_null(t.fitted_exponent);
        c["required_exponent"] = t.required_exponent;
        json per = json::array();
        for (const auto& [z, e] : t.per_zeta_exponent) per.push_back({{"zeta", z}, {"exponent", finite_or_null(e)}});
        c["per_zeta_exponent"] = std::move(per);
        c["rational_exponent"] = t.rational_exponent ? finite_or_null(*t.rational_exponent) : json(nullptr);
        c["non_increasing_tail"] = t.non_increasing_tail;
        conv.push_back(std::move(c));
      }
      j["convergence"] = std::move(conv);
      const std::string stem = "n" + std::to_string(n);
      if (config.wants("json")) o.files.emplace_back("containment_" + stem + ".json", j.dump(2) + "\n");
      if (config.wants("csv")) o.files.emplace_back("asymptotics_" + stem + ".csv", csv);
      std::ostringstream s;
      s << "n=" << n << " C=" << decimal(C) << " q0=" << (rep.q0 ? std::to_string(*rep.q0) : "none");
      for (const auto& a : rep.per_q) s << " q" << a.q << ":" << (a.pass ? "pass" : "fail");
      o.summary = s.str();
      return o;
    });
  }
  std::vector<std::string> artifacts;
  for (const auto& r : run_pool(tasks, config.jobs)) {
    for (const auto& [name, contents] : r.files) write_artifact(config, name, contents, artifacts);
    out << r.summary << "\n";
  }
  return kExitOk;
}

int cmd_distinct(const RunConfig& config, std::ostream& out, std::ostream&) {
  require_n_at_least(config, 3, "distinct");
  require_primes(config, "distinct");
  std::vector<std::function<DistinctCount()>> tasks;
  for (int n : config.n_list) {
    for (auto q : config.prime_list) tasks.push_back([n, q] { return distinct_count(n, q); });
  }
  const auto counts = run_pool(tasks, config.jobs);
  json rows = json::array();
  json firsts = json::array();
  std::string csv = csv_line({"n", "q", "distinct", "bound", "equal"});
  bool ok = true;
  std::size_t idx = 0;
  for (int n : config.n_list) {
    std::optional<std::uint32_t> first;
    for (auto q : config.prime_list) {
      const auto& d = counts[idx++];
      const bool equal = d.count == d.bound;
      if (equal && !first) first = q;
      if (d.count > d.bound) ok = false;
      rows.push_back({{"n", n}, {"q", q}, {"distinct", d.count}, {"bound", d.bound}, {"equal", equal}});
      csv += csv_line({std::to_string(n), std::to_string(q), std::to_string(d.count), std::to_string(d.bound),
                       equal ? "true" : "false"});
      out << "n=" << n << " q=" << q << " distinct=" << d.count << " bound=" << d.bound << "\n";
    }
    firsts.push_back({{"n", n}, {"first_equality_q", first ? json(*first) : json(nullptr)}});
    out << "n=" << n << " first equality at q=" << (first ? std::to_string(*first) : "none") << "\n";
  }
  std::vector<std::string> artifacts;
  if (config.wants("json")) {
    json j;
    j["rows"] = std::move(rows);
    j["first_equality"] = std::move(firsts);
    write_artifact(config, "distinct.json", j.dump(2) + "\n", artifacts);
  }
  if (config.wants("csv")) write_artifact(config, "distinct.csv", csv, artifacts);
  return ok ? kExitOk : kExitCheckFailure;
}

int cmd_subspaces(const RunConfig& config, std::ostream& out, std::ostream& err) {
  require_n_at_least(config, 1, "subspaces");
  require_primes(config, "subspaces");
  std::vector<std::string> artifacts;
  int code = kExitOk;
  for (int n : config.n_list) {
    for (auto q : config.prime_list) {
      std::vector<int> dims = config.k_selection;
      if (dims.empty()) {
        for (int d = 0; d <= n; ++d) dims.push_back(d);
      }
      for (int d : dims) {
        if (d < 0 || d > n) throw UsageError("subspace dimension " + std::to_string(d) + " outside [0, n]");
        std::vector<Subspace> subs;
        try {
          subs = enumerate_subspaces(n, q, d, config.max_subspaces_per_dim);
        } catch (const ResourceError& e) {
          err << "n=" << n << " q=" << q << " d=" << d << " refused: " << e.what() << "\n";
          code = kExitResource;
          continue;
        }
        const std::string stem = "subspaces_n" + std::to_string(n) + "_q" + std::to_string(q) + "_d" +
                                 std::to_string(d);
        auto rows_of = [&](const Subspace& s) {
          std::vector<std::string> rows;
          for (int r = 0; r < s.dim(); ++r) {
            // Digits are packed when every entry is a single digit.
            const char* sep = q > 10 ? " " : "";
            std::string row;
            for (auto v : s.row(r)) row += (row.empty() ? "" : sep) + std::to_string(v);
            rows.push_back(row);
          }
          return rows;
        };
        if (config.wants("json")) {
          json j;
          j["n"] = n;
          j["q"] = q;
          j["d"] = d;
          j["count"] = subs.size();
          json list = json::array();
          for (const auto& s : subs) list.push_back(rows_of(s));
          j["subspaces"] = std::move(list);
          write_artifact(config, stem + ".json", j.dump() + "\n", artifacts);
        }
        if (config.wants("csv")) {
          std::string csv = csv_line({"index", "rref"});
          for (std::size_t i = 0; i < subs.size(); ++i) {
            std::string joined;
            for (const auto& r : rows_of(subs[i])) joined += (joined.empty() ? "" : ";") + r;
            csv += csv_line({std::to_string(i), joined});
          }
          write_artifact(config, stem + ".csv", csv, artifacts);
        }
        out << "n=" << n << " q=" << q << " d=" << d << " count=" << subs.size() << "\n";
      }
    }
  }
  return code;
}

int cmd_qbinom(const RunConfig& config, std::ostream& out, std::ostream&) {
  if (config.n_list.empty() || config.k_selection.empty() || config.prime_list.empty()) {
    throw UsageError("qbinom needs --n (a), --k (b) and --q");
  }
  for (int a : config.n_list) {
    for (int b : config.k_selection) {
      for (auto q : config.prime_list) {
        out << "(" << a << " choose " << b << ")_" << q << " = " << to_string(q_binomial(a, b, q)) << "\n";
      }
    }
  }
  return kExitOk;
}

}  // namespace flagspec
