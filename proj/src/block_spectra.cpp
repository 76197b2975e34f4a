#include "flagspec/block_spectra.hpp"

#include "flagspec/enumeration.hpp"
#include "flagspec/errors.hpp"
#include "flagspec/qcombinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

namespace flagspec {

BlockMatrix build_block(int n, std::uint32_t q, int k) {
  if (n < 3 || k < 0 || 2 * k > n) {
    throw DomainError("block needs n >= 3 and 0 <= k <= n/2, got n=" + std::to_string(n) +
                      " k=" + std::to_string(k));
  }
  PrimeField field(q);
  BlockMatrix b;
  b.n = n;
  b.q = q;
  b.k = k;
  if (k == 0) {
    b.first_index = 1;
    b.entries = ExactMatrix(n - 1, n - 1);
    for (int i = 0; i < n - 1; ++i) {
      for (int j = 0; j < n - 1; ++j) b.entries(i, j) = i == j ? n - 2 : -1;
    }
    return b;
  }
  b.first_index = k;
  const int size = n - 2 * k + 1;
  b.entries = ExactMatrix(size, size);
  for (int i = k; i <= n - k; ++i) {
    for (int j = k; j <= n - k; ++j) {
      Rational v;
      if (i == j) {
        v = n - 2;
      } else if (i < j) {
        v = -Rational(c_coefficient(i, j, k, n, q)) / Rational(q_binomial(n - i, j - i, q));
      } else {
        v = -Rational(q_binomial(i - k, j - k, q)) / Rational(q_binomial(i, j, q));
      }
      b.entries(i - k, j - k) = v;
    }
  }
  return b;
}

BigInt block_multiplicity(int n, std::uint32_t q, int k) {
  return q_binomial(n, k, q) - q_binomial(n, k - 1, q);
}

Polynomial char_poly_exact(const BlockMatrix& m) {
  if (m.entries.rows() > 64) throw ResourceError("block characteristic polynomial above 64 rows");
  return char_poly(m.entries);
}

int root_multiplicity(const Polynomial& p, const Rational& x) {
  if (p.is_zero()) throw DomainError("root multiplicity in the zero polynomial");
  int mult = 0;
  Polynomial cur = p;
  const Polynomial lin = Polynomial::linear(x);
  while (cur.degree() >= 1) {
    auto [quo, rem] = cur.divmod(lin);
    if (!rem.is_zero()) break;
    cur = std::move(quo);
    ++mult;
  }
  return mult;
}

SpectrumReport spectrum_via_blocks(int n, std::uint32_t q, double precision) {
  SpectrumReport rep;
  rep.n = n;
  rep.q = q;
  rep.source = "blocks";
  rep.precision = precision;
  for (int k = 0; 2 * k <= n; ++k) {
    const BigInt mult = block_multiplicity(n, q, k);
    for (const auto& root : real_roots(char_poly_exact(build_block(n, q, k)), precision)) {
      Eigenvalue e;
      e.value = root.value;
      e.lo = root.lo;
      e.hi = root.hi;
      e.multiplicity = mult * root.multiplicity;
      e.block_k = k;
      rep.eigenvalues.push_back(std::move(e));
    }
  }
  std::stable_sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
                   [](const Eigenvalue& a, const Eigenvalue& b) { return a.value < b.value; });
  return rep;
}

BigInt exact_eigenvalue_multiplicity(int n, std::uint32_t q, const Rational& x) {
  BigInt total = 0;
  for (int k = 0; 2 * k <= n; ++k) {
    total += block_multiplicity(n, q, k) * root_multiplicity(char_poly_exact(build_block(n, q, k)), x);
  }
  return total;
}

SparseRationalMatrix block_diagonal_form(const BlockBasis& basis) {
  std::vector<BlockMatrix> blocks;
  for (int k = 0; 2 * k <= basis.n; ++k) blocks.push_back(build_block(basis.n, basis.q, k));
  std::vector<SparseRationalMatrix::Triplet> t;
  const auto& cols = basis.columns;
  for (std::size_t start = 0; start < cols.size();) {
    std::size_t end = start;
    while (end < cols.size() && cols[end].k == cols[start].k && cols[end].v == cols[start].v) ++end;
    const auto& b = blocks[cols[start].k];
    for (std::size_t r = start; r < end; ++r) {
      for (std::size_t c = start; c < end; ++c) {
        const Rational& v = b.entries(cols[r].i - b.first_index, cols[c].i - b.first_index);
        if (v != 0) t.push_back({r, c, v});
      }
    }
    start = end;
  }
  return SparseRationalMatrix::from_triplets(cols.size(), cols.size(), std::move(t));
}

namespace {

std::string describe_difference(const SparseRationalMatrix& a, const SparseRationalMatrix& b,
                                const std::string& what) {
  auto d = first_difference(a, b);
  if (!d) return {};
  std::ostringstream s;
  s << what << " differs at (" << d->first << "," << d->second << "): "
    << to_string(a.at(d->first, d->second)) << " vs " << to_string(b.at(d->first, d->second));
  return s.str();
}

}  // namespace

CheckResult verify_conjugation(int n, std::uint32_t q) {
  const auto lap = assemble_laplacian(n, q, 0);
  const auto basis = build_block_basis(n, q);
  CheckResult r;
  if (basis.matrix.cols() != lap.size()) {
    r.pass = false;
    r.witness = "block basis has " + std::to_string(basis.matrix.cols()) + " columns for " +
                std::to_string(lap.size()) + " vertices";
    return r;
  }
  const auto d = block_diagonal_form(basis);
  const auto lhs = lap.entries * basis.matrix;
  const auto rhs = basis.matrix * d;
  if (auto w = describe_difference(lhs, rhs, "Delta_0 B vs B D"); !w.empty()) {
    r.pass = false;
    r.witness = w;
    return r;
  }
  if (const auto rank = block_basis_rank(basis); rank != lap.size()) {
    r.pass = false;
    r.witness = "block basis rank " + std::to_string(rank) + " < " + std::to_string(lap.size());
  }
  return r;
}

CheckResult verify_conjugation_literal(int n, std::uint32_t q) {
  const auto lap = assemble_laplacian(n, q, 0);
  const auto basis = build_block_basis(n, q);
  const auto lattice = SubspaceLattice::get(n, q);
  const auto d = block_diagonal_form(basis);
  const auto m = lap.entries * basis.matrix;  // Delta_0 B
  const std::size_t total = basis.columns.size();
  std::vector<SparseRationalMatrix::Triplet> x;
  for (int i = 1; i <= n - 1; ++i) {
    std::vector<std::size_t> label_cols;
    for (std::size_t c = 0; c < total; ++c) {
      if (basis.columns[c].i == i) label_cols.push_back(c);
    }
    const std::size_t off = lattice->vertex_offset(i), size = lattice->level_size(i);
    if (label_cols.size() != size) {
      return {false, "dimension " + std::to_string(i) + " has " + std::to_string(label_cols.size()) +
                         " basis columns for " + std::to_string(size) + " subspaces"};
    }
    ExactMatrix bi(size, size), mi(size, total);
    std::vector<std::size_t> local(total, SIZE_MAX);
    for (std::size_t c = 0; c < size; ++c) local[label_cols[c]] = c;
    for (const auto& t : basis.matrix.triplets()) {
      if (t.row >= off && t.row < off + size) bi(t.row - off, local[t.col]) = t.value;
    }
    for (const auto& t : m.triplets()) {
      if (t.row >= off && t.row < off + size) mi(t.row - off, t.col) = t.value;
    }
    ExactMatrix xi;
    try {
      xi = bi.solve(mi);
    } catch (const IntegrityError&) {
      return {false, "block basis is singular in dimension " + std::to_string(i)};
    }
    for (std::size_t r = 0; r < size; ++r) {
      for (std::size_t c = 0; c < total; ++c) {
        if (xi(r, c) != 0) x.push_back({label_cols[r], c, xi(r, c)});
      }
    }
  }
  const auto conj = SparseRationalMatrix::from_triplets(total, total, std::move(x));
  CheckResult r;
  if (auto w = describe_difference(conj, d, "B^-1 Delta_0 B vs blockdiag"); !w.empty()) {
    r.pass = false;
    r.witness = w;
  }
  return r;
}

SpectrumReport merge_clusters(const SpectrumReport& r, double tol) {
  SpectrumReport out = r;
  out.eigenvalues.clear();
  out.cluster_tol = tol;
  auto sorted = r.eigenvalues;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Eigenvalue& a, const Eigenvalue& b) { return a.value < b.value; });
  double weighted = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& e = sorted[i];
    if (i == 0 || e.value - sorted[i - 1].value >= tol) {
      if (i > 0) out.eigenvalues.back().value = weighted / out.eigenvalues.back().multiplicity.get_d();
      out.eigenvalues.push_back(e);
      weighted = e.value * e.multiplicity.get_d();
      continue;
    }
    auto& c = out.eigenvalues.back();
    c.multiplicity += e.multiplicity;
    c.lo = std::min(c.lo, e.lo);
    c.hi = std::max(c.hi, e.hi);
    if (c.block_k != e.block_k) c.block_k = -1;
    weighted += e.value * e.multiplicity.get_d();
  }
  if (!out.eigenvalues.empty()) {
    out.eigenvalues.back().value = weighted / out.eigenvalues.back().multiplicity.get_d();
  }
  return out;
}

ReconcileReport reconcile_spectra(const SpectrumReport& block_spectrum,
                                  const SpectrumReport& numeric, double tol, double cluster_tol) {
  ReconcileReport rep;
  const int n = numeric.n;
  const std::uint32_t q = numeric.q;
  const auto blocks = merge_clusters(block_spectrum, cluster_tol);
  rep.block_clusters = blocks.eigenvalues.size();
  rep.numeric_clusters = numeric.eigenvalues.size();
  rep.block_total = blocks.total_multiplicity();
  rep.numeric_total = numeric.total_multiplicity();
  rep.expected_total = 0;
  for (int i = 1; i <= n - 1; ++i) rep.expected_total += q_binomial(n, i, q);

  const auto& a = blocks.eigenvalues;
  const auto& b = numeric.eigenvalues;
  // Greedy nearest pairing, block clusters in ascending order.
  std::vector<bool> used(b.size(), false);
  std::vector<std::size_t> bad_a;
  bool greedy_ok = true;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t best = b.size();
    double best_d = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(a[i].value - b[j].value);
      if (best == b.size() || dist < best_d) {
        best = j;
        best_d = dist;
      }
    }
    if (best == b.size() || best_d > tol || a[i].multiplicity != b[best].multiplicity) {
      greedy_ok = false;
      bad_a.push_back(i);
      continue;
    }
    used[best] = true;
    pairs.emplace_back(i, best);
  }
  std::vector<std::size_t> bad_b;
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (!used[j]) bad_b.push_back(j);
  }
  if (!greedy_ok || !bad_b.empty()) {
    // In one dimension, pairing the leftovers in sorted order minimises the largest distance.
    rep.used_fallback = true;
    for (std::size_t t = 0; t < std::max(bad_a.size(), bad_b.size()); ++t) {
      if (t < bad_a.size() && t < bad_b.size()) {
        const auto& x = a[bad_a[t]];
        const auto& y = b[bad_b[t]];
        const double dist = std::abs(x.value - y.value);
        if (dist <= tol && x.multiplicity == y.multiplicity) {
          pairs.emplace_back(bad_a[t], bad_b[t]);
          continue;
        }
        std::ostringstream s;
        s.precision(15);
        s << "block " << x.value << " (x" << x.multiplicity.get_str() << ") vs numeric " << y.value
          << " (x" << y.multiplicity.get_str() << ")";
        rep.diff.push_back(s.str());
      } else if (t < bad_a.size()) {
        std::ostringstream s;
        s.precision(15);
        s << "unmatched block " << a[bad_a[t]].value << " (x" << a[bad_a[t]].multiplicity.get_str() << ")";
        rep.diff.push_back(s.str());
      } else {
        std::ostringstream s;
        s.precision(15);
        s << "unmatched numeric " << b[bad_b[t]].value << " (x" << b[bad_b[t]].multiplicity.get_str() << ")";
        rep.diff.push_back(s.str());
      }
    }
  }
  for (const auto& [i, j] : pairs) rep.max_distance = std::max(rep.max_distance, std::abs(a[i].value - b[j].value));
  if (rep.block_total != rep.expected_total || rep.numeric_total != rep.expected_total) {
    rep.diff.push_back("total multiplicity blocks=" + rep.block_total.get_str() + " numeric=" +
                       rep.numeric_total.get_str() + " expected=" + rep.expected_total.get_str());
  }
  rep.pass = rep.diff.empty();
  return rep;
}

ReconcileReport reconcile(int n, std::uint32_t q, double tol, double cluster_tol,
                          std::size_t numeric_cap, std::size_t conjugation_cap) {
  const auto lap = assemble_laplacian(n, q, 0);
  auto rep = reconcile_spectra(spectrum_via_blocks(n, q), numeric_spectrum(lap, cluster_tol, numeric_cap),
                               tol, cluster_tol);
  if (lap.size() <= conjugation_cap) {
    rep.conjugation = verify_conjugation(n, q);
    if (!rep.conjugation->pass) rep.pass = false;
  }
  return rep;
}

DistinctCount distinct_count(int n, std::uint32_t q) {
  Polynomial product = Polynomial::constant(1);
  for (int k = 0; 2 * k <= n; ++k) {
    product = product * squarefree_part(char_poly_exact(build_block(n, q, k)));
  }
  DistinctCount d;
  d.count = static_cast<std::size_t>(squarefree_part(product).degree());
  d.bound = static_cast<std::size_t>(n * n / 4 + 2);
  return d;
}

}  // namespace flagspec
