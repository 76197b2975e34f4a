#include "flagspec/flag_laplacian.hpp"

#include "flagspec/errors.hpp"
#include "flagspec/qcombinatorics.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace flagspec {

BigInt weight_of_signature(const std::vector<int>& signature, int n, std::uint32_t q) {
  BigInt w = 1;
  int prev = 0;
  for (int d : signature) {
    if (d <= prev || d >= n) throw DomainError("signature must be strictly increasing within [1, n-1]");
    w *= q_factorial(d - prev, q);
    prev = d;
  }
  w *= q_factorial(n - prev, q);
  return w;
}

BigInt weight(const Flag& flag, int n, std::uint32_t q) {
  if (flag.ambient_dim() != n || flag.field_size() != q) {
    throw DomainError("flag does not live in F_q^n for the requested (n, q)");
  }
  return weight_of_signature(flag.signature(), n, q);
}

namespace {

std::vector<std::vector<int>> signatures_of_length(int n, int len) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(len);
  for (int i = 0; i < len; ++i) cur[i] = i + 1;
  if (len > n - 1) return out;
  while (true) {
    out.push_back(cur);
    int i = len - 1;
    while (i >= 0 && cur[i] == n - 1 - (len - 1 - i)) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < len; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::vector<int> drop(const std::vector<int>& v, std::size_t pos) {
  std::vector<int> out;
  out.reserve(v.size() - 1);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i != pos) out.push_back(v[i]);
  }
  return out;
}

FlagIds drop(const FlagIds& v, std::size_t pos) {
  FlagIds out;
  out.reserve(v.size() - 1);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i != pos) out.push_back(v[i]);
  }
  return out;
}

}  // namespace

Flag WeightedComplexSlice::flag(std::size_t index) const {
  const auto& sig = signatures.at(signature_of.at(index));
  const auto& ids = simplices.at(index);
  std::vector<Subspace> chain;
  for (std::size_t t = 0; t < ids.size(); ++t) chain.push_back(lattice->level(sig[t])[ids[t]]);
  return Flag(n, q, std::move(chain));
}

std::size_t WeightedComplexSlice::index_of(const std::vector<int>& signature,
                                           const FlagIds& ids) const {
  auto sit = std::lower_bound(signatures.begin(), signatures.end(), signature);
  if (sit == signatures.end() || *sit != signature) throw DomainError("signature not in slice");
  auto it = index_.find({static_cast<std::size_t>(sit - signatures.begin()), ids});
  if (it == index_.end()) throw DomainError("chain is not a simplex of this slice");
  return it->second;
}

std::size_t WeightedComplexSlice::index_of(const Flag& flag) const {
  FlagIds ids;
  for (const auto& s : flag.chain()) ids.push_back(static_cast<std::uint32_t>(lattice->index_of(s)));
  return index_of(flag.signature(), ids);
}

WeightedComplexSlice complex_slice(int n, std::uint32_t q, int k, std::size_t max_simplices) {
  if (n < 2 || k < 0 || k > n - 2) {
    throw DomainError("simplex dimension " + std::to_string(k) + " outside [0, n-2]");
  }
  PrimeField field(q);
  WeightedComplexSlice s;
  s.n = n;
  s.q = q;
  s.k = k;
  s.signatures = signatures_of_length(n, k + 1);
  const BigInt total_flags = q_factorial(n, q);
  BigInt count = 0;
  for (const auto& sig : s.signatures) count += total_flags / weight_of_signature(sig, n, q);
  if (count > BigInt(std::to_string(max_simplices))) {
    throw ResourceError("refusing to build " + to_string(count) + " simplices of dimension " +
                        std::to_string(k) + " (cap " + std::to_string(max_simplices) + ")");
  }
  s.lattice = SubspaceLattice::get(n, q);
  for (std::size_t si = 0; si < s.signatures.size(); ++si) {
    const BigInt w = weight_of_signature(s.signatures[si], n, q);
    for (auto& ids : enumerate_flag_ids(*s.lattice, s.signatures[si])) {
      s.index_.emplace(std::pair{si, ids}, s.simplices.size());
      s.simplices.push_back(std::move(ids));
      s.signature_of.push_back(si);
      s.weights.push_back(w);
    }
  }
  return s;
}

RemovalDims removal_dims(const std::vector<int>& sig, std::size_t pos, int n) {
  if (pos >= sig.size()) throw DomainError("removal position outside the flag");
  const int below = pos == 0 ? 0 : sig[pos - 1];
  const int above = pos + 1 == sig.size() ? n : sig[pos + 1];
  return {above - below, sig[pos] - below};
}

LaplacianMatrix assemble_laplacian(int n, std::uint32_t q, int k, std::size_t max_simplices) {
  if (n < 3 || k < 0 || k > n - 3) {
    throw DomainError("Laplacian needs n >= 3 and 0 <= k <= n-3, got n=" + std::to_string(n) +
                      " k=" + std::to_string(k));
  }
  LaplacianMatrix l;
  l.n = n;
  l.q = q;
  l.k = k;
  l.slice = complex_slice(n, q, k, max_simplices);
  const auto upper = complex_slice(n, q, k + 1, max_simplices);

  std::vector<SparseRationalMatrix::Triplet> t;
  const Rational diag(n - k - 2);
  for (std::size_t i = 0; i < l.slice.size(); ++i) t.push_back({i, i, diag});
  // Every unordered pair of distinct simplices spanning rho arises from exactly one rho.
  for (std::size_t u = 0; u < upper.size(); ++u) {
    const auto& sig = upper.signatures[upper.signature_of[u]];
    const auto& ids = upper.simplices[u];
    const std::size_t m = sig.size();
    std::vector<std::size_t> face(m);
    std::vector<Rational> inv_binom(m);
    for (std::size_t p = 0; p < m; ++p) {
      face[p] = l.slice.index_of(drop(sig, p), drop(ids, p));
      const auto [r, tt] = removal_dims(sig, p, n);
      inv_binom[p] = Rational(1) / Rational(q_binomial(r, tt, q));
    }
    for (std::size_t pa = 0; pa < m; ++pa) {
      for (std::size_t pb = 0; pb < m; ++pb) {
        if (pa == pb) continue;
        // sigma drops rho[pa], tau drops rho[pb]; rho[pa] is the member of tau outside sigma.
        const bool negative = epsilon(pa, pb) % 2 == 0;
        t.push_back({face[pa], face[pb], negative ? Rational(-inv_binom[pa]) : inv_binom[pa]});
      }
    }
  }
  l.entries = SparseRationalMatrix::from_triplets(l.slice.size(), l.slice.size(), std::move(t));
  return l;
}

SparseIntMatrix coboundary(const WeightedComplexSlice& lower, const WeightedComplexSlice& upper) {
  if (lower.n != upper.n || lower.q != upper.q || upper.k != lower.k + 1) {
    throw DomainError("coboundary needs consecutive slices of the same complex");
  }
  std::vector<SparseIntMatrix::Triplet> t;
  for (std::size_t u = 0; u < upper.size(); ++u) {
    const auto& sig = upper.signatures[upper.signature_of[u]];
    const auto& ids = upper.simplices[u];
    for (std::size_t p = 0; p < sig.size(); ++p) {
      t.push_back({u, lower.index_of(drop(sig, p), drop(ids, p)), p % 2 == 0 ? 1 : -1});
    }
  }
  return SparseIntMatrix::from_triplets(upper.size(), lower.size(), std::move(t));
}

Eigen::MatrixXd symmetrize(const LaplacianMatrix& l) {
  const std::size_t n = l.size();
  std::vector<double> sqrt_w(n);
  for (std::size_t i = 0; i < n; ++i) sqrt_w[i] = std::sqrt(l.slice.weights[i].get_d());
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t p = l.entries.row_begin(r); p < l.entries.row_end(r); ++p) {
      const std::size_t c = l.entries.col_at(p);
      s(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          to_double(l.entries.value_at(p)) * sqrt_w[r] / sqrt_w[c];
    }
  }
  return s;
}

double symmetry_defect(const Eigen::MatrixXd& s) {
  const double scale = s.cwiseAbs().maxCoeff();
  if (scale == 0) return 0;
  return (s - s.transpose()).cwiseAbs().maxCoeff() / scale;
}

std::vector<double> numeric_eigenvalues(const LaplacianMatrix& l, std::size_t cap) {
  if (l.size() > cap) {
    throw ResourceError("dense eigensolve of " + std::to_string(l.size()) +
                        " simplices exceeds cap " + std::to_string(cap));
  }
  Eigen::MatrixXd s = symmetrize(l);
  // Average out rounding asymmetry before the symmetric solver reads the lower triangle.
  s = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw IntegrityError("symmetric eigensolver did not converge");
  std::vector<double> ev(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(ev.begin(), ev.end());
  return ev;
}

SpectrumReport numeric_spectrum(const LaplacianMatrix& l, double cluster_tol, std::size_t cap) {
  const auto ev = numeric_eigenvalues(l, cap);
  SpectrumReport rep;
  rep.n = l.n;
  rep.q = l.q;
  rep.source = "numeric";
  rep.cluster_tol = cluster_tol;
  rep.precision = cluster_tol;
  for (const auto& c : cluster_sorted(ev, cluster_tol)) {
    Eigenvalue e;
    e.value = c.mean;
    e.lo = Rational(c.min);
    e.hi = Rational(c.max);
    e.multiplicity = static_cast<unsigned long>(c.count);
    rep.eigenvalues.push_back(std::move(e));
  }
  return rep;
}

bool shifted_cholesky_certificate(const Eigen::MatrixXd& s, double shift) {
  Eigen::MatrixXd m = 0.5 * (s + s.transpose());
  m.diagonal().array() += shift;
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  return llt.info() == Eigen::Success;
}

bool sparse_shifted_cholesky_certificate(const LaplacianMatrix& l, double shift) {
  const std::size_t n = l.size();
  std::vector<double> sqrt_w(n);
  for (std::size_t i = 0; i < n; ++i) sqrt_w[i] = std::sqrt(l.slice.weights[i].get_d());
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(l.entries.nnz() + n);
  for (std::size_t r = 0; r < n; ++r) {
    t.emplace_back(static_cast<int>(r), static_cast<int>(r), shift);
    for (std::size_t p = l.entries.row_begin(r); p < l.entries.row_end(r); ++p) {
      const std::size_t c = l.entries.col_at(p);
      // Halved from both sides so rounding asymmetry averages out.
      const double v = 0.5 * to_double(l.entries.value_at(p)) * sqrt_w[r] / sqrt_w[c];
      t.emplace_back(static_cast<int>(r), static_cast<int>(c), v);
      t.emplace_back(static_cast<int>(c), static_cast<int>(r), v);
    }
  }
  Eigen::SparseMatrix<double> m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  m.setFromTriplets(t.begin(), t.end());
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(m);
  return llt.info() == Eigen::Success;
}

bool weight_self_adjoint(const LaplacianMatrix& l) {
  const auto& e = l.entries;
  for (std::size_t r = 0; r < e.rows(); ++r) {
    for (std::size_t p = e.row_begin(r); p < e.row_end(r); ++p) {
      const std::size_t c = e.col_at(p);
      const Rational lhs = Rational(l.slice.weights[r]) * e.value_at(p);
      const Rational rhs = Rational(l.slice.weights[c]) * e.at(c, r);
      if (lhs != rhs) return false;
    }
  }
  // Entries present only in the transpose position would have been caught from the other side.
  return true;
}

void write_laplacian(std::ostream& out, const LaplacianMatrix& l) {
  const auto& e = l.entries;
  out << "FLAGLAP " << l.n << ' ' << l.q << ' ' << l.k << ' ' << e.rows() << ' ' << e.cols() << '\n';
  for (const auto& t : e.triplets()) out << t.row << ' ' << t.col << ' ' << to_string(t.value) << '\n';
  out << "WEIGHTS " << l.slice.weights.size() << '\n';
  for (std::size_t i = 0; i < l.slice.weights.size(); ++i) {
    out << i << ' ' << to_string(l.slice.weights[i]) << '\n';
  }
}

LaplacianText read_laplacian(std::istream& in) {
  LaplacianText lt;
  std::string line;
  if (!std::getline(in, line)) throw DomainError("empty Laplacian file");
  std::istringstream head(line);
  std::string tag;
  std::size_t rows = 0, cols = 0;
  if (!(head >> tag >> lt.n >> lt.q >> lt.k >> rows >> cols) || tag != "FLAGLAP") {
    throw DomainError("malformed FLAGLAP header");
  }
  std::vector<SparseRationalMatrix::Triplet> t;
  std::size_t weight_count = 0;
  bool in_weights = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (!in_weights) {
      if (line.rfind("WEIGHTS", 0) == 0) {
        ls >> tag >> weight_count;
        lt.weights.assign(weight_count, 0);
        in_weights = true;
        continue;
      }
      std::size_t r, c;
      std::string v;
      if (!(ls >> r >> c >> v)) throw DomainError("malformed Laplacian entry: " + line);
      t.push_back({r, c, parse_rational(v)});
    } else {
      std::size_t i;
      std::string v;
      if (!(ls >> i >> v) || i >= weight_count) throw DomainError("malformed weight line: " + line);
      lt.weights[i] = BigInt(v);
    }
  }
  lt.entries = SparseRationalMatrix::from_triplets(rows, cols, std::move(t));
  return lt;
}

}  // namespace flagspec

namespace flagspec {

namespace {

std::string flag_label(const std::vector<int>& sig, const FlagIds& ids) {
  std::string s = "[";
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(sig[i]) + ":" + std::to_string(ids[i]);
  }
  return s + "]";
}

// Calls f(signature, ids) for every flag of F_q^n, the empty flag included.
template <typename F>
void for_each_flag(const SubspaceLattice& lattice, int n, F&& f) {
  f(std::vector<int>{}, FlagIds{});
  for (int len = 1; len <= n - 1; ++len) {
    for (const auto& sig : signatures_of_length(n, len)) {
      for (const auto& ids : enumerate_flag_ids(lattice, sig)) f(sig, ids);
    }
  }
}

std::size_t intersection_size(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::size_t i = 0, j = 0, count = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (b[j] < a[i]) ++j;
    else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

}  // namespace

CheckResult verify_weight_ratio(int n, std::uint32_t q) {
  const auto lattice = SubspaceLattice::get(n, q);
  CheckResult res;
  for_each_flag(*lattice, n, [&](const std::vector<int>& sig, const FlagIds& ids) {
    if (!res.pass) return;
    const BigInt w = weight_of_signature(sig, n, q);
    for (std::size_t p = 0; p < sig.size(); ++p) {
      const auto [r, t] = removal_dims(sig, p, n);
      const Rational lhs = make_rational(w, weight_of_signature(drop(sig, p), n, q));
      if (lhs * Rational(q_binomial(r, t, q)) != 1) {
        res.pass = false;
        res.witness = "flag " + flag_label(sig, ids) + " removal " + std::to_string(p);
        return;
      }
    }
  });
  return res;
}

CheckResult verify_weight_partition(int n, std::uint32_t q) {
  const auto lattice = SubspaceLattice::get(n, q);
  CheckResult res;
  for_each_flag(*lattice, n, [&](const std::vector<int>& sig, const FlagIds& ids) {
    if (!res.pass) return;
    const BigInt w = weight_of_signature(sig, n, q);
    for (std::size_t gap = 0; gap <= sig.size(); ++gap) {
      const int below = gap == 0 ? 0 : sig[gap - 1];
      const int above = gap == sig.size() ? n : sig[gap];
      const std::size_t below_idx = gap == 0 ? 0 : ids[gap - 1];
      const std::size_t above_idx = gap == sig.size() ? 0 : ids[gap];
      for (int d = below + 1; d < above; ++d) {
        const std::size_t fits = intersection_size(lattice->related(below, below_idx, d),
                                                   lattice->related(above, above_idx, d));
        auto bigger = sig;
        bigger.insert(bigger.begin() + static_cast<std::ptrdiff_t>(gap), d);
        if (weight_of_signature(bigger, n, q) * static_cast<unsigned long>(fits) != w) {
          res.pass = false;
          res.witness = "flag " + flag_label(sig, ids) + " gap " + std::to_string(gap) + " dim " +
                        std::to_string(d);
          return;
        }
      }
    }
  });
  return res;
}

CheckResult verify_laplacian_structure(const LaplacianMatrix& l) {
  const auto& e = l.entries;
  const Rational diag(l.n - l.k - 2);
  for (std::size_t r = 0; r < e.rows(); ++r) {
    if (e.at(r, r) != diag) {
      return {false, "diagonal entry " + std::to_string(r) + " = " + to_string(e.at(r, r))};
    }
    if (l.k == 0) {
      Rational sum = 0;
      for (std::size_t p = e.row_begin(r); p < e.row_end(r); ++p) sum += e.value_at(p);
      if (sum != 0) return {false, "row " + std::to_string(r) + " sums to " + to_string(sum)};
    }
  }
  if (!weight_self_adjoint(l)) return {false, "W Delta != Delta^T W"};
  return {};
}

}  // namespace flagspec
