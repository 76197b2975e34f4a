#pragma once

#include "flagspec/exact.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace flagspec {

/// One distinct eigenvalue. [lo, hi] encloses it: for block roots this is the
/// exact isolating interval, for numeric clusters the range of merged values.
struct Eigenvalue {
  double value = 0;
  Rational lo;
  Rational hi;
  BigInt multiplicity;
  int block_k = -1;  // -1 when not attributed to a block
};

struct SpectrumReport {
  int n = 0;
  std::uint32_t q = 0;
  std::string source;  // "blocks" or "numeric"
  std::vector<Eigenvalue> eigenvalues;  // sorted by value
  double cluster_tol = 1e-7;
  double precision = 1e-12;

  BigInt total_multiplicity() const;
};

/// Groups sorted values into chains of neighbours closer than tol.
/// Returns (mean, count, min, max) per group.
struct Cluster {
  double mean;
  std::size_t count;
  double min;
  double max;
};
std::vector<Cluster> cluster_sorted(const std::vector<double>& sorted_values, double tol);

}  // namespace flagspec
