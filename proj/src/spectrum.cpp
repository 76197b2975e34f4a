#include "flagspec/spectrum.hpp"

namespace flagspec {

BigInt SpectrumReport::total_multiplicity() const {
  BigInt total = 0;
  for (const auto& e : eigenvalues) total += e.multiplicity;
  return total;
}

std::vector<Cluster> cluster_sorted(const std::vector<double>& v, double tol) {
  std::vector<Cluster> out;
  double sum = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i == 0 || v[i] - v[i - 1] >= tol) {
      if (i > 0) out.back().mean = sum / static_cast<double>(out.back().count);
      out.push_back({v[i], 0, v[i], v[i]});
      sum = 0;
    }
    auto& c = out.back();
    ++c.count;
    c.max = v[i];
    sum += v[i];
  }
  if (!out.empty()) out.back().mean = sum / static_cast<double>(out.back().count);
  return out;
}

}  // namespace flagspec
