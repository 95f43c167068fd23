#pragma once

#include <map>
#include <vector>

namespace afrel {

// Positive vertex function rho on levels 0..N, stored as log-values so that
// rho_n ~ lambda^-n stays representable at any depth.
class HarmonicVector {
 public:
  HarmonicVector() = default;
  explicit HarmonicVector(std::vector<std::map<int, double>> log_rho);

  int depth() const noexcept { return static_cast<int>(log_rho_.size()) - 1; }
  const std::map<int, double>& log_level(int n) const;
  double log_rho(int n, int vertex) const;
  double rho(int n, int vertex) const;
  bool has(int n, int vertex) const;

 private:
  std::vector<std::map<int, double>> log_rho_;
};

}  // namespace afrel
