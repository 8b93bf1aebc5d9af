#pragma once

#include <stdexcept>
#include <string>

namespace lmps {

/// Market clearing has no feasible dispatch.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Recovered basis does not span the data.
class RankDeficitError : public std::runtime_error {
 public:
  RankDeficitError(const std::string& what, int missing)
      : std::runtime_error(what), missing_(missing) {}
  [[nodiscard]] int missing() const { return missing_; }

 private:
  int missing_;
};

/// Every interval was filtered out as congestion-free.
class NoCongestionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lmps
