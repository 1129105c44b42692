#pragma once

#include <stdexcept>
#include <string>

namespace rfs {

/// Raised when an iterative scheme (quadrature refinement, power iteration,
/// matrix factorization with jitter) fails to reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rfs
