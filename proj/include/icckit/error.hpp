#pragma once

#include <stdexcept>
#include <string>

namespace icckit {

/// Raised on contract violations: malformed input, dimension mismatch,
/// non-unimodular matrices, invalid homomorphisms.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace icckit
