#pragma once

#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace lpdiv {

using BigInt = boost::multiprecision::cpp_int;

/// Raised when exact data fails an internal consistency check (non-exact
/// Newton division, functional-equation mismatch, Hasse-Weil violation).
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lpdiv
