#pragma once

#include <stdexcept>
#include <string>

namespace bitswap {

/// Invalid parameters: dimension mismatch, odd pool size for pairing, bad file contents.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A theory query whose (algorithm, fitness, distribution) combination has no evaluator.
class UnsupportedQuery : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// An absorbing chain with a non-absorbing state that can never be left.
class DivergenceError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Exact-arithmetic oracle called outside its cost guard.
class GuardExceeded : public std::length_error {
  public:
    using std::length_error::length_error;
};

} // namespace bitswap
