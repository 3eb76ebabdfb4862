#pragma once

#include <stdexcept>
#include <string>

namespace rssiest {

// Invalid configuration or sweep specification.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Mismatched sizes or an index outside the configured dimensions.
class DimensionError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A count (e.g. number of feedbacks) outside its admissible range.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Unknown estimator name or otherwise unusable request.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace rssiest
