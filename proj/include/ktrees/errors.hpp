#pragma once

#include <stdexcept>
#include <string>

namespace ktrees {

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InstanceTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotDeeplyConnected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BelowThreshold : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ktrees
