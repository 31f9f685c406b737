// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace rackray {

/// Invalid scene, scenario or command-line configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failure reading or writing a file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rackray
