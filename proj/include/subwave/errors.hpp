// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace subwave {

// Validation failures (bad geometry, bad config, bad arguments) throw
// std::invalid_argument. Failures of the numerics themselves use this type
// so the CLI can map them to a distinct exit code.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace subwave
