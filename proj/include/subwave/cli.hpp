// Copyright (c) the subwave authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace subwave {

// Exit codes: 0 success, 2 config/usage error, 3 numerical failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace subwave
