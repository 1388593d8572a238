// Copyright 2026 The qrd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QRD_TOOLS_CLI_HPP
#define QRD_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace qrd::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumeric = 2, kValidationFailed = 3 };

// Runs one subcommand; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qrd::cli

#endif  // QRD_TOOLS_CLI_HPP
