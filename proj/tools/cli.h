//
// Copyright 2026 The gaussdp Authors
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
//

#ifndef GAUSSDP_TOOLS_CLI_H_
#define GAUSSDP_TOOLS_CLI_H_

#include <ostream>
#include <span>
#include <string>

namespace gaussdp::cli {

inline constexpr int kExitOk = 0;
// Invalid flags, unreadable input, or a value outside a mechanism's domain.
inline constexpr int kExitDomain = 2;
// A numerical routine failed (e.g. no bracket found).
inline constexpr int kExitNumerical = 3;

// Environment variable naming the directory that relative --output paths
// are resolved against.
inline constexpr char kOutputDirEnv[] = "GAUSSDP_OUTPUT_DIR";

// Runs one invocation. `args` excludes the program name. Normal output goes
// to `out` (or the --output file), diagnostics to `err`.
int RunCli(std::span<const std::string> args, std::ostream& out,
           std::ostream& err);

}  // namespace gaussdp::cli

#endif  // GAUSSDP_TOOLS_CLI_H_
