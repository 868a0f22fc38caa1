// Copyright 2026 The fairgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FAIRGRAPH_TOOLS_CLI_H_
#define FAIRGRAPH_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace fairgraph::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitIo = 2;

// Largest network the spectral command decomposes.
inline constexpr int kSpectralNodeCap = 2000;

// Runs one subcommand. `args` excludes the program name. Reports go to `out`
// unless --out is given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace fairgraph::tools

#endif  // FAIRGRAPH_TOOLS_CLI_H_
