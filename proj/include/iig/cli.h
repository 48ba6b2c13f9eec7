// Copyright 2026 The iiglearn Authors. All rights reserved.
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

#ifndef IIG_CLI_H_
#define IIG_CLI_H_

#include <string>
#include <vector>

namespace iig {

// Expands "log:<lo>:<hi>:<n>" into n geometrically spaced values, or a comma
// list into its values. Throws ArgumentError on malformed input.
std::vector<double> ExpandEtaGrid(const std::string& text);

// Exit codes: 0 success, 2 configuration error, 3 numeric failure.
int RunCli(int argc, const char* const* argv);

}  // namespace iig

#endif  // IIG_CLI_H_
