// Copyright 2026 The Coflow Authors
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

#pragma once

#include <iosfwd>
#include <string>

#include "coflow/lp_problem.hpp"

namespace coflow {

// MPS in the whitespace-separated ("free") layout: the section structure and
// field order of fixed MPS, without the 8-character name limit, since column
// names such as xe_3_1_17_e12 do not fit fixed columns. The objective row is
// named OBJ, the right-hand side set RHS and the bound set BND.
void write_mps(std::ostream& out, const LPProblem& problem);
std::string to_mps(const LPProblem& problem);

/// Parses the subset written by write_mps (no RANGES, no OBJSENSE).
/// Throws std::runtime_error on malformed input.
LPProblem read_mps(std::istream& in);
LPProblem parse_mps(const std::string& text);

}  // namespace coflow
