/*
 * Copyright 2026 The ConceptWiki Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#pragma once

#include <random>
#include <string>

namespace cwbench {

/// Flat-file text for `n` synthetic active entries shaped like enzyme.dat.
inline std::string synthetic_flat_file(int n) {
  std::mt19937 rng(42);
  std::string out = "CC   synthetic\n//\n";
  for (int i = 0; i < n; ++i) {
    const std::string ec = std::to_string(1 + i % 7) + "." + std::to_string(1 + (i / 7) % 20) + ".1." + std::to_string(i + 1);
    out += "ID   " + ec + "\n";
    out += "DE   Synthetic enzyme number " + std::to_string(i) + ".\n";
    out += "AN   Alternative name " + std::to_string(i) + ".\n";
    out += "CA   (1) Substrate " + std::to_string(rng() % 500) + " + H(2)O = product.\n";
    out += "CA   (2) Other substrate = other product.\n";
    out += "CF   Zinc or Magnesium.\n";
    out += "CC   -!- A comment about entry " + std::to_string(i) + ".\n";
    out += "PR   PROSITE; PDOC" + std::to_string(10000 + i) + ";\n";
    out += "DR   P" + std::to_string(10000 + i) + ", ENTRY_HUMAN;  Q" + std::to_string(20000 + i) + ", ENTRY_MOUSE;\n";
    out += "//\n";
  }
  return out;
}

}  // namespace cwbench
