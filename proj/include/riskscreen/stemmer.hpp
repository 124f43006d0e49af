// Copyright 2026 The riskscreen Authors.
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

#ifndef RISKSCREEN_STEMMER_HPP_
#define RISKSCREEN_STEMMER_HPP_

#include <string>

namespace riskscreen {

// Porter stemmer, faithful to the author's ANSI C release including its
// documented departures from the 1980 article (length<=2 words untouched,
// -bli -> -ble, -logi -> -log). Expects a lowercase token.
std::string porter_stem(const std::string& word);

}  // namespace riskscreen

#endif  // RISKSCREEN_STEMMER_HPP_
