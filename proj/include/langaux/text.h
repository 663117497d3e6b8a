// Copyright 2026 The langaux Authors.
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

#ifndef LANGAUX_TEXT_H_
#define LANGAUX_TEXT_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace langaux {

// A free-form scene description and its normalized token sequence.
struct Description {
  std::string raw_text;
  // Class name of the described object when the corpus provides it.
  std::optional<std::string> referent_name;
  // Lowercase tokens; sentence terminators are kept as "." / "!" / "?".
  std::vector<std::string> tokens;
  // Set by coreference resolution when pronouns had no resolvable referent.
  bool coreference_unresolved = false;
};

// Lowercases and splits the text into word and punctuation tokens.
// Hyphenated compounds ("l-shaped") stay single tokens, contractions after
// pronouns are expanded ("it's" -> "it is") and possessive "'s" is dropped.
// Text without any alphanumeric character yields no tokens.
Description NormalizeAndTokenize(
    std::string_view raw_text,
    std::optional<std::string> referent_name = std::nullopt);

bool IsSentenceEnd(std::string_view token);

// Half-open [begin, end) token ranges, one per sentence. The terminator, if
// any, is the last token of its range.
std::vector<std::pair<int, int>> SentenceRanges(
    const std::vector<std::string>& tokens);

std::string JoinTokens(const std::vector<std::string>& tokens, int begin,
                       int end);

}  // namespace langaux

#endif  // LANGAUX_TEXT_H_
