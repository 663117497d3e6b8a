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

#include "langaux/text.h"

#include <algorithm>
#include <cctype>

namespace langaux {
namespace {

bool IsAlnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

bool IsWordByte(char c) {
  // Bytes of multi-byte UTF-8 sequences are treated as word characters.
  return IsAlnum(c) || static_cast<unsigned char>(c) >= 0x80;
}

bool IsKeptPunct(char c) {
  return c == '.' || c == ',' || c == ';' || c == ':' || c == '!' ||
         c == '?';
}

bool ExpandsToIs(std::string_view word) {
  static constexpr std::string_view kWords[] = {
      "it", "that", "there", "this", "what", "here", "he", "she", "who"};
  return std::find(std::begin(kWords), std::end(kWords), word) !=
         std::end(kWords);
}

}  // namespace

Description NormalizeAndTokenize(std::string_view raw_text,
                                 std::optional<std::string> referent_name) {
  Description desc;
  desc.raw_text = std::string(raw_text);
  desc.referent_name = std::move(referent_name);

  std::string text(raw_text);
  for (char &c : text) c = static_cast<char>(std::tolower(
                               static_cast<unsigned char>(c)));

  std::vector<std::string> tokens;
  std::string word;
  auto flush = [&]() {
    if (!word.empty()) tokens.push_back(std::move(word));
    word.clear();
  };

  const size_t n = text.size();
  for (size_t i = 0; i < n; ++i) {
    const char c = text[i];
    const char next = i + 1 < n ? text[i + 1] : '\0';
    if (IsWordByte(c)) {
      word.push_back(c);
    } else if (c == '-' && !word.empty() && IsAlnum(next)) {
      word.push_back(c);
    } else if (c == '.' && !word.empty() &&
               std::isdigit(static_cast<unsigned char>(word.back())) &&
               std::isdigit(static_cast<unsigned char>(next))) {
      word.push_back(c);  // decimal number
    } else if (c == '\'' && !word.empty() &&
               std::isalpha(static_cast<unsigned char>(next))) {
      // Contraction or possessive: split off the clitic.
      size_t j = i + 1;
      std::string clitic;
      while (j < n && std::isalpha(static_cast<unsigned char>(text[j]))) {
        clitic.push_back(text[j]);
        ++j;
      }
      if (clitic == "s") {
        if (ExpandsToIs(word)) {
          flush();
          tokens.push_back("is");
        } else {
          flush();  // possessive, dropped
        }
      } else if (clitic == "re") {
        flush();
        tokens.push_back("are");
      } else if (clitic == "t" && word.size() > 1 && word.back() == 'n') {
        word.pop_back();
        if (word == "ca") word = "can";
        if (word == "wo") word = "will";
        flush();
        tokens.push_back("not");
      } else {
        flush();
      }
      i = j - 1;
    } else if (IsKeptPunct(c)) {
      flush();
      tokens.push_back(std::string(1, c));
    } else {
      flush();
    }
  }
  flush();

  const bool has_word =
      std::any_of(tokens.begin(), tokens.end(), [](const std::string &t) {
        return std::any_of(t.begin(), t.end(), IsAlnum);
      });
  if (has_word) {
    // Drop punctuation that precedes the first word and collapse repeated
    // sentence terminators.
    std::vector<std::string> cleaned;
    cleaned.reserve(tokens.size());
    for (auto &t : tokens) {
      const bool punct = !std::any_of(t.begin(), t.end(), IsWordByte);
      if (punct && cleaned.empty()) continue;
      if (punct && IsSentenceEnd(t) && IsSentenceEnd(cleaned.back())) continue;
      cleaned.push_back(std::move(t));
    }
    desc.tokens = std::move(cleaned);
  }
  return desc;
}

bool IsSentenceEnd(std::string_view token) {
  return token == "." || token == "!" || token == "?";
}

std::vector<std::pair<int, int>> SentenceRanges(
    const std::vector<std::string> &tokens) {
  std::vector<std::pair<int, int>> ranges;
  int begin = 0;
  const int n = static_cast<int>(tokens.size());
  for (int i = 0; i < n; ++i) {
    if (IsSentenceEnd(tokens[i])) {
      ranges.emplace_back(begin, i + 1);
      begin = i + 1;
    }
  }
  if (begin < n) ranges.emplace_back(begin, n);
  return ranges;
}

std::string JoinTokens(const std::vector<std::string> &tokens, int begin,
                       int end) {
  std::string out;
  for (int i = begin; i < end; ++i) {
    if (i > begin) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace langaux
