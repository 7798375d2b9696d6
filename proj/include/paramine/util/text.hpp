// Copyright 2026 The paramine Authors.
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

#ifndef PARAMINE_UTIL_TEXT_HPP_
#define PARAMINE_UTIL_TEXT_HPP_

#include <string>
#include <string_view>
#include <vector>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "paramine/error.hpp"

namespace paramine {

inline bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Whitespace tokenization. This is the token unit for every count in the
// pipeline (lengths, PLR, BLEU, span positions).
inline std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsAsciiSpace(text[i])) ++i;
    size_t j = i;
    while (j < text.size() && !IsAsciiSpace(text[j])) ++j;
    if (j > i) tokens.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return tokens;
}

inline size_t CountTokens(std::string_view text) {
  size_t n = 0;
  bool in_token = false;
  for (char c : text) {
    if (IsAsciiSpace(c)) {
      in_token = false;
    } else if (!in_token) {
      in_token = true;
      ++n;
    }
  }
  return n;
}

inline std::string Join(const std::vector<std::string> &parts,
                        std::string_view sep = " ", size_t begin = 0,
                        size_t end = std::string::npos) {
  std::string out;
  if (end > parts.size()) end = parts.size();
  for (size_t i = begin; i < end; ++i) {
    if (i > begin) out += sep;
    out += parts[i];
  }
  return out;
}

inline std::string_view Trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && IsAsciiSpace(s[b])) ++b;
  while (e > b && IsAsciiSpace(s[e - 1])) --e;
  return s.substr(b, e - b);
}

inline bool IsEndingPunct(char c) {
  return c == '.' || c == '!' || c == '?' || c == ';';
}

// Removes one trailing sentence-ending punctuation mark and any whitespace
// left in front of it.
inline std::string StripEndingPunct(std::string_view s) {
  std::string_view t = Trim(s);
  if (!t.empty() && IsEndingPunct(t.back())) t.remove_suffix(1);
  return std::string(Trim(t));
}

// Lowercase, Unicode NFC, whitespace runs collapsed to one space, trimmed.
// Returns "" for inputs without visible characters.
inline std::string NormalizeSentence(std::string_view raw) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2 *nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw ConfigError("ICU NFC normalizer unavailable");

  icu::UnicodeString text = icu::UnicodeString::fromUTF8(
      icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
  text.toLower(icu::Locale::getRoot());
  icu::UnicodeString composed = nfc->normalize(text, status);
  if (U_FAILURE(status)) throw DataError("NFC normalization failed");

  icu::UnicodeString collapsed;
  bool pending_space = false;
  for (int32_t i = 0; i < composed.length();) {
    const UChar32 c = composed.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      pending_space = !collapsed.isEmpty();
      continue;
    }
    if (pending_space) collapsed.append(static_cast<UChar>(' '));
    pending_space = false;
    collapsed.append(c);
  }
  std::string out;
  collapsed.toUTF8String(out);
  return out;
}

}  // namespace paramine

#endif  // PARAMINE_UTIL_TEXT_HPP_
