/*
 * Copyright 2026 The emobow Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace emobow {

// Lowercase tokens over [a-z0-9'], never empty.
using TokenSeq = std::vector<std::string>;

// Lowercases, turns every character that is not an ASCII letter, a digit or
// an apostrophe between two alphanumerics into a separator, and splits.
// U+2019 is read as an apostrophe; other non-ASCII code points separate.
TokenSeq normalize(std::string_view text);

std::string join(const TokenSeq& tokens, char sep = ' ');

bool is_normalized_token(std::string_view token) noexcept;

}  // namespace emobow
