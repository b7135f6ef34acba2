#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hqa {

/// Answer-comparison normal form: lowercase, punctuation `.,!?;:'"()[]{}`
/// removed, articles a/an/the dropped, whitespace collapsed to single spaces.
/// Bytes outside ASCII are kept verbatim.
std::string normalize_text(std::string_view s);

/// Tokens of `normalize_text(s)`.
std::vector<std::string> normalized_tokens(std::string_view s);

/// True iff the normalized tokens of some answer occur as a contiguous run in
/// the normalized tokens of `haystack`. Answers normalizing to nothing never
/// match.
bool contains_answer(std::string_view haystack, std::span<const std::string> answers);

bool contains_token_run(std::span<const std::string> haystack, std::span<const std::string> needle);

/// Splits on ASCII whitespace, keeping byte offsets into the source.
struct RawToken {
  std::size_t begin;
  std::size_t end;
};
std::vector<RawToken> whitespace_tokens(std::string_view s);

}  // namespace hqa
