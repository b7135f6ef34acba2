#include "hqa/text.hpp"

#include <algorithm>

namespace hqa {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_stripped_punct(char c) {
  switch (c) {
    case '.': case ',': case '!': case '?': case ';': case ':':
    case '\'': case '"': case '(': case ')': case '[': case ']':
    case '{': case '}':
      return true;
    default:
      return false;
  }
}

bool is_article(std::string_view tok) { return tok == "a" || tok == "an" || tok == "the"; }

}  // namespace

std::vector<std::string> normalized_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty() && !is_article(cur)) out.push_back(cur);
    cur.clear();
  };
  for (char c : s) {
    if (is_space(c)) {
      flush();
    } else if (!is_stripped_punct(c)) {
      cur.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
    }
  }
  flush();
  return out;
}

std::string normalize_text(std::string_view s) {
  std::string out;
  for (const auto& tok : normalized_tokens(s)) {
    if (!out.empty()) out.push_back(' ');
    out += tok;
  }
  return out;
}

bool contains_token_run(std::span<const std::string> haystack, std::span<const std::string> needle) {
  if (needle.empty()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) !=
         haystack.end();
}

bool contains_answer(std::string_view haystack, std::span<const std::string> answers) {
  const auto hay = normalized_tokens(haystack);
  return std::any_of(answers.begin(), answers.end(), [&](const std::string& a) {
    return contains_token_run(hay, normalized_tokens(a));
  });
}

std::vector<RawToken> whitespace_tokens(std::string_view s) {
  std::vector<RawToken> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    if (i == s.size()) break;
    const std::size_t b = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    out.push_back({b, i});
  }
  return out;
}

}  // namespace hqa
