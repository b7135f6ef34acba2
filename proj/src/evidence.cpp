#include "hqa/evidence.hpp"

#include <cassert>

namespace hqa {
namespace {

constexpr std::string_view kJoin = " [SEP] ";

std::string frame(std::string_view tag, std::string_view question, std::string_view content) {
  std::string s;
  s.reserve(tag.size() + question.size() + content.size() + 24);
  s += kClsMarker;
  s += ' ';
  s += tag;
  s += kJoin;
  s += question;
  s += kJoin;
  s += content;
  return s;
}

std::string linked_text(const Cell& cell, const PassageMap& passages) {
  std::string out;
  for (std::size_t x = 0; x < cell.link_ids.size(); ++x) {
    if (x > 0) out += kJoin;
    out += passages.at(cell.link_ids[x]).text;
  }
  return out;
}

EvidenceCandidate cell_candidate(const Question& q, const HybridTable& t, const PassageMap& p,
                                 const EvidenceId& id, std::size_t i, std::size_t j) {
  EvidenceCandidate c;
  c.id = id;
  c.content = cell_content(t, p, i, j);
  c.header = t.headers[j];
  c.passages = linked_text(t.at(i, j), p);
  c.serialized = frame(to_string(id.granularity), q.text, c.content);
  return c;
}

}  // namespace

std::vector<EvidenceId> enumerate_candidates(const HybridTable& table) {
  const std::size_t m = table.num_rows();
  const std::size_t n = table.num_cols();
  std::vector<EvidenceId> ids;
  ids.reserve(n + m + 2 * m * n);
  for (std::size_t j = 0; j < n; ++j) ids.push_back(EvidenceId::column(j));
  for (std::size_t i = 0; i < m; ++i) ids.push_back(EvidenceId::table_row(i));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) ids.push_back(EvidenceId::cell(i, j));
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t x = 0; x < table.at(i, j).link_ids.size(); ++x) {
        ids.push_back(EvidenceId::link_of(i, j, x));
      }
    }
  }
  return ids;
}

std::string cell_content(const HybridTable& table, const PassageMap& passages, std::size_t i,
                         std::size_t j) {
  std::string s = table.headers[j];
  s += kJoin;
  for (std::size_t k = 0; k < table.num_cols(); ++k) {
    if (k > 0) s += " | ";
    s += table.headers[k];
    s += ": ";
    s += table.at(i, k).value;
  }
  s += kJoin;
  s += linked_text(table.at(i, j), passages);
  return s;
}

std::vector<EvidenceCandidate> serialize_candidate(const Question& question,
                                                   const HybridTable& table,
                                                   const PassageMap& passages,
                                                   const EvidenceId& id) {
  assert(table.contains(id));
  switch (id.granularity) {
    case Granularity::Col: {
      EvidenceCandidate c;
      c.id = id;
      c.content = table.headers[id.col];
      c.header = c.content;
      c.serialized = frame("col", question.text, c.content);
      return {std::move(c)};
    }
    case Granularity::Link: {
      EvidenceCandidate c;
      c.id = id;
      c.content = passages.at(table.at(id.row, id.col).link_ids[id.link]).text;
      c.passages = c.content;
      c.serialized = frame("link", question.text, c.content);
      return {std::move(c)};
    }
    case Granularity::Cell:
      return {cell_candidate(question, table, passages, id, id.row, id.col)};
    case Granularity::Row: {
      std::vector<EvidenceCandidate> out;
      out.reserve(table.num_cols());
      for (std::size_t j = 0; j < table.num_cols(); ++j) {
        out.push_back(cell_candidate(question, table, passages, id, id.row, j));
      }
      return out;
    }
  }
  return {};
}

std::optional<SerializedParts> parse_serialized(std::string_view s) {
  const std::string prefix = std::string(kClsMarker) + " ";
  if (!s.starts_with(prefix)) return std::nullopt;
  s.remove_prefix(prefix.size());
  const auto tag_end = s.find(kJoin);
  if (tag_end == std::string_view::npos) return std::nullopt;
  SerializedParts parts;
  parts.tag = std::string(s.substr(0, tag_end));
  s.remove_prefix(tag_end + kJoin.size());
  const auto q_end = s.find(kJoin);
  if (q_end == std::string_view::npos) return std::nullopt;
  parts.question = std::string(s.substr(0, q_end));
  parts.content = std::string(s.substr(q_end + kJoin.size()));
  return parts;
}

}  // namespace hqa
