#include "hqa/types.hpp"

#include "hqa/errors.hpp"

#include <fmt/format.h>

namespace hqa {

std::string_view to_string(Granularity g) {
  switch (g) {
    case Granularity::Col: return "col";
    case Granularity::Row: return "row";
    case Granularity::Cell: return "cell";
    case Granularity::Link: return "link";
  }
  return "?";
}

Granularity granularity_from_string(std::string_view s) {
  if (s == "col") return Granularity::Col;
  if (s == "row") return Granularity::Row;
  if (s == "cell") return Granularity::Cell;
  if (s == "link") return Granularity::Link;
  throw SchemaError(std::string(s), "unknown granularity");
}

std::string_view to_string(AnswerType t) {
  return t == AnswerType::InTable ? "in_table" : "in_passage";
}

AnswerType answer_type_from_string(std::string_view s) {
  if (s == "in_table") return AnswerType::InTable;
  if (s == "in_passage") return AnswerType::InPassage;
  throw SchemaError(std::string(s), "unknown answer type");
}

std::string_view to_string(GoldType t) {
  switch (t) {
    case GoldType::InTable: return "in_table";
    case GoldType::InPassage: return "in_passage";
    case GoldType::Unanswerable: return "unanswerable";
  }
  return "?";
}

std::vector<std::size_t> EvidenceId::coords() const {
  switch (granularity) {
    case Granularity::Col: return {col};
    case Granularity::Row: return {row};
    case Granularity::Cell: return {row, col};
    case Granularity::Link: return {row, col, link};
  }
  return {};
}

EvidenceId EvidenceId::from_coords(Granularity g, const std::vector<std::size_t>& c) {
  const std::size_t expected = g == Granularity::Col || g == Granularity::Row ? 1
                               : g == Granularity::Cell                      ? 2
                                                                             : 3;
  if (c.size() != expected) {
    throw SchemaError(std::string(hqa::to_string(g)),
                      fmt::format("expected {} coordinates, got {}", expected, c.size()));
  }
  switch (g) {
    case Granularity::Col: return column(c[0]);
    case Granularity::Row: return table_row(c[0]);
    case Granularity::Cell: return cell(c[0], c[1]);
    case Granularity::Link: return link_of(c[0], c[1], c[2]);
  }
  return {};
}

std::string EvidenceId::to_string() const {
  return fmt::format("{}({})", hqa::to_string(granularity), fmt::join(coords(), ","));
}

bool HybridTable::contains(const EvidenceId& id) const {
  switch (id.granularity) {
    case Granularity::Col: return id.col < num_cols();
    case Granularity::Row: return id.row < num_rows();
    case Granularity::Cell: return id.row < num_rows() && id.col < num_cols();
    case Granularity::Link:
      return id.row < num_rows() && id.col < num_cols() &&
             id.link < rows[id.row][id.col].link_ids.size();
  }
  return false;
}

const HybridTable& Dataset::table_for(const Question& q) const {
  auto it = tables.find(q.table_id);
  if (it == tables.end()) throw SchemaError(q.table_id, "unknown table");
  return it->second;
}

const Question* Dataset::find_question(std::string_view id) const {
  for (const auto& q : questions) {
    if (q.id == id) return &q;
  }
  return nullptr;
}

}  // namespace hqa
