#include "hqa/dataset.hpp"

#include "hqa/errors.hpp"
#include "hqa/io.hpp"
#include "hqa/text.hpp"

#include <fmt/format.h>

#include <set>

namespace hqa {
namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, const std::string& entity) {
  if (!obj.is_object()) throw SchemaError(entity, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(entity, fmt::format("missing field \"{}\"", key));
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& entity) {
  const auto& v = require(obj, key, entity);
  if (!v.is_string()) throw SchemaError(entity, fmt::format("field \"{}\" must be a string", key));
  return v.get<std::string>();
}

std::vector<std::string> require_strings(const json& obj, const char* key,
                                         const std::string& entity) {
  const auto& v = require(obj, key, entity);
  if (!v.is_array()) throw SchemaError(entity, fmt::format("field \"{}\" must be an array", key));
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) {
      throw SchemaError(entity, fmt::format("field \"{}\" must hold strings", key));
    }
    out.push_back(e.get<std::string>());
  }
  return out;
}

HybridTable parse_table(const json& t) {
  const std::string id = require_string(t, "id", "<table>");
  HybridTable table;
  table.id = id;
  table.headers = require_strings(t, "headers", id);
  const auto& rows = require(t, "rows", id);
  if (!rows.is_array()) throw SchemaError(id, "field \"rows\" must be an array");
  for (const auto& r : rows) {
    if (!r.is_array()) throw SchemaError(id, "each row must be an array");
    std::vector<Cell> row;
    for (const auto& c : r) {
      Cell cell;
      cell.value = require_string(c, "value", id);
      cell.link_ids = require_strings(c, "links", id);
      row.push_back(std::move(cell));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

Question parse_question(const json& q) {
  Question out;
  out.id = require_string(q, "id", "<question>");
  out.table_id = require_string(q, "table_id", out.id);
  out.text = require_string(q, "question", out.id);
  out.gold_answers = require_strings(q, "answers", out.id);
  if (auto it = q.find("answer_type"); it != q.end() && !it->is_null()) {
    if (!it->is_string()) throw SchemaError(out.id, "answer_type must be a string or null");
    try {
      out.gold_type = answer_type_from_string(it->get<std::string>());
    } catch (const SchemaError&) {
      throw SchemaError(out.id, "answer_type must be in_table, in_passage or null");
    }
  }
  return out;
}

}  // namespace

void validate(const Dataset& ds) {
  for (const auto& [id, p] : ds.passages) {
    if (p.text.empty()) throw SchemaError(id, "passage text is empty");
  }
  for (const auto& [id, t] : ds.tables) {
    if (t.num_cols() == 0) throw SchemaError(id, "table has no columns");
    if (t.num_rows() == 0) throw SchemaError(id, "table has no rows");
    for (std::size_t i = 0; i < t.num_rows(); ++i) {
      if (t.rows[i].size() != t.num_cols()) {
        throw SchemaError(id, fmt::format("row {} has {} cells, expected {}", i, t.rows[i].size(),
                                          t.num_cols()));
      }
      for (const auto& cell : t.rows[i]) {
        for (const auto& link : cell.link_ids) {
          if (!ds.passages.contains(link)) {
            throw SchemaError(link, fmt::format("table {} links to unknown passage", id));
          }
        }
      }
    }
  }
  std::set<std::string, std::less<>> seen;
  for (const auto& q : ds.questions) {
    if (!seen.insert(q.id).second) throw SchemaError(q.id, "duplicate question id");
    if (!ds.tables.contains(q.table_id)) {
      throw SchemaError(q.id, fmt::format("unknown table {}", q.table_id));
    }
    if (q.gold_answers.empty()) throw SchemaError(q.id, "no gold answers");
    for (const auto& a : q.gold_answers) {
      if (normalize_text(a).empty()) throw SchemaError(q.id, "gold answer normalizes to empty");
    }
  }
}

Dataset parse_dataset(const json& doc) {
  if (!doc.is_object()) throw SchemaError("<root>", "top level must be an object");
  Dataset ds;

  const auto& passages = require(doc, "passages", "<root>");
  if (!passages.is_object()) throw SchemaError("<root>", "\"passages\" must be an object");
  for (const auto& [id, text] : passages.items()) {
    if (!text.is_string()) throw SchemaError(id, "passage text must be a string");
    ds.passages.emplace(id, Passage{id, text.get<std::string>()});
  }

  const auto& tables = require(doc, "tables", "<root>");
  if (!tables.is_array()) throw SchemaError("<root>", "\"tables\" must be an array");
  for (const auto& t : tables) {
    auto table = parse_table(t);
    const std::string id = table.id;
    if (!ds.tables.emplace(id, std::move(table)).second) {
      throw SchemaError(id, "duplicate table id");
    }
  }

  const auto& questions = require(doc, "questions", "<root>");
  if (!questions.is_array()) throw SchemaError("<root>", "\"questions\" must be an array");
  for (const auto& q : questions) ds.questions.push_back(parse_question(q));

  validate(ds);
  return ds;
}

Dataset load_dataset(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return parse_dataset(doc);
}

nlohmann::ordered_json dataset_to_json(const Dataset& ds) {
  using oj = nlohmann::ordered_json;
  oj tables = oj::array();
  for (const auto& [id, t] : ds.tables) {
    oj rows = oj::array();
    for (const auto& r : t.rows) {
      oj row = oj::array();
      for (const auto& c : r) row.push_back(oj{{"value", c.value}, {"links", c.link_ids}});
      rows.push_back(std::move(row));
    }
    tables.push_back(oj{{"id", id}, {"headers", t.headers}, {"rows", std::move(rows)}});
  }
  oj passages = oj::object();
  for (const auto& [id, p] : ds.passages) passages[id] = p.text;
  oj questions = oj::array();
  for (const auto& q : ds.questions) {
    oj type = q.gold_type ? oj(std::string(to_string(*q.gold_type))) : oj(nullptr);
    questions.push_back(oj{{"id", q.id},
                           {"table_id", q.table_id},
                           {"question", q.text},
                           {"answers", q.gold_answers},
                           {"answer_type", std::move(type)}});
  }
  return oj{{"tables", std::move(tables)},
            {"passages", std::move(passages)},
            {"questions", std::move(questions)}};
}

}  // namespace hqa
