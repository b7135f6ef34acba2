#pragma once

#include "hqa/dataset.hpp"
#include "hqa/io.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace fixture {

// Three-row table about rivers; the second question's answer lives only in
// the first link of cell (2,0).
inline nlohmann::json rivers_json() {
  return nlohmann::json::parse(R"({
    "tables": [{
      "id": "t1",
      "headers": ["River", "Country", "Length"],
      "rows": [
        [{"value": "Nile", "links": ["p_nile"]}, {"value": "Egypt", "links": []}, {"value": "6650 km", "links": []}],
        [{"value": "Amazon", "links": []}, {"value": "Brazil", "links": ["p_brazil"]}, {"value": "6400 km", "links": []}],
        [{"value": "Mississippi", "links": ["p_miss1", "p_miss2"]}, {"value": "United States", "links": []}, {"value": "3730 km", "links": []}]
      ]
    }],
    "passages": {
      "p_nile": "The Nile flows north through Egypt into the Mediterranean Sea.",
      "p_brazil": "Brazil is the largest country in South America.",
      "p_miss1": "The Mississippi River drains into the Gulf of Mexico near New Orleans.",
      "p_miss2": "Its source is Lake Itasca in Minnesota."
    },
    "questions": [
      {"id": "q1", "table_id": "t1", "question": "What is the length of the Amazon?",
       "answers": ["6400 km"], "answer_type": "in_table"},
      {"id": "q2", "table_id": "t1", "question": "The Mississippi drains into which gulf?",
       "answers": ["Gulf of Mexico"], "answer_type": "in_passage"},
      {"id": "q3", "table_id": "t1", "question": "Which river is longest in Asia?",
       "answers": ["Yangtze"], "answer_type": null}
    ]
  })");
}

inline hqa::Dataset rivers() { return hqa::parse_dataset(rivers_json()); }

inline std::filesystem::path write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  hqa::write_file_atomic(path, j.dump(2));
  return path;
}

}  // namespace fixture
