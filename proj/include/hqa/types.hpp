#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hqa {

// Declaration order is also the enumeration order of candidates.
enum class Granularity : std::uint8_t { Col = 0, Row = 1, Cell = 2, Link = 3 };

inline constexpr std::array<Granularity, 4> kAllGranularities = {
    Granularity::Col, Granularity::Row, Granularity::Cell, Granularity::Link};

std::string_view to_string(Granularity g);
Granularity granularity_from_string(std::string_view s);

/// Where the answer lives. The two types the selector can decide between.
enum class AnswerType : std::uint8_t { InTable, InPassage };

/// Answer type derived from distant labels; adds the unanswerable case.
enum class GoldType : std::uint8_t { InTable, InPassage, Unanswerable };

std::string_view to_string(AnswerType t);
AnswerType answer_type_from_string(std::string_view s);
std::string_view to_string(GoldType t);

struct CellCoord {
  std::size_t row = 0;
  std::size_t col = 0;

  auto operator<=>(const CellCoord&) const = default;
};

/// Address of one evidence candidate inside a table.
///
/// Unused coordinates stay zero, so the defaulted ordering (granularity, row,
/// col, link) coincides with the enumeration order of `enumerate_candidates`.
struct EvidenceId {
  Granularity granularity = Granularity::Col;
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  std::uint32_t link = 0;

  static constexpr EvidenceId column(std::size_t j) {
    return {Granularity::Col, 0, static_cast<std::uint32_t>(j), 0};
  }
  static constexpr EvidenceId table_row(std::size_t i) {
    return {Granularity::Row, static_cast<std::uint32_t>(i), 0, 0};
  }
  static constexpr EvidenceId cell(std::size_t i, std::size_t j) {
    return {Granularity::Cell, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), 0};
  }
  static constexpr EvidenceId link_of(std::size_t i, std::size_t j, std::size_t x) {
    return {Granularity::Link, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
            static_cast<std::uint32_t>(x)};
  }

  /// Coordinates as written to files: [j], [i], [i,j] or [i,j,x].
  std::vector<std::size_t> coords() const;
  static EvidenceId from_coords(Granularity g, const std::vector<std::size_t>& coords);

  std::string to_string() const;

  auto operator<=>(const EvidenceId&) const = default;
};

struct Passage {
  std::string id;
  std::string text;

  bool operator==(const Passage&) const = default;
};

struct Cell {
  std::string value;
  std::vector<std::string> link_ids;

  bool operator==(const Cell&) const = default;
};

/// Table with `rows.size()` rows and `headers.size()` columns; cells may link
/// to passages.
struct HybridTable {
  std::string id;
  std::vector<std::string> headers;
  std::vector<std::vector<Cell>> rows;

  std::size_t num_rows() const noexcept { return rows.size(); }
  std::size_t num_cols() const noexcept { return headers.size(); }
  const Cell& at(std::size_t i, std::size_t j) const { return rows.at(i).at(j); }
  bool contains(const EvidenceId& id) const;
  bool operator==(const HybridTable&) const = default;
};

struct Question {
  std::string id;
  std::string table_id;
  std::string text;
  std::vector<std::string> gold_answers;
  std::optional<AnswerType> gold_type;

  bool operator==(const Question&) const = default;
};

using PassageMap = std::map<std::string, Passage, std::less<>>;

struct Dataset {
  std::map<std::string, HybridTable, std::less<>> tables;
  PassageMap passages;
  std::vector<Question> questions;

  const HybridTable& table_for(const Question& q) const;
  const Question* find_question(std::string_view id) const;
};

}  // namespace hqa
