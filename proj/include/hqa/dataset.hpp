#pragma once

#include "hqa/types.hpp"

#include <filesystem>
#include <string>

#include <json.hpp>

namespace hqa {

/// Reads and validates a dataset file.
///
/// Throws ParseError on malformed JSON and SchemaError (naming the offending
/// table, passage or question id) on any structural violation: missing
/// fields, ragged grids, dangling passage or table references, duplicate ids,
/// empty passages, answers that normalize to nothing.
Dataset load_dataset(const std::filesystem::path& path);

Dataset parse_dataset(const nlohmann::json& doc);

nlohmann::ordered_json dataset_to_json(const Dataset& ds);

/// Checks every dataset invariant; throws SchemaError on the first violation.
void validate(const Dataset& ds);

}  // namespace hqa
