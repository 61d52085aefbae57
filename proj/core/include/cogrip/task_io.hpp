#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cogrip/taskgen.hpp"

namespace cogrip {

// {"id", "size", "t_max", "template_id", "dta", "target_id",
//  "pieces": [{"id", "shape", "color", "area", "tiles": [[x, y], ...]}]}
nlohmann::json task_to_json(const TaskInstance& task);

// Parses and validates. Throws ValidationError on malformed input.
TaskInstance task_from_json(const nlohmann::json& j);

std::string task_to_line(const TaskInstance& task);

// JSON-lines, one task per line.
void write_split(const std::filesystem::path& path, const TaskSplit& split);
std::vector<TaskInstance> read_split(const std::filesystem::path& path);

std::string split_file_name(const std::string& split, int board_size);  // "train_12.jsonl"

}  // namespace cogrip
