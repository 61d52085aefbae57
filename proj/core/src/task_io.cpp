#include "cogrip/task_io.hpp"

#include <fstream>

#include "cogrip/error.hpp"

namespace cogrip {

using nlohmann::json;

json task_to_json(const TaskInstance& task) {
  json pieces = json::array();
  for (const PlacedPiece& p : task.board.pieces()) {
    json tiles = json::array();
    for (const Coord& t : p.tiles) tiles.push_back({t.x, t.y});
    pieces.push_back({{"id", p.id},
                      {"shape", std::string(1, static_cast<char>(name(p.symbolic.shape)[0] - 'a' + 'A'))},
                      {"color", name(p.symbolic.color)},
                      {"area", name(p.symbolic.area)},
                      {"tiles", std::move(tiles)}});
  }
  return {{"id", task.id},
          {"size", task.board.size()},
          {"t_max", task.t_max},
          {"template_id", task.template_id},
          {"dta", task.dta},
          {"target_id", task.target_id},
          {"pieces", std::move(pieces)}};
}

TaskInstance task_from_json(const json& j) {
  try {
    std::vector<PlacedPiece> pieces;
    for (const json& p : j.at("pieces")) {
      const auto shape = parse_shape(p.at("shape").get<std::string>());
      const auto color = parse_color(p.at("color").get<std::string>());
      const auto area = parse_area(p.at("area").get<std::string>());
      if (!shape || !color || !area) throw ValidationError("unknown shape, color or area in " + p.dump());
      const json& tiles = p.at("tiles");
      if (tiles.size() != 5) throw ValidationError("piece must have exactly 5 tiles: " + p.dump());
      Cells cells{};
      for (std::size_t i = 0; i < 5; ++i) cells[i] = {tiles[i].at(0).get<int>(), tiles[i].at(1).get<int>()};
      pieces.push_back({p.at("id").get<int>(), {*shape, *color, *area}, cells});
    }
    const int size = j.at("size").get<int>();
    TaskInstance task{j.value("id", 0),
                      Board(size, std::move(pieces)),
                      j.at("target_id").get<int>(),
                      j.contains("t_max") ? j.at("t_max").get<int>() : max_steps(size),
                      j.value("template_id", 1),
                      0};
    const SymbolicPiece target = task.target().symbolic;
    for (const SymbolicPiece& d : task.distractors()) task.dta += d.area == target.area ? 1 : 0;
    if (j.contains("dta") && j.at("dta").get<int>() != task.dta) {
      throw ValidationError("task " + std::to_string(task.id) + ": dta does not match the board");
    }
    validate_task(task);
    return task;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed task: ") + e.what());
  } catch (const LookupError& e) {
    throw ValidationError(std::string("malformed task: ") + e.what());
  }
}

std::string task_to_line(const TaskInstance& task) { return task_to_json(task).dump(); }

void write_split(const std::filesystem::path& path, const TaskSplit& split) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path.string() + " for writing");
  for (const TaskInstance& t : split.tasks) f << task_to_line(t) << '\n';
}

std::vector<TaskInstance> read_split(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open split file " + path.string());
  std::vector<TaskInstance> tasks;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ValidationError(path.string() + ":" + std::to_string(tasks.size() + 1) + ": " + e.what());
    }
    tasks.push_back(task_from_json(j));
  }
  return tasks;
}

std::string split_file_name(const std::string& split, int board_size) {
  return split + "_" + std::to_string(board_size) + ".jsonl";
}

}  // namespace cogrip
