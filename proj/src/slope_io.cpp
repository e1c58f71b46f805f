#include "ghost/slope_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ghost {

using nlohmann::ordered_json;

std::string emit_slope_file(const SlopeFile& f) {
  ordered_json j;
  j["p"] = f.p;
  j["model"] = f.model;
  j["weight"] = f.weight;
  j["count"] = f.count;
  ordered_json arr = ordered_json::array();
  for (const auto& s : f.slopes) arr.push_back(rational_to_string(s));
  j["slopes"] = std::move(arr);
  return j.dump(2) + "\n";
}

SlopeFile parse_slope_file_text(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  SlopeFile f;
  f.p = j.value("p", 0L);
  f.model = j.value("model", std::string());
  f.weight = j.value("weight", std::string());
  if (!j.contains("slopes") || !j.at("slopes").is_array())
    throw std::invalid_argument("slope file needs a \"slopes\" array");
  for (const auto& v : j.at("slopes")) {
    if (!v.is_string()) throw std::invalid_argument("slopes must be exact rational strings");
    f.slopes.push_back(rational_from_string(v.get<std::string>()));
  }
  f.count = j.value("count", static_cast<long long>(f.slopes.size()));
  return f;
}

SlopeFile read_slope_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw std::invalid_argument("cannot open slope file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_slope_file_text(ss.str());
}

}  // namespace ghost
