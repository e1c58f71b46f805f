#pragma once

#include <string>
#include <vector>

#include "ghost/ext_rational.hpp"
#include "ghost/newton.hpp"

namespace ghost {

/// On-disk slope list: {"p":..,"model":..,"weight":..,"count":..,
/// "slopes":["1","5","5/2",...]} with every rational a decimal string.
struct SlopeFile {
  long p = 0;
  std::string model;
  std::string weight;
  long long count = 0;
  std::vector<Rational> slopes;
};

std::string emit_slope_file(const SlopeFile& f);
SlopeFile parse_slope_file_text(const std::string& text);
SlopeFile read_slope_file(const std::string& path);

}  // namespace ghost
