#pragma once

// JSON, CSV and text renderings of root systems, filters and series.

#include <string>
#include <vector>

#include "adjfilter/adjoint_engine.hpp"
#include "json.hpp"

namespace adjfilter {

nlohmann::json root_system_json(const RootSystem& sys);
nlohmann::json filter_json(const RootSystem& sys, const FilterChain& f);
nlohmann::json alpha_series_json(const RootSystem& sys, const AlphaSeries& a);

struct ComparisonRow {
  std::string family;
  int rank = 0;
  Residue prime = 0;
  int lcs_length = 0;
  int alpha_length = 0;
  int grading_dim = 0;
  std::vector<std::pair<int, int>> histogram;  // (log order, count), increasing

  static ComparisonRow from_series(const AlphaSeries& a);
  std::string csv() const;
};

inline constexpr const char* kComparisonHeader = "family,rank,prime,lcs_length,alpha_length,grading_dim,histogram";

// "1:count;2:count"
std::string format_histogram(const std::vector<std::pair<int, int>>& h);

std::string series_csv(const RootSystem& sys, const AlphaSeries& a, bool header);
std::string series_text(const RootSystem& sys, const AlphaSeries& a);

}  // namespace adjfilter
