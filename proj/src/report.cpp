#include "adjfilter/report.hpp"

#include <map>
#include <sstream>

namespace adjfilter {

namespace {

nlohmann::json root_list(const RootSystem& sys, const RootSet& s) {
  nlohmann::json out = nlohmann::json::array();
  for (int r : s.members()) out.push_back(format_root(sys.root(r)));
  return out;
}

nlohmann::json terms_json(const RootSystem& sys, const FilterChain& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : f.terms())
    terms.push_back({{"index", t.canonical}, {"roots", root_list(sys, t.roots)}, {"log_order", t.roots.count()}});
  return terms;
}

}  // namespace

nlohmann::json root_system_json(const RootSystem& sys) {
  nlohmann::json roots = nlohmann::json::array();
  nlohmann::json heights = nlohmann::json::array();
  for (int r = 0; r < sys.num_positive(); ++r) {
    roots.push_back(sys.root(r).coeffs);
    heights.push_back(sys.height(r));
  }
  return {{"family", to_string(sys.family())}, {"rank", sys.rank()}, {"roots", roots}, {"heights", heights}};
}

nlohmann::json filter_json(const RootSystem& sys, const FilterChain& f) {
  return {{"arity", f.arity()}, {"terms", terms_json(sys, f)}};
}

nlohmann::json alpha_series_json(const RootSystem& sys, const AlphaSeries& a) {
  return {{"family", to_string(a.family)},
          {"rank", a.rank},
          {"prime", a.prime},
          {"grading_dim", a.grading_dim},
          {"iterations", a.iterations},
          {"terms", terms_json(sys, a.chain())},
          {"factor_log_orders", a.factor_log_orders},
          {"lcs_length", a.lcs_length},
          {"alpha_length", a.alpha_length()}};
}

ComparisonRow ComparisonRow::from_series(const AlphaSeries& a) {
  ComparisonRow row;
  row.family = to_string(a.family);
  row.rank = a.rank;
  row.prime = a.prime;
  row.lcs_length = a.lcs_length;
  row.alpha_length = a.alpha_length();
  row.grading_dim = a.grading_dim;
  std::map<int, int> h;
  for (int x : a.factor_log_orders) ++h[x];
  row.histogram.assign(h.begin(), h.end());
  return row;
}

std::string format_histogram(const std::vector<std::pair<int, int>>& h) {
  std::string out;
  for (const auto& [k, v] : h) {
    if (!out.empty()) out += ';';
    out += std::to_string(k) + ":" + std::to_string(v);
  }
  return out;
}

std::string ComparisonRow::csv() const {
  std::ostringstream os;
  os << family << ',' << rank << ',' << prime << ',' << lcs_length << ',' << alpha_length << ',' << grading_dim
     << ',' << format_histogram(histogram);
  return os.str();
}

std::string series_csv(const RootSystem& sys, const AlphaSeries& a, bool header) {
  std::ostringstream os;
  if (header) os << "family,rank,prime,term,index,log_order,factor_log_order,roots\n";
  const auto& terms = a.chain().terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::string idx, roots;
    for (std::size_t q = 0; q < terms[i].canonical.size(); ++q) idx += (q ? " " : "") + std::to_string(terms[i].canonical[q]);
    for (int r : terms[i].roots.members()) {
      if (!roots.empty()) roots += ';';
      std::string c = format_root(sys.root(r));
      for (auto& ch : c)
        if (ch == ',') ch = ' ';
      roots += c;
    }
    const int factor = i + 1 < terms.size() ? terms[i].roots.count() - terms[i + 1].roots.count() : 0;
    os << to_string(a.family) << ',' << a.rank << ',' << a.prime << ',' << i << ',' << idx << ','
       << terms[i].roots.count() << ',' << factor << ',' << roots << '\n';
  }
  return os.str();
}

std::string series_text(const RootSystem& sys, const AlphaSeries& a) {
  std::ostringstream os;
  os << system_name(a.family, a.rank) << " over Z/" << a.prime << "Z: lower central length " << a.lcs_length
     << ", adjoint series length " << a.alpha_length() << ", grading N^" << a.grading_dim << " after "
     << a.iterations << " refinement(s)\n";
  const auto& terms = a.chain().terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    os << "  " << format_index(terms[i].canonical) << "  log_p order " << terms[i].roots.count();
    if (i + 1 < terms.size()) os << "  factor p^" << terms[i].roots.count() - terms[i + 1].roots.count();
    os << '\n';
  }
  (void)sys;
  return os.str();
}

}  // namespace adjfilter
