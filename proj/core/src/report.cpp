#include "relframe/report.hpp"

#include <algorithm>

namespace relframe {

std::string_view to_string(Evidence evidence) {
  return evidence == Evidence::Exact ? "exact" : "sampled";
}

bool CheckReport::passed() const {
  return std::all_of(items.begin(), items.end(),
                     [](const CheckItem& item) { return item.passed; });
}

double CheckReport::max_deviation() const {
  double worst = 0.0;
  for (const auto& item : items) worst = std::max(worst, item.deviation);
  return worst;
}

const CheckItem* CheckReport::find(std::string_view name) const {
  for (const auto& item : items) {
    if (item.name == name) return &item;
  }
  return nullptr;
}

std::vector<Witness> CheckReport::witnesses() const {
  std::vector<Witness> all;
  for (const auto& item : items) {
    all.insert(all.end(), item.witnesses.begin(), item.witnesses.end());
  }
  return all;
}

}  // namespace relframe
