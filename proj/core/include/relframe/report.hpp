#pragma once

#include <string>
#include <vector>

#include "relframe/errors.hpp"

namespace relframe {

/// How a check reached its verdict.
enum class Evidence {
  Exact,    // closed-form certificate (e.g. Choi matrix PSD)
  Sampled,  // finitely many probe inputs; never a proof
};

std::string_view to_string(Evidence evidence);

struct CheckItem {
  std::string name;
  bool passed = true;
  double deviation = 0.0;  // worst violation observed; 0 when exact
  double value = 0.0;      // item-specific headline number (e.g. norm ratio)
  Evidence evidence = Evidence::Exact;
  std::vector<Witness> witnesses;
  std::string note;
};

struct CheckReport {
  std::string check;
  std::vector<CheckItem> items;

  bool passed() const;
  double max_deviation() const;
  const CheckItem* find(std::string_view name) const;
  std::vector<Witness> witnesses() const;
};

}  // namespace relframe
