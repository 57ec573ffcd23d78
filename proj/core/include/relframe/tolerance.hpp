#pragma once

namespace relframe {

inline constexpr double kDefaultTolerance = 1e-9;

// Process-wide absolute entrywise tolerance. Set once at startup (or inside
// a ToleranceScope in tests); treated as read-only while computations run.
double tolerance() noexcept;
void set_tolerance(double tau);

class ToleranceScope {
 public:
  explicit ToleranceScope(double tau);
  ~ToleranceScope();
  ToleranceScope(const ToleranceScope&) = delete;
  ToleranceScope& operator=(const ToleranceScope&) = delete;

 private:
  double saved_;
};

}  // namespace relframe
