#include "relframe/tolerance.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

namespace relframe {
namespace {
std::atomic<double> g_tolerance{kDefaultTolerance};
}

double tolerance() noexcept { return g_tolerance.load(std::memory_order_relaxed); }

void set_tolerance(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("tolerance must be a positive finite number");
  }
  g_tolerance.store(tau, std::memory_order_relaxed);
}

ToleranceScope::ToleranceScope(double tau) : saved_(tolerance()) { set_tolerance(tau); }
ToleranceScope::~ToleranceScope() { g_tolerance.store(saved_, std::memory_order_relaxed); }

}  // namespace relframe
