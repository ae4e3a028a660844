#include "iosc/runtime.hpp"

#include <iostream>
#include <sstream>

namespace iosc::runtime {
namespace {

std::atomic<std::uint64_t> g_budget{kDefaultBudget};
std::atomic<unsigned> g_threads{0};
std::atomic<bool> g_force{false};
std::atomic<bool> g_force_warned{false};

}  // namespace

std::uint64_t budget() { return g_budget.load(); }
void set_budget(std::uint64_t points) { g_budget.store(points); }

unsigned threads() {
  const unsigned t = g_threads.load();
  if (t != 0) return t;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}
void set_threads(unsigned n) { g_threads.store(n); }

bool force() { return g_force.load(); }
void set_force(bool on) { g_force.store(on); }

void check_budget(long double work, const std::string& what) {
  if (work <= static_cast<long double>(budget())) return;
  if (force()) {
    if (!g_force_warned.exchange(true)) {
      std::cerr << "warning: " << what << " needs ~" << static_cast<double>(work)
                << " evaluation points, above the budget of " << budget()
                << "; continuing because force mode is on\n";
    }
    return;
  }
  std::ostringstream os;
  os << what << ": needs ~" << static_cast<double>(work)
     << " evaluation points, budget is " << budget();
  throw BudgetExceeded(os.str());
}

void WorkMeter::add(std::uint64_t points) {
  const std::uint64_t total = used_.fetch_add(points) + points;
  if (total > budget() && !force()) {
    std::ostringstream os;
    os << what_ << ": exceeded the budget of " << budget() << " evaluation points";
    throw BudgetExceeded(os.str());
  }
}

}  // namespace iosc::runtime
