#include "parallel.hpp"

#include <cstdlib>
#include <string>

#include "kronspin/matfree.hpp"

namespace kronspin {

unsigned default_workers() {
  if (const char* env = std::getenv("KRONSPIN_THREADS")) {
    try {
      const long value = std::stol(env);
      if (value > 0) return static_cast<unsigned>(value);
    } catch (const std::exception&) {
      // Fall through to the machine default.
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace kronspin
