#include "gmrfinfo/parallel.hpp"

#include <cstdlib>
#include <string>

namespace gmrfinfo {

unsigned default_threads() {
  if (const char* env = std::getenv("GMRFINFO_THREADS"); env != nullptr && *env != '\0') {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // fall through to the hardware count
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace gmrfinfo
