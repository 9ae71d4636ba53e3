#include "fkn/parallel.hpp"

#include <cstdlib>
#include <string>

namespace fkn {

unsigned default_jobs() {
  if (const char *env = std::getenv("FKN_JOBS")) {
    try {
      const unsigned long v = std::stoul(env);
      if (v > 0)
        return static_cast<unsigned>(v);
    } catch (const std::exception &) {
    }
  }
  return 1;
}

} // namespace fkn
