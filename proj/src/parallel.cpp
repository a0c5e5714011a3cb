#include "upsharp/parallel.hpp"

#include <cstdlib>
#include <string>

#include "upsharp/errors.hpp"

namespace upsharp {

int workers_from_env() {
  const char* v = std::getenv("UPSHARP_WORKERS");
  if (!v || !*v) return 1;
  try {
    const int n = std::stoi(v);
    if (n < 1) throw domain_error("UPSHARP_WORKERS must be a positive integer");
    return n;
  } catch (const std::logic_error&) {
    throw domain_error("UPSHARP_WORKERS must be a positive integer");
  }
}

}  // namespace upsharp
