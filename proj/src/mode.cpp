#include "upsharp/mode.hpp"

#include <string>

#include "upsharp/errors.hpp"

namespace upsharp {

Mode::Mode(int dimension, int degree) : dimension_(dimension), degree_(degree) {
  if (dimension < 1)
    throw domain_error("mode dimension must be >= 1, got " + std::to_string(dimension));
  if (degree < 0)
    throw domain_error("mode degree must be >= 0, got " + std::to_string(degree));
  if (dimension == 1 && degree != 0)
    throw domain_error("the line carries only the degree-zero mode");
  const std::int64_t k = degree;
  eigenvalue_ = k * (k + dimension - 2);
}

Mode make_mode(int dimension, int degree) { return Mode(dimension, degree); }

}  // namespace upsharp
