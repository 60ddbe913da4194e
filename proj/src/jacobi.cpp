#include <stdexcept>
#include <utility>

#include "lpdiv/finite_field.hpp"

namespace lpdiv {

int jacobi_symbol(std::int64_t a, std::int64_t n) {
  if (n <= 0 || n % 2 == 0) throw std::invalid_argument("jacobi_symbol: n must be odd and positive");
  a %= n;
  if (a < 0) a += n;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

}  // namespace lpdiv
