#include "heckeanemic/primes.hpp"

#include <stdexcept>

namespace heckeanemic {

bool is_prime(long n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (long p = 5; p * p <= n; p += 6) {
    if (n % p == 0 || n % (p + 2) == 0) return false;
  }
  return true;
}

std::vector<long> primes_in_range(long lo, long hi) {
  std::vector<long> out;
  for (long n = std::max(lo, 2L); n <= hi; ++n) {
    if (is_prime(n)) out.push_back(n);
  }
  return out;
}

long xgcd(long a, long b, long& x, long& y) {
  long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    long q = a / b;
    long t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
    t = y0 - q * y1;
    y0 = y1;
    y1 = t;
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  x = x0;
  y = y0;
  return a;
}

long inv_mod(long a, long n) {
  long x, y;
  a %= n;
  if (a < 0) a += n;
  long g = xgcd(a, n, x, y);
  if (g != 1) throw std::invalid_argument("inv_mod: not invertible");
  x %= n;
  if (x < 0) x += n;
  return x;
}

}  // namespace heckeanemic
