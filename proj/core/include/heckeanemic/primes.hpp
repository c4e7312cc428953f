#ifndef HECKEANEMIC_PRIMES_HPP
#define HECKEANEMIC_PRIMES_HPP

#include <vector>

namespace heckeanemic {

bool is_prime(long n);

// Primes p with lo <= p <= hi, ascending.
std::vector<long> primes_in_range(long lo, long hi);

// Extended gcd: returns g = gcd(a, b) and writes x, y with a*x + b*y = g.
long xgcd(long a, long b, long& x, long& y);

// Inverse of a modulo n (n > 1, gcd(a, n) = 1).
long inv_mod(long a, long n);

}  // namespace heckeanemic

#endif
