#ifndef HECKEANEMIC_ERRORS_HPP
#define HECKEANEMIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace heckeanemic {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotPrime : Error {
  explicit NotPrime(long n) : Error("level must be prime, got " + std::to_string(n)) {}
};

struct InvalidSymbol : Error {
  InvalidSymbol(long c, long d, long n)
      : Error("(" + std::to_string(c) + ":" + std::to_string(d) + ") is not a point of P^1(Z/" +
              std::to_string(n) + ")") {}
};

struct NotASublattice : Error {
  using Error::Error;
  NotASublattice() : Error("row span of sub is not contained in row span of sup") {}
};

struct RankDeficient : Error {
  using Error::Error;
};

struct BoundTooSmall : Error {
  using Error::Error;
};

struct NoStabilization : Error {
  using Error::Error;
};

struct InvalidDiscriminant : Error {
  explicit InvalidDiscriminant(long d)
      : Error("not a negative fundamental discriminant: " + std::to_string(d)) {}
};

struct WrongResidueClass : Error {
  explicit WrongResidueClass(long n)
      : Error("level " + std::to_string(n) + " is not congruent to 3 mod 4") {}
};

}  // namespace heckeanemic

#endif
