#include "heckeanemic/quadratic.hpp"

#include <algorithm>
#include <cstdlib>

#include "heckeanemic/errors.hpp"
#include "heckeanemic/primes.hpp"

namespace heckeanemic {

bool QuadForm::is_reduced() const {
  if (a <= 0 || c < a) return false;
  if (std::abs(b) > a) return false;
  if ((std::abs(b) == a || a == c) && b < 0) return false;
  return true;
}

QuadForm QuadForm::reduced() const {
  QuadForm f = *this;
  while (!f.is_reduced()) {
    // normalize b into (-a, a]
    long twoa = 2 * f.a;
    long r = ((f.b + f.a) % twoa + twoa) % twoa - f.a;
    long k = (f.b - r) / twoa;
    f.c = f.a * k * k - f.b * k + f.c;
    f.b = r;
    if (f.a > f.c) {
      f = {f.c, -f.b, f.a};
    } else if (f.a == f.c && f.b < 0) {
      f.b = -f.b;
    } else if (f.b == -f.a) {
      f.b = f.a;
    }
  }
  return f;
}

static bool squarefree(long n) {
  for (long p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

static bool fundamental_discriminant(long D) {
  if (D >= 0) return false;
  long r = ((D % 4) + 4) % 4;
  if (r == 1) return squarefree(-D);
  if (r != 0) return false;
  long m = D / 4;
  long rm = ((m % 4) + 4) % 4;
  return (rm == 2 || rm == 3) && squarefree(-m);
}

std::vector<QuadForm> reduced_forms(long D) {
  if (!fundamental_discriminant(D)) throw InvalidDiscriminant(D);
  std::vector<QuadForm> forms;
  for (long a = 1; 3 * a * a <= -D; ++a) {
    for (long b = -a; b <= a; ++b) {
      long num = b * b - D;
      if (num % (4 * a) != 0) continue;
      long c = num / (4 * a);
      QuadForm f{a, b, c};
      if (f.is_reduced()) forms.push_back(f);
    }
  }
  std::sort(forms.begin(), forms.end());
  return forms;
}

long class_number_imag(long D) { return (long)reduced_forms(D).size(); }

bool predict_index_nontrivial(long N) {
  if (!is_prime(N)) throw NotPrime(N);
  if (N % 4 != 3) throw WrongResidueClass(N);
  return class_number_imag(-N) > 1;
}

}  // namespace heckeanemic
