#ifndef HECKEANEMIC_QUADRATIC_HPP
#define HECKEANEMIC_QUADRATIC_HPP

#include <vector>

namespace heckeanemic {

// a x^2 + b xy + c y^2 with b^2 - 4ac < 0 and a > 0.  Reduced means
// |b| <= a <= c, with b >= 0 whenever |b| = a or a = c.
struct QuadForm {
  long a = 0;
  long b = 0;
  long c = 0;

  long discriminant() const { return b * b - 4 * a * c; }
  bool is_reduced() const;
  QuadForm reduced() const;

  auto operator<=>(const QuadForm&) const = default;
};

// All reduced forms of negative discriminant D, sorted.
std::vector<QuadForm> reduced_forms(long D);

// h(D) by exhaustive enumeration of reduced forms (a <= sqrt(|D|/3)).
// Throws InvalidDiscriminant unless D is a negative fundamental discriminant.
long class_number_imag(long D);

// For prime N = 3 mod 4: whether the anemic algebra is a proper subalgebra,
// equivalently h(-N) > 1.  Throws WrongResidueClass otherwise.
bool predict_index_nontrivial(long N);

}  // namespace heckeanemic

#endif
