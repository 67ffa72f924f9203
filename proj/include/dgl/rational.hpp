#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dgl {

// Exact scalars. mpq_class keeps values canonical (lowest terms, positive
// denominator) as long as values are built through its arithmetic.
using Rational = mpq_class;
using Vec = std::vector<Rational>;

class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Parses "p", "p/q" or "-p/q". Throws ValidationError on malformed input or
/// a zero denominator.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

bool is_zero(const Vec& v);
Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Rational& s, const Vec& v);
void axpy(Vec& y, const Rational& s, const Vec& x);

/// a/b in lowest terms. mpq_class(a, b) alone does not canonicalize.
inline Rational frac(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

inline int koszul(int a, int b) { return ((a & 1) && (b & 1)) ? -1 : 1; }
inline int parity_sign(int a) { return (a & 1) ? -1 : 1; }

}  // namespace dgl
