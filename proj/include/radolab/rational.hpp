#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace radolab {

using BigInt = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Serializes as "num/den", denominator always explicit ("2/3", "0/1", "4/1").
inline std::string fraction_str(const Rat& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const Rat& r) { return r.get_d(); }

/// base^exp with the series convention 0^0 = 1.
inline Rat rat_pow(const Rat& base, unsigned long exp) {
  if (exp == 0) return Rat(1);
  Rat out;
  mpz_pow_ui(mpq_numref(out.get_mpq_t()), mpq_numref(base.get_mpq_t()), exp);
  mpz_pow_ui(mpq_denref(out.get_mpq_t()), mpq_denref(base.get_mpq_t()), exp);
  return out;  // base canonical => powers canonical
}

/// n_(k) = n(n-1)...(n-k+1), with n_(0) = 1 (even for n = 0).
inline BigInt falling_factorial(unsigned long n, unsigned long k) {
  if (k > n) return BigInt(0);
  BigInt out(1);
  for (unsigned long i = 0; i < k; ++i) out *= (n - i);
  return out;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt out;
  if (k > n) return BigInt(0);
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

}  // namespace radolab
