#pragma once

// Exact arithmetic used everywhere in the library. No floating point:
// all coefficients, degrees and LP data are GMP rationals.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace virblocks {

using Int = mpz_class;
using Rat = mpq_class;

// q = num/den, canonicalized. den must be nonzero.
inline Rat ratio(const Int& num, const Int& den)
{
    if (sgn(den) == 0)
        throw std::invalid_argument("ratio: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat ratio(long num, long den)
{
    return ratio(Int(num), Int(den));
}

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

// Serialized as "p" or "p/q"; the JSON interfaces never emit floats.
inline std::string rat_string(const Rat& q)
{
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat parse_rat(const std::string& s)
{
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("parse_rat: bad rational '" + s + "'");
    q.canonicalize();
    return q;
}

inline Int fibonacci(unsigned long n)
{
    Int f;
    mpz_fib_ui(f.get_mpz_t(), n);
    return f;
}

inline Int binomial(unsigned long n, unsigned long k)
{
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

} // namespace virblocks
