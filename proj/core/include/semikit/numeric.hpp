#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace semikit {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline int sgn(const Int& x) { return x.sign(); }
inline int sgn(const Rat& x) { return x.sign(); }

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

/* Floor division, exact for any signs of a (b > 0). */
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int floor_rat(const Rat& x) {
    return floor_div(numerator(x), denominator(x));
}

inline Int ceil_rat(const Rat& x) {
    return -floor_rat(-x);
}

inline Rat rat(const Int& num, const Int& den) { return Rat(num, den); }

}  // namespace semikit
