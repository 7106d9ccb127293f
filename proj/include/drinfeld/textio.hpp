#pragma once

#include <string>

#include "drinfeld/localfield.hpp"
#include "drinfeld/poly.hpp"
#include "drinfeld/ratfunc.hpp"

namespace drinfeld {

// Nonzero field element as text: a prime-field coefficient prints as its
// integer 0..p-1, a proper extension coefficient as g^j with g the field's
// fixed generator (the identity prints as 1).
std::string coeff_to_text(const FqPtr& F, FqElem c);

// Polynomial as text: terms c*T^e joined by " + ", highest exponent first,
// with the usual simplifications (unit coefficients and the exponents 0, 1
// are left implicit).  The zero polynomial prints as "0".
std::string poly_to_text(const PolyT& f);

// Reduced rational function as "num" or "(num) / (den)".
std::string ratfunc_to_text(const RatFunc& x);

// Inverse of poly_to_text, leniently: whitespace is free, terms may come in
// any order, '-' works as separator and leading sign, repeated exponents
// accumulate.  Coefficients are integers (reduced mod p) or generator powers
// g^j; bare g means g^1.
PolyT poly_parse(const FqPtr& F, const std::string& text);

// Inverse of LocalElem::str(): c*u^i terms joined by '+' with an optional
// trailing (O(u^N)) marker; "0" parses to exact zero.  Printed elements
// round-trip bit-exactly.
LocalElem localelem_parse(const LFPtr& lf, const std::string& text);

}  // namespace drinfeld
