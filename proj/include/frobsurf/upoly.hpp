#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "frobsurf/field.hpp"

// Dense univariate polynomials over a Field, lowest coefficient first.
// Helpers for point sampling and plane-section counting; not part of the
// homogeneous Poly machinery.
namespace frobsurf::upoly {

using UPoly = std::vector<Elem>;

void trim(UPoly& a);
int deg(const UPoly& a);
UPoly add(const Field& F, const UPoly& a, const UPoly& b);
UPoly sub(const Field& F, const UPoly& a, const UPoly& b);
UPoly mul(const Field& F, const UPoly& a, const UPoly& b);
UPoly scale(const Field& F, const UPoly& a, Elem c);
UPoly monic(const Field& F, const UPoly& a);
void divmod(const Field& F, const UPoly& a, const UPoly& b, UPoly& quot, UPoly& rem);
UPoly mod(const Field& F, const UPoly& a, const UPoly& b);
UPoly quotient(const Field& F, const UPoly& a, const UPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(const Field& F, UPoly a, UPoly b);
UPoly derivative(const Field& F, const UPoly& a);
UPoly powmod(const Field& F, UPoly base, std::uint64_t e, const UPoly& m);
Elem eval(const Field& F, const UPoly& a, Elem x);

/// Distinct roots in F, ascending.  The zero polynomial is rejected (empty result).
std::vector<Elem> roots(const Field& F, const UPoly& a);

/// Number of distinct roots over the algebraic closure (degree of the radical).
int radical_degree(const Field& F, const UPoly& a);

/// Resultant of a and b taken at their actual degrees.
Elem resultant(const Field& F, UPoly a, UPoly b);

/// Lagrange interpolation through (xs[i], ys[i]) with distinct xs.
UPoly interpolate(const Field& F, std::span<const Elem> xs, std::span<const Elem> ys);

}  // namespace frobsurf::upoly
