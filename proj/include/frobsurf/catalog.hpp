#pragma once

// Fixed surfaces and curves used by the replay jobs and the tests.

namespace frobsurf::catalog {

// Over GF(4): Frobenius classical cubic whose h is X0^6+X1^6+X2^2*X3^4.
inline constexpr const char* kCubicGF4 = "X0^3 + X1^3 + X2^2*X3";

// Over GF(4): the Hermitian surface, h = f^2.
inline constexpr const char* kHermitianGF4 = "X0^3 + X1^3 + X2^3 + X3^3";

// Over GF(5): smooth cubic whose Phi^S splits off fifteen F_5-lines.
inline constexpr const char* kCubicGF5 =
    "2*X0*X1^2 + 2*X1^3 + 2*X0^2*X2 + 2*X0*X1*X2 + X1^2*X2 + 2*X0*X2^2 + 3*X1*X2^2 + 3*X2^3"
    " - X0^2*X3 + X0*X1*X3 + X1^2*X3 + 2*X1*X2*X3 + 2*X2^2*X3 + 3*X0*X3^2 - X1*X3^2 + X2*X3^2";
// The two auxiliary equations of the residual sextic on it.
inline constexpr const char* kSexticQuadricGF5 =
    "X0^2 + 2*X0*X1 + 3*X1^2 + 2*X0*X2 + X1*X2 + 3*X0*X3 + 4*X2*X3 + X3^2";
inline constexpr const char* kSexticCubicGF5 =
    "X0*X2*X3 + X2^2*X3 + 2*X0*X3^2 + X1*X3^2 + X2*X3^2 + 3*X3^3";

// Quadric through the residual sextic of Phi^S, recovered from the points of
// Phi^S over GF(125) off the fifteen lines.  The printed pair above meets the
// cubic in only four F_5-points; V(f, this quadric) has eighteen.
inline constexpr const char* kResidualQuadricGF5 =
    "X0*X1 + 2*X0*X3 + 4*X1^2 + 3*X1*X2 + 3*X1*X3 + 4*X2^2 + 2*X2*X3";

// Over GF(3): singular cubic, Phi^S holds one F_3-line.
inline constexpr const char* kSingularCubicGF3 =
    "-X0^3 - X1^3 + X0^2*X2 + X0*X1*X2 + X1^2*X2 + X0*X2^2 - X1*X2^2 - X0*X1*X3"
    " + X1^2*X3 + X0*X2*X3 - X2^2*X3 + X0*X3^2 + X1*X3^2 - X2*X3^2 + X3^3";

// Over GF(2): singular quartic.
inline constexpr const char* kSingularQuarticGF2 =
    "X0^2*X1^2 + X0*X1^3 + X0^3*X2 + X0^2*X1*X2 + X1^3*X2 + X0^2*X2^2 + X1^2*X2^2 + X0*X2^3"
    " + X1*X2^3 + X2^4 + X0^3*X3 + X1^3*X3 + X0*X1*X2*X3 + X2^3*X3 + X0^2*X3^2"
    " + X1^2*X3^2 + X0*X2*X3^2 + X1*X2*X3^2 + X2^2*X3^2 + X0*X3^3 + X1*X3^3";

// Twisted cubic and a plane cubic, for order computations.
inline constexpr const char* kTwistedCubic = "X0*X2 - X1^2; X1*X3 - X2^2; X0*X3 - X1*X2";
inline constexpr const char* kPlaneCubic = "X3; X1^2*X2 - X0^3 - X2^3";

}  // namespace frobsurf::catalog
