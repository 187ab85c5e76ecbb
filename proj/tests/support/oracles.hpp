#pragma once

#include <array>
#include <utility>

// Independent reference computations. Everything here is deliberately
// self-contained (plain <cmath>, no hypflow includes) so the values it
// produces cross-check the library rather than restate it.
namespace oracle {

// Frozen reference values (computed with 40-digit arithmetic).
inline constexpr double kEquilateralSide2Angle = 0.65996640421579933;  // sides (2,2,2)
inline constexpr double kTetraK = 4.3032860945321882;                  // r = 1, phi = 0
inline constexpr double kTetraArea = 4.6467737637695805;
inline constexpr double kTetraFaceArea = 1.1616934409423951;
inline constexpr double kTetraR = 1.2611189012777348;        // K / disk area at r = 1
inline constexpr double kTetraRtilde = 0.49590205045517788;  // K / (2 pi sinh^2 1)
inline constexpr double kTetraKOverCosh1 = 2.7887629443599553;
inline constexpr double kLenUnitRadiiOrthogonal = 1.513374006596504;  // (1, 1, pi/2)

// Zero-curvature radii of the genus-2 octagon fixture (center, rim). The
// flat metric forces the cone angle sums 8 theta_c = 2 pi and
// 16 theta_v = 2 pi, which pins the triangle angles exactly.
inline constexpr double kOctagonRc = 0.91988152819707758;
inline constexpr double kOctagonRv = 1.5285709194809982;

// Hyperbolic trigonometry, written out directly.
double edge_len(double ri, double rj, double phi);
std::array<double, 3> angles(double l1, double l2, double l3);  // angles[m] opposite side m

// Symmetric reduction of the octagon fixture at radii (rc, rv), weights 0:
// every face is (c, v, v), so the two curvatures close over one triangle.
double octagon_kc(double rc, double rv);
double octagon_kv(double rc, double rv);

// Nested bisection on the symmetric reduction, resolved to 1e-12.
std::pair<double, double> octagon_zero_metric();

}  // namespace oracle
