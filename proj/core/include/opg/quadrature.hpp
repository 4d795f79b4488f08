#pragma once

#include "opg/etendue.hpp"
#include "opg/quantities.hpp"

namespace opg {

/// Planar scene patch, centered at the origin of its own plane.  `distance`
/// is measured from the patch center to the pupil center along the optical
/// axis; `tilt` is the angle between the patch normal and that axis
/// (0 = normal incidence).
struct FootprintPatch {
  enum class Shape { Rectangle, Disc };

  static FootprintPatch rectangle(Length width, Length height, Length distance,
                                  Angle tilt = radians(0.0));
  static FootprintPatch disc(Length radius, Length distance,
                             Angle tilt = radians(0.0));

  Shape shape = Shape::Rectangle;
  Length width;     // rectangle only
  Length height;    // rectangle only
  Length radius;    // disc only
  Length distance;
  Angle tilt;
};

/// Circular entrance pupil, in the plane perpendicular to the optical axis
/// at the patch distance, optionally decentred.
struct PupilDisc {
  Length diameter;
  Length offset_x = meters(0.0);
  Length offset_y = meters(0.0);
};

struct QuadratureSpec {
  enum class Rule {
    GaussLegendreTensor,  ///< `order` Gauss-Legendre points per dimension
    MidpointGrid,         ///< uniform midpoints: n_area radial/linear, n_angle angular
  };

  Rule rule = Rule::GaussLegendreTensor;
  int order = 8;
  int n_area = 32;
  int n_angle = 32;
  double target_rel_tol = 1e-6;
  int max_refinements = 4;  ///< each refinement doubles the rule density
};

/// Numerically evaluates the defining surface-solid-angle integral
///
///   F = int_patch int_{Omega(r)} cos(theta) dOmega dA
///
/// where Omega(r) is the solid angle subtended by the pupil disc as seen
/// from the patch point r and theta is measured from the patch normal.  The
/// inner integral runs over the pupil disc in polar coordinates with the
/// exact solid-angle kernel; no additional obliquity factor is applied
/// beyond the single cos(theta) of the definition.  Node sums use
/// compensated summation in a fixed order, so a given spec is
/// bit-reproducible.
///
/// The rule is refined (density doubled) until two successive levels agree
/// to spec.target_rel_tol; exhausting spec.max_refinements throws
/// ConvergenceError carrying the best estimate.
EtendueResult quadrature_etendue(const FootprintPatch& patch, const PupilDisc& pupil,
                                 const QuadratureSpec& spec);

}  // namespace opg
