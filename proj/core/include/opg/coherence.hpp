#pragma once

#include <string>

#include "opg/quantities.hpp"
#include "opg/sensor_geometry.hpp"

namespace opg {

/// Airy coefficient of the diffraction blur 1.22 lambda f#.  Fixed literal,
/// not recomputed from a Bessel zero.
inline constexpr double kDiffractionCoefficient = 1.22;

enum class Regime {
  DiffractionLimited,  ///< diffraction blur exceeds the pixel pitch
  GeometryLimited,     ///< pixel pitch exceeds the diffraction blur
  Boundary,            ///< exact tie between the two scales
};

std::string to_string(Regime regime);

/// Effective phase-space cell size at the detector plane: the larger of the
/// diffraction blur and the pixel pitch, with the regime label and the
/// diffraction scale that produced it.
struct CoherenceScaleResult {
  Length lambda_pix;
  Regime regime;
  Length diffraction_scale;  ///< 1.22 lambda f#
};

/// lambda_pix = max(1.22 lambda f#, a_pix).  Throws ValidationError for a
/// non-positive wavelength.
CoherenceScaleResult effective_coherence_scale(Length lambda_meas,
                                               const SensorGeometry& geometry);

/// Convenience accessor for the regime label alone.
Regime classify_regime(Length lambda_meas, const SensorGeometry& geometry);

}  // namespace opg
