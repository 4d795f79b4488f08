#include "opg/coherence.hpp"

#include <algorithm>

#include "opg/errors.hpp"

namespace opg {

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::DiffractionLimited:
      return "diffraction-limited";
    case Regime::GeometryLimited:
      return "geometry-limited";
    case Regime::Boundary:
      return "boundary";
  }
  return "unknown";
}

CoherenceScaleResult effective_coherence_scale(Length lambda_meas,
                                               const SensorGeometry& geometry) {
  if (!(lambda_meas.value() > 0.0)) {
    throw ValidationError("lambda_meas", "wavelength must be positive");
  }
  const Length diffraction =
      kDiffractionCoefficient * lambda_meas * geometry.f_number();
  const Length pitch = geometry.pixel_pitch();

  Regime regime = Regime::Boundary;
  if (diffraction > pitch) {
    regime = Regime::DiffractionLimited;
  } else if (pitch > diffraction) {
    regime = Regime::GeometryLimited;
  }
  return CoherenceScaleResult{std::max(diffraction, pitch), regime, diffraction};
}

Regime classify_regime(Length lambda_meas, const SensorGeometry& geometry) {
  return effective_coherence_scale(lambda_meas, geometry).regime;
}

}  // namespace opg
