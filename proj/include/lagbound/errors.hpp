#pragma once

#include <stdexcept>
#include <string>

namespace lagbound {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define LAGBOUND_ERROR(name)                   \
  struct name : Error {                        \
    explicit name(const std::string& what)     \
        : Error(std::string(#name ": ") + what) {} \
  }

LAGBOUND_ERROR(InvalidInput);
LAGBOUND_ERROR(ChartDegenerate);
LAGBOUND_ERROR(OutOfPatch);
LAGBOUND_ERROR(DegenerateCurve);
LAGBOUND_ERROR(DistortionExceeded);
LAGBOUND_ERROR(PatchMismatch);
LAGBOUND_ERROR(NoBracket);
LAGBOUND_ERROR(SelfIntersection);
LAGBOUND_ERROR(StepTooLarge);
LAGBOUND_ERROR(FrameDegenerate);
LAGBOUND_ERROR(ParamOutOfRange);
LAGBOUND_ERROR(ConfigError);
LAGBOUND_ERROR(IoError);

#undef LAGBOUND_ERROR

}  // namespace lagbound
