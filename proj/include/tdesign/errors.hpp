#pragma once

#include <stdexcept>
#include <string>

namespace tdesign {

// Base for all library errors so callers can catch the whole family.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHermitian : Error {
  using Error::Error;
};
struct TooNegative : Error {
  using Error::Error;
};
struct InvalidState : Error {
  using Error::Error;
};
struct AngleCountMismatch : Error {
  using Error::Error;
};
struct LengthMismatch : Error {
  using Error::Error;
};
struct NotUnitary : Error {
  using Error::Error;
};
struct EmptyCounts : Error {
  using Error::Error;
};
struct NonPhysicalChi : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct UnsupportedOrder : Error {
  using Error::Error;
};
struct EmptyFilteredSample : Error {
  using Error::Error;
};
struct BadProbability : Error {
  using Error::Error;
};
struct Unreachable : Error {
  using Error::Error;
};
struct MissingColumn : Error {
  using Error::Error;
};
struct SingularCalibration : Error {
  using Error::Error;
};
struct OddLinkCount : Error {
  using Error::Error;
};
struct EvenN : Error {
  using Error::Error;
};

}  // namespace tdesign
