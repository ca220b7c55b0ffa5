#pragma once

#include <stdexcept>
#include <string>

namespace wk {

/// Base of every error raised by the toolkit. `kind()` is the stable
/// machine-readable name used in reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define WK_DEFINE_ERROR(Name)                                              \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& what) : Error(#Name, what) {}         \
  };

WK_DEFINE_ERROR(DomainError)
WK_DEFINE_ERROR(NonFiniteError)
WK_DEFINE_ERROR(ToleranceError)
WK_DEFINE_ERROR(SingularMetricError)
WK_DEFINE_ERROR(DimensionError)
WK_DEFINE_ERROR(DepthError)
WK_DEFINE_ERROR(UnsupportedFamilyError)
WK_DEFINE_ERROR(DegreeOverflowError)
WK_DEFINE_ERROR(DegenerateScalarError)
WK_DEFINE_ERROR(StepError)
WK_DEFINE_ERROR(PunctureOnCurveError)
WK_DEFINE_ERROR(OverflowError)
WK_DEFINE_ERROR(NullVectorError)
WK_DEFINE_ERROR(ChartError)
WK_DEFINE_ERROR(NonHermitianError)
WK_DEFINE_ERROR(DegeneracyError)
WK_DEFINE_ERROR(NotProjectorError)
WK_DEFINE_ERROR(TimeOrderError)

#undef WK_DEFINE_ERROR

/// Malformed or schema-violating input document. `path` names the offending
/// JSON location (e.g. "/metric/params/scale").
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string path = {})
      : Error("ParseError", path.empty() ? what : what + " at " + path),
        path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace wk
