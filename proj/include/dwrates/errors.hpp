#pragma once

#include <stdexcept>
#include <string>

namespace dw {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define DW_ERROR(Name)                    \
  struct Name : Error {                   \
    using Error::Error;                   \
  }

DW_ERROR(PoleError);
DW_ERROR(DomainError);
DW_ERROR(PathError);
DW_ERROR(UnsupportedConfig);
DW_ERROR(ConvergenceError);
DW_ERROR(ParamError);
DW_ERROR(BranchError);
DW_ERROR(EscapeError);
DW_ERROR(TypeError);
DW_ERROR(PetalError);
DW_ERROR(EpsilonError);
DW_ERROR(GeometryError);
DW_ERROR(DataError);
DW_ERROR(ShapeError);
DW_ERROR(LiftError);
DW_ERROR(ParseError);
DW_ERROR(ValidationError);

#undef DW_ERROR

}  // namespace dw
