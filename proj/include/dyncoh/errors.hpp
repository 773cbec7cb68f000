#pragma once

#include "dyncoh/numeric.hpp"

#include <stdexcept>
#include <string>

namespace dyncoh {

enum class Errc {
  BadInput,       // unparseable diagram / bad arguments
  NotFiniteType,  // group construction on a non-finite diagram
  CapExceeded,    // resource cap; `required` carries the needed size
  Mismatch,       // internal cross-check failed
};

struct Error : std::runtime_error {
  Errc code;
  Int required;

  Error(Errc c, const std::string& msg, Int req = 0)
      : std::runtime_error(msg), code(c), required(std::move(req)) {}
};

}  // namespace dyncoh
