#pragma once

#include "sectransfer/common.hpp"

#include <optional>
#include <string>

namespace test {

/// Kind of the sectransfer::Error thrown by f, or nullopt if none.
template <class F>
std::optional<sectransfer::ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const sectransfer::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

template <class F>
std::string error_message(F&& f) {
  try {
    f();
  } catch (const sectransfer::Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace test
