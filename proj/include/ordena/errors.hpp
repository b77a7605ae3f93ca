#pragma once

#include <stdexcept>
#include <string>

namespace ordena {

enum class Errc {
  invalid_argument,
  parse,
  domain,
  not_in_s,
  unsupported,
  resource,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace ordena
