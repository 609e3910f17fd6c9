#ifndef HYPOCONE_ERRORS_HPP
#define HYPOCONE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hypocone {

// Error taxonomy shared by the core, the C API status codes and the CLI
// exit codes: usage -> 1, model -> 2, nonconverged -> 3.
enum class ErrorCode {
  usage = 1,
  model = 2,
  nonconverged = 3,
  domain = 4,
  size = 5,
  internal = 6,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void throw_usage(const std::string& msg) {
  throw Error(ErrorCode::usage, msg);
}
[[noreturn]] inline void throw_model(const std::string& msg) {
  throw Error(ErrorCode::model, msg);
}
[[noreturn]] inline void throw_nonconverged(const std::string& msg) {
  throw Error(ErrorCode::nonconverged, msg);
}
[[noreturn]] inline void throw_domain(const std::string& msg) {
  throw Error(ErrorCode::domain, msg);
}
[[noreturn]] inline void throw_size(const std::string& msg) {
  throw Error(ErrorCode::size, msg);
}

}  // namespace hypocone

#endif
