#ifndef SPINSTEP_ERROR_HPP
#define SPINSTEP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace spinstep {

enum class ErrorCode {
  InvalidArgument,
  SingularMatrix,
  ThresholdDegeneracy,
  MassPole,
  UnitarityViolation,
  ConventionMismatch,
  Unsupported,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// C layer can map it onto a status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spinstep

#endif  // SPINSTEP_ERROR_HPP
