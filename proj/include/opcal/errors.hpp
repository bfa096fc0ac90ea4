// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

#ifndef OPCAL_ERRORS_HPP
#define OPCAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace opcal {

// Error taxonomy shared by the library and the CLI. The numeric values are
// the CLI exit codes: 2 config, 3 I/O, 4 numerical failure, 5 precondition.
enum class ErrorKind : int {
    config = 2,
    io = 3,
    numerical = 4,
    precondition = 5,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }
    int exit_code() const { return static_cast<int>(kind_); }

  private:
    ErrorKind kind_;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(ErrorKind::config, msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(ErrorKind::io, msg) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& msg) : Error(ErrorKind::numerical, msg) {}
};

struct PreconditionError : Error {
    explicit PreconditionError(const std::string& msg) : Error(ErrorKind::precondition, msg) {}
};

inline void require(bool condition, const std::string& msg) {
    if (!condition) throw PreconditionError(msg);
}

}  // namespace opcal

#endif
