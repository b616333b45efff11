#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace astopo {

enum class Errc {
  empty_graph,
  self_loop,
  parse_error,
  disconnected,
  invalid_argument,
  undefined_metric,
  inconsistent_input,
  no_convergence,
  empty_intersection,
  empty_set,
  io_error,
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::empty_graph: return "empty graph";
    case Errc::self_loop: return "self-loop";
    case Errc::parse_error: return "parse error";
    case Errc::disconnected: return "disconnected graph";
    case Errc::invalid_argument: return "invalid argument";
    case Errc::undefined_metric: return "undefined metric";
    case Errc::inconsistent_input: return "inconsistent input";
    case Errc::no_convergence: return "no convergence";
    case Errc::empty_intersection: return "empty intersection";
    case Errc::empty_set: return "empty set";
    case Errc::io_error: return "i/o error";
  }
  return "error";
}

/// Base error for every failure raised by the library. The code is stable and
/// intended for programmatic dispatch; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string token, const std::string& message,
             std::optional<std::size_t> record = std::nullopt, std::string file = {})
      : Error(Errc::parse_error, (file.empty() ? "" : file + ":") + "line " + std::to_string(line) + ": " +
                                     message + (token.empty() ? "" : " ('" + token + "')")),
        line_(line),
        token_(std::move(token)),
        detail_(message),
        record_(record),
        file_(std::move(file)) {}

  /// Same failure, attributed to a named input file.
  ParseError in_file(std::string file) const { return ParseError(line_, token_, detail_, record_, std::move(file)); }

  std::size_t line() const noexcept { return line_; }
  const std::string& token() const noexcept { return token_; }
  // Zero-based index of the RPSL block, when the failure is inside one.
  std::optional<std::size_t> record() const noexcept { return record_; }
  const std::string& file() const noexcept { return file_; }

 private:
  std::size_t line_;
  std::string token_;
  std::string detail_;
  std::optional<std::size_t> record_;
  std::string file_;
};

class SelfLoopError : public Error {
 public:
  explicit SelfLoopError(std::uint32_t asn)
      : Error(Errc::self_loop, "edge (" + std::to_string(asn) + "," + std::to_string(asn) +
                                   ") joins an AS to itself"),
        asn_(asn) {}

  std::uint32_t asn() const noexcept { return asn_; }

 private:
  std::uint32_t asn_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(double residual, const std::string& message)
      : Error(Errc::no_convergence, message + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace astopo
