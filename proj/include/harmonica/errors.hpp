#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace harmonica {

// Every failure carries a stable kind() used in machine-readable reports and
// a category that fixes the CLI exit code: usage errors (bad flags, bad
// config, unparsable expressions) exit 2; numeric errors (evaluation or
// validation failures on otherwise well-formed inputs) exit 3.
enum class ErrorCategory { usage, numeric };

class Error : public std::runtime_error {
 public:
  Error(std::string kind, ErrorCategory cat, const std::string& msg)
      : std::runtime_error(msg), kind_(std::move(kind)), cat_(cat) {}
  const std::string& kind() const { return kind_; }
  ErrorCategory category() const { return cat_; }

 private:
  std::string kind_;
  ErrorCategory cat_;
};

// Expression text could not be parsed. offset() is the byte position in the
// input; expected() describes the token set that would have been accepted.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::string expected, const std::string& msg)
      : Error("SyntaxError", ErrorCategory::usage, msg),
        offset_(offset),
        expected_(std::move(expected)) {}
  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

// Config file or merged run configuration is invalid. line() is 1-based,
// 0 when the problem is not tied to a specific line.
class ConfigError : public Error {
 public:
  ConfigError(int line, std::string field, const std::string& msg)
      : Error("ConfigError", ErrorCategory::usage, msg),
        line_(line),
        field_(std::move(field)) {}
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

// Command-line misuse not tied to a config file.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& msg)
      : Error("UsageError", ErrorCategory::usage, msg) {}
};

// Evaluation left the real domain (log/sqrt of a negative, division by zero,
// fractional power of a negative base, non-finite interval enclosure).
// pos() is the byte offset of the offending node when it came from parsed
// text, npos for synthesized nodes.
class DomainError : public Error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  explicit DomainError(const std::string& msg, std::size_t pos = npos)
      : Error("DomainError", ErrorCategory::numeric, msg), pos_(pos) {}
  std::size_t pos() const { return pos_; }

 private:
  std::size_t pos_;
};

// Lower endpoint exceeded the upper endpoint beyond tolerance at witness().
class OrderViolation : public Error {
 public:
  OrderViolation(double x, double lower, double upper, const std::string& msg)
      : Error("OrderViolation", ErrorCategory::numeric, msg),
        x_(x),
        lower_(lower),
        upper_(upper) {}
  double witness() const { return x_; }
  double lower_value() const { return lower_; }
  double upper_value() const { return upper_; }

 private:
  double x_, lower_, upper_;
};

// A scaling function took both strict signs on the validation grid.
class SignChange : public Error {
 public:
  SignChange(double x_neg, double x_pos, const std::string& msg)
      : Error("SignChange", ErrorCategory::numeric, msg),
        x_neg_(x_neg),
        x_pos_(x_pos) {}
  double negative_witness() const { return x_neg_; }
  double positive_witness() const { return x_pos_; }

 private:
  double x_neg_, x_pos_;
};

// Neither of two interval functions contains the other uniformly.
class NestingViolation : public Error {
 public:
  NestingViolation(double x, const std::string& msg)
      : Error("NestingViolation", ErrorCategory::numeric, msg), x_(x) {}
  double witness() const { return x_; }

 private:
  double x_;
};

// A required evaluation point fell outside a function's domain. which() names
// the offender when the point was derived ("a/m", "b/m", "A", "B", "image").
class OutOfDomain : public Error {
 public:
  OutOfDomain(double value, std::string which, const std::string& msg)
      : Error("OutOfDomain", ErrorCategory::numeric, msg),
        value_(value),
        which_(std::move(which)) {}
  double value() const { return value_; }
  const std::string& which() const { return which_; }

 private:
  double value_;
  std::string which_;
};

// Quadrature exhausted its evaluation budget before meeting tolerance.
class NonConvergence : public Error {
 public:
  NonConvergence(long long evaluations, const std::string& msg)
      : Error("NonConvergence", ErrorCategory::numeric, msg),
        evaluations_(evaluations) {}
  long long evaluations() const { return evaluations_; }

 private:
  long long evaluations_;
};

}  // namespace harmonica
