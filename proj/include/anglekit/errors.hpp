#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace anglekit {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Checked integer arithmetic left the 64-bit range.
class arithmetic_overflow : public error {
 public:
  using error::error;
};

/// An argument lies outside the domain of the operation.
class domain_error : public error {
 public:
  using error::error;
};

/// Tangent evaluated too close to one of its poles.
class pole_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// A ray endpoint coincides with the vertex.
class degenerate_vertex_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Both rays point in the same direction; the zero angle does not exist.
class zero_angle_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Requested textual form cannot represent the value (e.g. DMS for gon).
class unsupported_form_error : public error {
 public:
  using error::error;
};

/// Syntax error. `position()` is a 0-based byte offset into the input.
class parse_error : public error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class unknown_unit_error : public parse_error {
 public:
  using parse_error::parse_error;
};

/// A numerical value was given without the symbol of its reference angle.
class missing_reference_angle_error : public parse_error {
 public:
  using parse_error::parse_error;
};

}  // namespace anglekit
