#pragma once

#include <stdexcept>
#include <string>

namespace moebius {

// Malformed input: bad composition tables, non-functorial maps, schema errors.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input outside an operation's domain, e.g. a non-commuting square.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A check needs more simplicial levels than the truncation provides.
class InsufficientLevels : public std::runtime_error {
 public:
  InsufficientLevels(int needed, int available);
  int needed() const { return needed_; }
  int available() const { return available_; }

 private:
  int needed_;
  int available_;
};

// A Mobius inversion was requested without a finite-length certificate.
class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace moebius
