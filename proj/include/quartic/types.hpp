#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace quartic {

using cplx = std::complex<double>;

enum class Parity { even, odd };

inline std::string_view to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

inline Parity opposite(Parity p) { return p == Parity::even ? Parity::odd : Parity::even; }

// Base of every exception thrown by the library. Subclasses carry the
// failure category; what() carries the diagnostic.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IntegrationError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace quartic
