#pragma once

#include <stdexcept>
#include <string>

namespace qotto {

// Argument outside an operation's mathematical domain.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Population at 0 or 1: the inverse temperature has infinite magnitude.
class infinite_temperature_error : public domain_error {
 public:
  using domain_error::domain_error;
};

class degeneracy_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integration resolution too coarse to keep the propagator unitary.
class accuracy_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quantity requested outside the heat-engine regime.
class regime_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qotto
