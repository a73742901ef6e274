#pragma once

// String names for the public enums (CLI values and CSV cells).

#include <stdexcept>
#include <string>
#include <string_view>

#include "stirap/hamiltonians.hpp"
#include "stirap/pulses.hpp"

namespace stirap {

inline std::string to_string(ModelKind m) {
  return m == ModelKind::Effective ? "effective" : "phenomenological";
}

inline std::string to_string(PulseSequence s) {
  return s == PulseSequence::Intuitive ? "intuitive" : "counterintuitive";
}

inline std::string to_string(BasisKind b) {
  return b == BasisKind::Adiabatic ? "adiabatic" : "bare";
}

inline ModelKind model_from_string(std::string_view s) {
  if (s == "effective") return ModelKind::Effective;
  if (s == "phenomenological") return ModelKind::Phenomenological;
  throw std::invalid_argument("unknown model: " + std::string(s));
}

inline PulseSequence sequence_from_string(std::string_view s) {
  if (s == "intuitive") return PulseSequence::Intuitive;
  if (s == "counterintuitive") return PulseSequence::Counterintuitive;
  throw std::invalid_argument("unknown sequence: " + std::string(s));
}

inline BasisKind basis_from_string(std::string_view s) {
  if (s == "adiabatic") return BasisKind::Adiabatic;
  if (s == "bare") return BasisKind::Bare;
  throw std::invalid_argument("unknown basis: " + std::string(s));
}

}  // namespace stirap
