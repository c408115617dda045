#pragma once

#include <string_view>

namespace cgsf {

// Outcome of a semi-decision: sampled nets cannot always settle a question
// that quantifies over every small epsilon.
enum class Tri { False, True, Undecidable };

constexpr Tri tri_of(bool b) { return b ? Tri::True : Tri::False; }

constexpr Tri tri_not(Tri t) {
  switch (t) {
    case Tri::True: return Tri::False;
    case Tri::False: return Tri::True;
    default: return Tri::Undecidable;
  }
}

constexpr Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::True && b == Tri::True) return Tri::True;
  return Tri::Undecidable;
}

constexpr Tri tri_or(Tri a, Tri b) {
  if (a == Tri::True || b == Tri::True) return Tri::True;
  if (a == Tri::False && b == Tri::False) return Tri::False;
  return Tri::Undecidable;
}

constexpr std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    default: return "undecidable";
  }
}

}  // namespace cgsf
