// Infix expression parsing for polynomials and rational functions.
#pragma once

#include <stdexcept>

#include "parshin/rational_function.hpp"

namespace parshin {

struct parse_error : std::runtime_error {
  parse_error(const std::string& msg, size_t off)
      : std::runtime_error(msg + " (byte offset " + std::to_string(off) + ")"),
        offset(off) {}
  size_t offset;
};

// Parses an infix expression over the declared variables with + - * / ^,
// parentheses, integer and rational literals, and `i` for the imaginary unit.
RationalFunction parse_rational(const std::string& text, const VarList& vars);

// Same, but the result must have a constant denominator.
Polynomial parse_polynomial(const std::string& text, const VarList& vars);

}  // namespace parshin
