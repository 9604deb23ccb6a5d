#pragma once

#include <string>

#include "wordgp/tree.hpp"

namespace wordgp {

// Fully parenthesized infix form: terminals w0..w{k-1}, binaries printed as
// "(a+b)", "(a-b)", "(a*b)", "(a/b)", squaring as a trailing "^2", square root
// as "sqrt(...)". parse_expression is the exact inverse.
std::string to_expression(const Node& node);
std::string to_expression(const GpTree& tree);

// Parses the to_expression grammar. num_slots bounds the terminal indices.
// Syntax errors carry the byte position of the offense.
GpTree parse_expression(const std::string& text, std::uint32_t num_slots);

}  // namespace wordgp
