#pragma once

#include <functional>
#include <string>

namespace nlb {

/// Parses a small initial-data expression language:
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := number ['*'] trig | trig | number
///   trig   := ('sin'|'cos') '(' [number] 'x' ')'
/// e.g. "2+sin(x)+0.3*cos(5x)" or "0.2+0.5sin(19x)+0.5cos(20x)".
/// Throws std::invalid_argument with the offending position on bad input.
std::function<double(double)> parse_initial_expression(const std::string& text);

bool looks_like_expression(const std::string& text);

}  // namespace nlb
