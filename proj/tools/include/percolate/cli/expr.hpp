#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace percolate::cli {

class ExprError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Variables = std::map<std::string, double, std::less<>>;

// Evaluates an arithmetic expression over real numbers.
//   operators: + - * / ^ (right-associative), unary minus, parentheses
//   functions: ln log log2 exp sqrt ceil floor lnln lnlnln, min(x, y), max(x, y)
//   numbers:   123, 0.5, 1e6
// Identifiers other than function names are looked up in vars.
double evaluate(std::string_view text, const Variables& vars = {});

// Evaluates and converts to a nonnegative integer. Values within 1e-9 of an
// integer are rounded to it; other values are rounded up.
std::uint64_t evaluate_count(std::string_view text, const Variables& vars = {});

// Splits on commas outside parentheses: "2,max(3,n)" -> {"2", "max(3,n)"}.
std::vector<std::string> split_top_level(std::string_view text);

}  // namespace percolate::cli
