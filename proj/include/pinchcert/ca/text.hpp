#pragma once

#include <string>
#include <string_view>

#include "pinchcert/ca/rational_func.hpp"

namespace pinchcert::ca {

// Canonical text form; the grammar is documented in docs/text_format.md.
// Terms are printed in descending grlex order, so equal normal forms print
// identically and parse(to_string(f)) == f.
std::string to_string(const Poly& p);
std::string to_string(const RationalFunc& f);

/// Parses any expression of the grammar and returns its normal form.
RationalFunc parse(std::string_view text);
/// Parses and requires a polynomial result.
Poly parse_poly(std::string_view text);

}  // namespace pinchcert::ca
