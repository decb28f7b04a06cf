#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "polyconv/conversions.hpp"
#include "polyconv/errors.hpp"

namespace polyconv::io {

/// Malformed file content.  Distinct from InvalidParameter so callers can
/// tell a broken input file from an unsupported conversion request.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Compact basis spelling used on the command line:
/// chebyshev | legendre | ultraspherical:<lam> | jacobi:<a>,<b> |
/// laguerre:<a>.  Throws InvalidParameter on anything else.
Basis parse_basis_spec(const std::string& spec);
std::string basis_spec(const Basis& basis);

/// Text format: one header line
///   # basis=<family> params=<csv> n=<count>
/// then one coefficient per line at 17 significant digits.
void write_text(std::ostream& out, const CoefficientVector& cv);
CoefficientVector read_text(std::istream& in);

/// Binary format: magic "PXF1", then the count as a little-endian 64-bit
/// integer, then that many little-endian IEEE doubles.  Carries no basis.
void write_binary(std::ostream& out, std::span<const double> values);
std::vector<double> read_binary(std::istream& in);

/// True when the stream starts with the binary magic; does not consume.
bool looks_binary(std::istream& in);

}  // namespace polyconv::io
