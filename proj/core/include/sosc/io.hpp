#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "sosc/biquadratic.hpp"
#include "sosc/certificates.hpp"
#include "sosc/dual.hpp"
#include "sosc/form.hpp"

namespace sosc::io {

// Text formats. Indices and exponent positions are 1-based on disk,
// coefficients are always written as NUM/DEN, '#' starts a comment and blank
// lines are ignored. Reading what was written gives back an equal object.
//
//   form n=<n> d=<d>              followed by lines  NUM/DEN e1 ... en
//   biq n=<n>                     followed by lines  NUM/DEN i j k l   (i <= j, k <= l)
//   polymatrix dim=<k> n=<n> d=<d> followed by lines NUM/DEN r c e1 ... en
//   sos_certificate n=<n> x=<x>
//     Z: <m>          m lines of exponents, x-block | y-block
//     Q: <m>          m rows of m rationals
//     MULTIPLIER:     a complete form block
//     SCALE: NUM/DEN
//   dual_certificate n=<n>
//     ORDER: builtin36 | lex
//     C: <len>        len lines, one rational each
//
// Errors are ParseError with the offending line number.

using Document = std::variant<Form, BiquadraticForm, PolyMatrix, SosCertificate, DualCertificate>;

std::string write_form(const Form& f);
std::string write_biquadratic(const BiquadraticForm& b);
std::string write_polymatrix(const PolyMatrix& m);
std::string write_sos_certificate(const SosCertificate& c);
std::string write_dual_certificate(const DualCertificate& c);
std::string write_document(const Document& doc);

Form read_form(std::string_view text);
BiquadraticForm read_biquadratic(std::string_view text);
PolyMatrix read_polymatrix(std::string_view text);
SosCertificate read_sos_certificate(std::string_view text);
DualCertificate read_dual_certificate(std::string_view text);
/// Dispatches on the header keyword.
Document read_document(std::string_view text);

/// Throws ParseError when the file cannot be opened or parsed.
Document load(const std::filesystem::path& path);
void save(const std::filesystem::path& path, const Document& doc);

/// Infix polynomial such as "x1^2 + 3/2*x2*y1 - y3^2". With x_vars < n_vars
/// the names x1..x_{x_vars} and y1..y_{n_vars - x_vars} are recognised;
/// otherwise x1..x_{n_vars}. Every term must have the same degree.
Form parse_polynomial(std::string_view text, std::size_t n_vars, std::size_t x_vars);

}  // namespace sosc::io
