#ifndef SPHCODES_IO_HPP
#define SPHCODES_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "sphcodes/codes.hpp"

namespace sphcodes {

class HadamardMatrix;

// Code files. Blank lines and lines starting with '#' are ignored; on a
// sphere data line, text after '#' is the vector's label.
//
//   sphere <d>          one vector per line, d scalar tokens
//   qary <q> <r>        one codeword per line, r integers in [0, q)
//   hadamard <order>    one row per line, order entries of +1/-1
//
// Readers throw ParseError with a line number on malformed input.

using CodeFile = std::variant<UnitVectorSet, QaryCode>;

UnitVectorSet read_sphere(std::istream& in);
QaryCode read_qary(std::istream& in);
CodeFile read_code(std::istream& in);
CodeFile read_code_file(const std::filesystem::path& path);

/// `comments` are written as leading `# ` lines.
void write_sphere(std::ostream& out, const UnitVectorSet& v, const std::vector<std::string>& comments = {});
void write_qary(std::ostream& out, const QaryCode& c, const std::vector<std::string>& comments = {});
void write_hadamard(std::ostream& out, const HadamardMatrix& h, const std::vector<std::string>& comments = {});

}  // namespace sphcodes

#endif  // SPHCODES_IO_HPP
