#ifndef RIGIDITY_STRUCTURE_IO_HPP
#define RIGIDITY_STRUCTURE_IO_HPP

#include <iosfwd>
#include <string>

#include "rigidity/structure.hpp"

namespace rigidity {

// Binary structure file: magic "RSTR", version byte 1, n as unsigned 32-bit
// little-endian, symbol count (u8), one arity byte per symbol, then each
// relation bitmap packed LSB-first within bytes (tuple index 0 = bit 0 of
// byte 0), padded per relation to a whole byte.  The class is not stored;
// the reader takes it as context and validates admissibility.
void write_rstr(std::ostream& out, const Structure& m);
void write_rstr_file(const std::string& path, const Structure& m);

Structure read_rstr(std::istream& in, StructureClass cls = StructureClass::All);
Structure read_rstr_file(const std::string& path, StructureClass cls = StructureClass::All);

}  // namespace rigidity

#endif
