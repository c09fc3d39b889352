#pragma once

// Line-oriented text format for factor systems:
//
//   system <name>
//   index <id>
//   le <id> <id>
//   carrier <id> : <elem> [<elem>...]
//   pmap <i'> <i> : <e'> -> <e>
//   emb <i> <i'> : <e> -> <e'>
//   proj <i'> <i> : <e'> -> <e>
//
// '#' starts a comment when it begins a token.  Reflexive pmap entries are
// implied unless the file says `reflexive explicit`; diagonal emb/proj
// entries default to the identity.  Every other emb/proj entry must be
// present.

#include <iosfwd>
#include <string>

#include "fls/factor_core.hpp"

namespace fls {

/// Throws ParseError ("<source>:<line>: ...") on malformed or incomplete
/// input.  Laws are not checked.
FactorSystem read_system(std::istream& in, const std::string& source = "<input>");
FactorSystem read_system_file(const std::string& path);

/// Text that read_system turns back into an equal system.  Throws
/// InvalidSystem when a name cannot be written as a single token.
std::string write_system(const FactorSystem& fs);
void write_system_file(const FactorSystem& fs, const std::string& path);

}  // namespace fls
