#pragma once

#include <string>

#include "veilcache/mds.hpp"
#include "veilcache/model.hpp"

namespace veilcache {

// File 1..26 -> "A".."Z"; beyond that "W27", "W28", ...
std::string file_letter(unsigned file_index, unsigned file_count);

// The coded subfile C_{file, position} as a symbolic combination of the
// file's subfiles, e.g. "A_3" or "B_1⊕2B_2⊕3B_3⊕4B_4". Coefficients come
// from the generator column; a unit coefficient is not printed.
std::string render_coded_subfile(const GeneratorMatrix& g, unsigned file_index,
                                 unsigned position, unsigned file_count);

// Cache Z_position = sum over files of C_{n, position}, fully expanded, e.g.
// "A_1⊕B_1" or "A_1⊕A_2⊕A_3⊕B_1⊕B_2⊕B_3".
std::string render_cache(const GeneratorMatrix& g, unsigned position, unsigned file_count);

std::string render_entry(const GeneratorMatrix& g, const TransmissionEntry& entry,
                         unsigned file_count);

// One symbolic term per entry, comma-separated.
std::string render_record(const GeneratorMatrix& g, const TransmissionRecord& record,
                          unsigned file_count);

std::string render_demand(const DemandVector& demand, unsigned file_count);  // "[A,B]"

}  // namespace veilcache
