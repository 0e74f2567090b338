#include "veilcache/render.hpp"

namespace veilcache {

namespace {
constexpr const char* kOPlus = "⊕";
}

std::string file_letter(unsigned file_index, unsigned file_count) {
    if (file_count <= 26) return std::string(1, static_cast<char>('A' + file_index - 1));
    return "W" + std::to_string(file_index);
}

std::string render_coded_subfile(const GeneratorMatrix& g, unsigned file_index,
                                 unsigned position, unsigned file_count) {
    std::string letter = file_letter(file_index, file_count);
    std::string out;
    for (size_t j = 0; j < g.message_length(); ++j) {
        uint32_t coeff = g.entries().at(j, position - 1).value();
        if (coeff == 0) continue;
        if (!out.empty()) out += kOPlus;
        if (coeff != 1) out += std::to_string(coeff);
        out += letter + "_" + std::to_string(j + 1);
    }
    return out.empty() ? "0" : out;
}

std::string render_cache(const GeneratorMatrix& g, unsigned position, unsigned file_count) {
    std::string out;
    for (unsigned n = 1; n <= file_count; ++n) {
        std::string term = render_coded_subfile(g, n, position, file_count);
        if (term == "0") continue;
        if (!out.empty()) out += kOPlus;
        out += term;
    }
    return out.empty() ? "0" : out;
}

std::string render_entry(const GeneratorMatrix& g, const TransmissionEntry& entry,
                         unsigned file_count) {
    if (entry.virtual_user == 0) {
        return file_letter(entry.file_index, file_count) + "[uncoded " +
               std::to_string(entry.symbols.size()) + " symbols]";
    }
    return render_coded_subfile(g, entry.file_index, entry.virtual_user, file_count);
}

std::string render_record(const GeneratorMatrix& g, const TransmissionRecord& record,
                          unsigned file_count) {
    std::string out;
    for (const auto& entry : record.entries) {
        if (!out.empty()) out += ", ";
        out += render_entry(g, entry, file_count);
    }
    return out;
}

std::string render_demand(const DemandVector& demand, unsigned file_count) {
    std::string out = "[";
    for (size_t k = 0; k < demand.size(); ++k) {
        if (k) out += ",";
        out += file_letter(demand[k], file_count);
    }
    return out + "]";
}

}  // namespace veilcache
