#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "veilcache/galois.hpp"
#include "veilcache/rational.hpp"

#include <json.hpp>

namespace veilcache {

// Users, files and positions are 1-based throughout the public surface,
// matching the [K], [N], [KN] index sets the schemes are written in.

struct SystemParams {
    SystemParams(unsigned user_count, unsigned file_count, size_t file_length,
                 const Field& field);

    unsigned user_count;   // K
    unsigned file_count;   // N
    size_t file_length;    // F, in field symbols
    Field field;

    unsigned subpacket_count() const { return user_count * (file_count - 1) + 1; }
    unsigned virtual_user_count() const { return user_count * file_count; }
    size_t subfile_length() const { return file_length / subpacket_count(); }  // stripe L
};

class FileLibrary {
public:
    explicit FileLibrary(std::vector<std::vector<FieldElement>> files);

    unsigned file_count() const { return static_cast<unsigned>(files_.size()); }
    size_t file_length() const { return files_.front().size(); }
    const std::vector<FieldElement>& file(unsigned n) const;  // n in [N]

private:
    std::vector<std::vector<FieldElement>> files_;
};

// d = (d_1, ..., d_K); entry k is the 1-based file index user k demands.
using DemandVector = std::vector<unsigned>;

void validate_demand(const DemandVector& d, unsigned file_count);

// Counts of users per file, sorted descending, zero-padded to length N.
std::vector<unsigned> demand_profile(const DemandVector& d, unsigned file_count);

// Uniform iff every file is demanded by the same number of users.
bool is_uniform(const std::vector<unsigned>& profile);

struct CacheContent {
    unsigned user = 0;
    std::vector<FieldElement> symbols;
};

// One labeled coded subfile of the broadcast: entry (k, i) carries C_{i,k},
// the coded subfile of file i at generator position k. virtual_user == 0 is
// reserved for demand-independent uncoded broadcast segments.
struct TransmissionEntry {
    unsigned virtual_user = 0;
    unsigned file_index = 0;
    std::vector<FieldElement> symbols;
};

// The ordered broadcast X. Canonical order is ascending virtual user, then
// ascending file index; it is a function of the (virtual) demand alone, which
// the privacy audit depends on.
struct TransmissionRecord {
    std::vector<TransmissionEntry> entries;
    size_t file_length = 0;  // F, for rate normalization

    size_t total_symbols() const;
    Rational rate() const;  // total symbols / F, exact
    bool canonically_ordered() const;

    nlohmann::json to_json() const;  // {entries: [{vu, file, symbols}], rate_num, rate_den}
    static TransmissionRecord from_json(const nlohmann::json& doc, const Field& field);
};

FileLibrary random_library(const SystemParams& params, uint64_t seed);
FileLibrary zero_library(const SystemParams& params);

// Library JSON: {p, K, N, F, files: [[symbols]]}
nlohmann::json library_to_json(const SystemParams& params, const FileLibrary& lib);
std::pair<SystemParams, FileLibrary> library_from_json(const nlohmann::json& doc);
std::pair<SystemParams, FileLibrary> load_library(const std::filesystem::path& path);
void save_library(const std::filesystem::path& path, const SystemParams& params,
                  const FileLibrary& lib);

}  // namespace veilcache
