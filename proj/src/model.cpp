#include "veilcache/model.hpp"

#include <algorithm>
#include <fstream>
#include <random>

namespace veilcache {

SystemParams::SystemParams(unsigned user_count_, unsigned file_count_, size_t file_length_,
                           const Field& field_)
    : user_count(user_count_), file_count(file_count_), file_length(file_length_), field(field_) {
    if (user_count < 1 || file_count < 1) {
        throw std::invalid_argument("system needs at least one user and one file");
    }
    if (file_length == 0 || file_length % subpacket_count() != 0) {
        throw std::invalid_argument("file length " + std::to_string(file_length) +
                                    " is not a positive multiple of " +
                                    std::to_string(subpacket_count()) + " subpackets");
    }
}

FileLibrary::FileLibrary(std::vector<std::vector<FieldElement>> files)
    : files_(std::move(files)) {
    if (files_.empty()) throw std::invalid_argument("library has no files");
    for (const auto& f : files_) {
        if (f.size() != files_.front().size()) {
            throw std::invalid_argument("library files have unequal lengths");
        }
    }
}

const std::vector<FieldElement>& FileLibrary::file(unsigned n) const {
    if (n < 1 || n > files_.size()) throw std::out_of_range("file index out of range");
    return files_[n - 1];
}

void validate_demand(const DemandVector& d, unsigned file_count) {
    for (unsigned entry : d) {
        if (entry < 1 || entry > file_count) {
            throw std::invalid_argument("demand entry " + std::to_string(entry) +
                                        " outside [1, " + std::to_string(file_count) + "]");
        }
    }
}

std::vector<unsigned> demand_profile(const DemandVector& d, unsigned file_count) {
    validate_demand(d, file_count);
    std::vector<unsigned> counts(file_count, 0);
    for (unsigned entry : d) counts[entry - 1]++;
    std::sort(counts.begin(), counts.end(), std::greater<unsigned>());
    return counts;
}

bool is_uniform(const std::vector<unsigned>& profile) {
    return std::all_of(profile.begin(), profile.end(),
                       [&](unsigned c) { return c == profile.front(); });
}

size_t TransmissionRecord::total_symbols() const {
    size_t total = 0;
    for (const auto& e : entries) total += e.symbols.size();
    return total;
}

Rational TransmissionRecord::rate() const {
    if (file_length == 0) {
        if (total_symbols() != 0) throw std::logic_error("record has symbols but no file length");
        return Rational(0);
    }
    return Rational(static_cast<long long>(total_symbols()),
                    static_cast<long long>(file_length));
}

bool TransmissionRecord::canonically_ordered() const {
    for (size_t i = 1; i < entries.size(); ++i) {
        auto key = [](const TransmissionEntry& e) {
            return std::pair<unsigned, unsigned>(e.virtual_user, e.file_index);
        };
        if (key(entries[i]) <= key(entries[i - 1])) return false;
    }
    return true;
}

nlohmann::json TransmissionRecord::to_json() const {
    nlohmann::json ents = nlohmann::json::array();
    for (const auto& e : entries) {
        nlohmann::json symbols = nlohmann::json::array();
        for (const auto& s : e.symbols) symbols.push_back(s.value());
        ents.push_back(nlohmann::json{
            {"vu", e.virtual_user}, {"file", e.file_index}, {"symbols", std::move(symbols)}});
    }
    Rational r = rate();
    return nlohmann::json{
        {"entries", std::move(ents)}, {"rate_num", r.num()}, {"rate_den", r.den()}};
}

TransmissionRecord TransmissionRecord::from_json(const nlohmann::json& doc, const Field& field) {
    TransmissionRecord rec;
    for (const auto& e : doc.at("entries")) {
        TransmissionEntry entry;
        entry.virtual_user = e.at("vu").get<unsigned>();
        entry.file_index = e.at("file").get<unsigned>();
        for (uint64_t v : e.at("symbols").get<std::vector<uint64_t>>()) {
            entry.symbols.push_back(field.element(v));
        }
        rec.entries.push_back(std::move(entry));
    }
    long long rate_num = doc.at("rate_num").get<long long>();
    long long rate_den = doc.at("rate_den").get<long long>();
    if (rate_num > 0) {
        rec.file_length = rec.total_symbols() * static_cast<size_t>(rate_den) /
                          static_cast<size_t>(rate_num);
    }
    return rec;
}

FileLibrary random_library(const SystemParams& params, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<FieldElement>> files(params.file_count);
    for (auto& f : files) {
        f.reserve(params.file_length);
        for (size_t t = 0; t < params.file_length; ++t) {
            f.push_back(params.field.element(rng() % params.field.modulus()));
        }
    }
    return FileLibrary(std::move(files));
}

FileLibrary zero_library(const SystemParams& params) {
    std::vector<std::vector<FieldElement>> files(
        params.file_count, std::vector<FieldElement>(params.file_length, params.field.zero()));
    return FileLibrary(std::move(files));
}

nlohmann::json library_to_json(const SystemParams& params, const FileLibrary& lib) {
    nlohmann::json files = nlohmann::json::array();
    for (unsigned n = 1; n <= lib.file_count(); ++n) {
        nlohmann::json symbols = nlohmann::json::array();
        for (const auto& s : lib.file(n)) symbols.push_back(s.value());
        files.push_back(std::move(symbols));
    }
    return nlohmann::json{{"p", params.field.modulus()},
                          {"K", params.user_count},
                          {"N", params.file_count},
                          {"F", params.file_length},
                          {"files", std::move(files)}};
}

std::pair<SystemParams, FileLibrary> library_from_json(const nlohmann::json& doc) {
    Field field(doc.at("p").get<uint32_t>());
    SystemParams params(doc.at("K").get<unsigned>(), doc.at("N").get<unsigned>(),
                        doc.at("F").get<size_t>(), field);
    auto raw = doc.at("files").get<std::vector<std::vector<uint64_t>>>();
    if (raw.size() != params.file_count) {
        throw std::invalid_argument("library json: file count does not match N");
    }
    std::vector<std::vector<FieldElement>> files;
    files.reserve(raw.size());
    for (const auto& rf : raw) {
        if (rf.size() != params.file_length) {
            throw std::invalid_argument("library json: file length does not match F");
        }
        std::vector<FieldElement> f;
        f.reserve(rf.size());
        for (uint64_t v : rf) {
            if (v >= field.modulus()) {
                throw std::invalid_argument("library json: symbol " + std::to_string(v) +
                                            " out of range for GF(" +
                                            std::to_string(field.modulus()) + ")");
            }
            f.push_back(field.element(v));
        }
        files.push_back(std::move(f));
    }
    return {params, FileLibrary(std::move(files))};
}

std::pair<SystemParams, FileLibrary> load_library(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open library file " + path.string());
    nlohmann::json doc;
    in >> doc;
    return library_from_json(doc);
}

void save_library(const std::filesystem::path& path, const SystemParams& params,
                  const FileLibrary& lib) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write library file " + path.string());
    out << library_to_json(params, lib).dump(2) << "\n";
}

}  // namespace veilcache
