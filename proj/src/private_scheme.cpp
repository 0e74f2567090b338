#include "veilcache/private_scheme.hpp"

#include <algorithm>
#include <random>

namespace veilcache {

std::vector<PrivacyKey> draw_keys(unsigned user_count, unsigned file_count, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<PrivacyKey> keys(user_count);
    for (unsigned k = 1; k <= user_count; ++k) {
        keys[k - 1] = {k, 1 + static_cast<unsigned>(rng() % file_count)};
    }
    return keys;
}

std::vector<PrivacyKey> keys_from_values(const std::vector<unsigned>& values,
                                         unsigned file_count) {
    std::vector<PrivacyKey> keys(values.size());
    for (unsigned k = 1; k <= values.size(); ++k) {
        if (values[k - 1] < 1 || values[k - 1] > file_count) {
            throw std::invalid_argument("key S_" + std::to_string(k) + " outside [1, " +
                                        std::to_string(file_count) + "]");
        }
        keys[k - 1] = {k, values[k - 1]};
    }
    return keys;
}

namespace {

std::vector<CacheContent> select_real_caches(const NonPrivatePlacement& base,
                                             const std::vector<PrivacyKey>& keys) {
    unsigned N = base.params.file_count;
    std::vector<CacheContent> caches(keys.size());
    for (unsigned k = 1; k <= keys.size(); ++k) {
        unsigned vi = (k - 1) * N + keys[k - 1].value;
        caches[k - 1] = {k, base.caches[vi - 1].symbols};
    }
    return caches;
}

}  // namespace

PrivatePlacement pv_place(const SystemParams& params, const FileLibrary& lib,
                          const GeneratorMatrix& g, uint64_t seed) {
    return pv_place_with_keys(params, lib, g,
                              draw_keys(params.user_count, params.file_count, seed));
}

PrivatePlacement pv_place_with_keys(const SystemParams& params, const FileLibrary& lib,
                                    const GeneratorMatrix& g,
                                    const std::vector<PrivacyKey>& keys) {
    if (keys.size() != params.user_count) {
        throw std::invalid_argument("need one privacy key per real user");
    }
    for (const PrivacyKey& key : keys) {
        if (key.value < 1 || key.value > params.file_count) {
            throw std::invalid_argument("privacy key outside [1, N]");
        }
    }
    PrivatePlacement pl{np_place(params, lib, g), keys, {}};
    pl.real_caches = select_real_caches(pl.base, keys);
    return pl;
}

DemandVector virtual_demand(const DemandVector& demand, const std::vector<PrivacyKey>& keys,
                            unsigned file_count) {
    validate_demand(demand, file_count);
    if (demand.size() != keys.size()) {
        throw std::invalid_argument("demand and key counts differ");
    }
    int n = static_cast<int>(file_count);
    DemandVector out;
    out.reserve(demand.size() * file_count);
    for (size_t k = 0; k < demand.size(); ++k) {
        int shift = ((static_cast<int>(keys[k].value) - static_cast<int>(demand[k])) % n + n) % n;
        for (int j = 1; j <= n; ++j) {
            out.push_back(static_cast<unsigned>(((j - shift - 1) % n + n) % n + 1));
        }
    }
    return out;
}

TransmissionRecord pv_deliver(const PrivatePlacement& placement, const DemandVector& demand) {
    if (demand.size() != placement.base.params.user_count) {
        throw std::invalid_argument("demand must list all real users");
    }
    return np_deliver(placement.base,
                      virtual_demand(demand, placement.keys, placement.base.params.file_count));
}

std::vector<FieldElement> pv_decode(const SystemParams& params, const GeneratorMatrix& g,
                                    unsigned real_user, const CacheContent& cache,
                                    unsigned key_value, unsigned demanded_file,
                                    const TransmissionRecord& record) {
    if (real_user < 1 || real_user > params.user_count) {
        throw std::out_of_range("real user index out of range");
    }
    unsigned vi = (real_user - 1) * params.file_count + key_value;
    return np_decode(params, g, vi, cache, demanded_file, record);
}

nlohmann::json PrivatePlacement::to_json(bool include_secret) const {
    const SystemParams& params = base.params;
    nlohmann::json doc{{"p", params.field.modulus()},
                       {"K", params.user_count},
                       {"N", params.file_count},
                       {"F", params.file_length},
                       {"generator", base.generator.to_json()}};
    nlohmann::json caches = nlohmann::json::array();
    for (const auto& z : real_caches) {
        nlohmann::json symbols = nlohmann::json::array();
        for (const auto& s : z.symbols) symbols.push_back(s.value());
        caches.push_back(nlohmann::json{{"user", z.user}, {"symbols", std::move(symbols)}});
    }
    doc["real_caches"] = std::move(caches);
    if (include_secret) {
        nlohmann::json values = nlohmann::json::array();
        for (const auto& key : keys) values.push_back(key.value);
        doc["keys"] = nlohmann::json{{"secret", true}, {"S", std::move(values)}};
    }
    return doc;
}

TransmissionRecord hybrid_deliver(const SystemParams& params, const FileLibrary& lib,
                                  const GeneratorMatrix& g, const std::vector<PrivacyKey>& keys,
                                  const Rational& memory, const DemandVector& demand) {
    validate_demand(demand, params.file_count);
    if (demand.size() != params.user_count) {
        throw std::invalid_argument("demand must list all real users");
    }
    if (keys.size() != params.user_count) {
        throw std::invalid_argument("need one privacy key per real user");
    }
    unsigned sp = params.subpacket_count();
    Rational mstar(1, sp);
    if (memory < Rational(0) || mstar < memory) {
        throw std::invalid_argument("memory must lie in [0, 1/" + std::to_string(sp) + "]");
    }
    Rational alpha = memory * Rational(sp);

    // prefix length = alpha * F, must be integral and subpacketizable
    long long scaled = static_cast<long long>(params.file_length) * alpha.num();
    if (scaled % alpha.den() != 0) {
        throw std::invalid_argument("file length cannot be split at alpha = " +
                                    alpha.to_string());
    }
    size_t prefix_len = static_cast<size_t>(scaled / alpha.den());
    if (prefix_len % sp != 0) {
        throw std::invalid_argument("prefix segment of " + std::to_string(prefix_len) +
                                    " symbols is not divisible into " + std::to_string(sp) +
                                    " subpackets");
    }
    size_t suffix_len = params.file_length - prefix_len;

    TransmissionRecord record;
    record.file_length = params.file_length;

    // Uncoded suffix of every file, independent of the demand.
    for (unsigned n = 1; n <= params.file_count; ++n) {
        if (suffix_len == 0) break;
        const auto& file = lib.file(n);
        TransmissionEntry entry;
        entry.virtual_user = 0;
        entry.file_index = n;
        entry.symbols.assign(file.begin() + prefix_len, file.end());
        record.entries.push_back(std::move(entry));
    }

    if (prefix_len > 0) {
        SystemParams prefix_params(params.user_count, params.file_count, prefix_len,
                                   params.field);
        std::vector<std::vector<FieldElement>> prefix_files;
        prefix_files.reserve(params.file_count);
        for (unsigned n = 1; n <= params.file_count; ++n) {
            const auto& file = lib.file(n);
            prefix_files.emplace_back(file.begin(), file.begin() + prefix_len);
        }
        PrivatePlacement prefix =
            pv_place_with_keys(prefix_params, FileLibrary(std::move(prefix_files)), g, keys);
        TransmissionRecord coded = pv_deliver(prefix, demand);
        for (auto& entry : coded.entries) record.entries.push_back(std::move(entry));
    }
    return record;
}

TransmissionRecord hybrid_deliver(const SystemParams& params, const FileLibrary& lib,
                                  const GeneratorMatrix& g, uint64_t seed,
                                  const Rational& memory, const DemandVector& demand) {
    return hybrid_deliver(params, lib, g, draw_keys(params.user_count, params.file_count, seed),
                          memory, demand);
}

}  // namespace veilcache
