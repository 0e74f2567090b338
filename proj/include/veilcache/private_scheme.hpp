#pragma once

#include <cstdint>
#include <vector>

#include "veilcache/nonprivate.hpp"
#include "veilcache/rational.hpp"

#include <json.hpp>

namespace veilcache {

// S_k: uniform over [N], drawn at placement time and shared secretly between
// the server and user k. Real user k impersonates virtual user (k-1)N + S_k.
struct PrivacyKey {
    unsigned user = 0;   // k in [K]
    unsigned value = 0;  // S_k in [N]
};

std::vector<PrivacyKey> draw_keys(unsigned user_count, unsigned file_count, uint64_t seed);
std::vector<PrivacyKey> keys_from_values(const std::vector<unsigned>& values,
                                         unsigned file_count);

struct PrivatePlacement {
    NonPrivatePlacement base;          // over KN virtual users
    std::vector<PrivacyKey> keys;      // K keys
    std::vector<CacheContent> real_caches;  // real_caches[k-1] = base cache (k-1)N + S_k

    unsigned virtual_index(unsigned real_user) const {
        return (real_user - 1) * base.params.file_count + keys[real_user - 1].value;
    }

    // Keys are secret placement-side state: they appear in this record for
    // audit replay only and are never part of an observer-facing trace.
    nlohmann::json to_json(bool include_secret = true) const;
};

PrivatePlacement pv_place(const SystemParams& params, const FileLibrary& lib,
                          const GeneratorMatrix& g, uint64_t seed);
PrivatePlacement pv_place_with_keys(const SystemParams& params, const FileLibrary& lib,
                                    const GeneratorMatrix& g,
                                    const std::vector<PrivacyKey>& keys);

// q_k = (1,...,N) right-cyclic-shifted by (S_k - d_k) mod N, so q_k[S_k] = d_k
// and the concatenation has the uniform profile [K,...,K].
DemandVector virtual_demand(const DemandVector& demand, const std::vector<PrivacyKey>& keys,
                            unsigned file_count);

TransmissionRecord pv_deliver(const PrivatePlacement& placement, const DemandVector& demand);

// User-side decode: everything user k holds is its cache, its key and the
// broadcast.
std::vector<FieldElement> pv_decode(const SystemParams& params, const GeneratorMatrix& g,
                                    unsigned real_user, const CacheContent& cache,
                                    unsigned key_value, unsigned demanded_file,
                                    const TransmissionRecord& record);

// Memory sharing below M* = 1/(K(N-1)+1): a prefix of alpha*F symbols per
// file runs the M* scheme, the remaining suffix of every file is broadcast
// uncoded (virtual_user = 0 entries) regardless of the demand. Total rate is
// exactly N(1-M). alpha = M*(K(N-1)+1) must split F integrally.
TransmissionRecord hybrid_deliver(const SystemParams& params, const FileLibrary& lib,
                                  const GeneratorMatrix& g, const std::vector<PrivacyKey>& keys,
                                  const Rational& memory, const DemandVector& demand);
TransmissionRecord hybrid_deliver(const SystemParams& params, const FileLibrary& lib,
                                  const GeneratorMatrix& g, uint64_t seed,
                                  const Rational& memory, const DemandVector& demand);

}  // namespace veilcache
