#pragma once

#include <vector>

#include "veilcache/mds.hpp"
#include "veilcache/model.hpp"

namespace veilcache {

// The (KN, N) scheme at M = 1/(K(N-1)+1): every file is split into
// K(N-1)+1 subfiles, MDS-encoded into KN coded subfiles, and cache i stores
// the field sum over files of the i-th coded subfile.
struct NonPrivatePlacement {
    SystemParams params;
    GeneratorMatrix generator;  // (KN, K(N-1)+1)
    // coded[n-1][i-1] = C_{n,i}, a stripe vector of L = F / (K(N-1)+1) symbols
    std::vector<std::vector<std::vector<FieldElement>>> coded;
    std::vector<CacheContent> caches;  // KN entries, Z_i = sum_n C_{n,i}

    const std::vector<FieldElement>& coded_subfile(unsigned file, unsigned position) const {
        return coded[file - 1][position - 1];
    }
};

// Rejects generators whose MDS property fails (exhaustive check).
NonPrivatePlacement np_place(const SystemParams& params, const FileLibrary& lib,
                             const GeneratorMatrix& g);

namespace detail {
// Placement without the MDS certificate; the audit module uses this so a
// deliberately corrupted generator surfaces as a decode counterexample
// instead of an upfront rejection.
NonPrivatePlacement np_place_unchecked(const SystemParams& params, const FileLibrary& lib,
                                       const GeneratorMatrix& g);
}  // namespace detail

// Broadcasts C_{i,k} for every virtual user k and every file i != d_k, in
// canonical order. The demand must have a uniform profile (each file demanded
// by exactly K of the KN virtual users); anything else is rejected.
TransmissionRecord np_deliver(const NonPrivatePlacement& placement, const DemandVector& demand);

// Replays virtual user k's side: recovers C_{d_k,k} from the cache and the
// N-1 entries addressed to k, takes the KN-K directly transmitted coded
// subfiles of file d_k, and decodes W_{d_k} from those K(N-1)+1 positions.
std::vector<FieldElement> np_decode(const SystemParams& params, const GeneratorMatrix& g,
                                    unsigned virtual_user, const CacheContent& cache,
                                    unsigned demanded_file, const TransmissionRecord& record);

}  // namespace veilcache
