#include "veilcache/nonprivate.hpp"

#include <algorithm>
#include <map>

namespace veilcache {

namespace {

void check_scheme_inputs(const SystemParams& params, const FileLibrary& lib,
                         const GeneratorMatrix& g) {
    if (lib.file_count() != params.file_count || lib.file_length() != params.file_length) {
        throw std::invalid_argument("library does not match system parameters");
    }
    if (g.field() != params.field) {
        throw std::invalid_argument("generator field does not match system field");
    }
    if (g.code_length() != params.virtual_user_count() ||
        g.message_length() != params.subpacket_count()) {
        throw std::invalid_argument("generator must be (" +
                                    std::to_string(params.virtual_user_count()) + ", " +
                                    std::to_string(params.subpacket_count()) + ")");
    }
}

}  // namespace

namespace detail {

NonPrivatePlacement np_place_unchecked(const SystemParams& params, const FileLibrary& lib,
                                       const GeneratorMatrix& g) {
    check_scheme_inputs(params, lib, g);
    unsigned sp = params.subpacket_count();
    unsigned vu = params.virtual_user_count();
    size_t stripe = params.subfile_length();

    NonPrivatePlacement pl{params, g, {}, {}};
    pl.coded.assign(params.file_count,
                    std::vector<std::vector<FieldElement>>(
                        vu, std::vector<FieldElement>(stripe, params.field.zero())));

    // Subfile j of file n occupies symbols [(j-1)L, jL); encoding is applied
    // per stripe position across the subfiles.
    std::vector<FieldElement> message(sp, params.field.zero());
    for (unsigned n = 1; n <= params.file_count; ++n) {
        const auto& file = lib.file(n);
        for (size_t t = 0; t < stripe; ++t) {
            for (unsigned j = 0; j < sp; ++j) message[j] = file[size_t(j) * stripe + t];
            std::vector<FieldElement> codeword = g.encode(message);
            for (unsigned i = 0; i < vu; ++i) pl.coded[n - 1][i][t] = codeword[i];
        }
    }

    pl.caches.resize(vu);
    for (unsigned i = 1; i <= vu; ++i) {
        CacheContent& z = pl.caches[i - 1];
        z.user = i;
        z.symbols.assign(stripe, params.field.zero());
        for (unsigned n = 1; n <= params.file_count; ++n) {
            for (size_t t = 0; t < stripe; ++t) {
                z.symbols[t] = z.symbols[t] + pl.coded[n - 1][i - 1][t];
            }
        }
    }
    return pl;
}

}  // namespace detail

NonPrivatePlacement np_place(const SystemParams& params, const FileLibrary& lib,
                             const GeneratorMatrix& g) {
    check_scheme_inputs(params, lib, g);
    MdsCheck check = verify_mds(g);
    if (!check.ok) {
        std::string cols;
        for (size_t c : check.failing_columns) cols += (cols.empty() ? "" : ",") + std::to_string(c);
        throw std::invalid_argument("generator is not MDS: columns {" + cols + "} are singular");
    }
    return detail::np_place_unchecked(params, lib, g);
}

TransmissionRecord np_deliver(const NonPrivatePlacement& placement, const DemandVector& demand) {
    const SystemParams& params = placement.params;
    unsigned vu = params.virtual_user_count();
    if (demand.size() != vu) {
        throw std::invalid_argument("non-private demand must list all " + std::to_string(vu) +
                                    " virtual users");
    }
    auto profile = demand_profile(demand, params.file_count);
    if (!is_uniform(profile)) {
        throw std::invalid_argument("demand profile is not uniform; delivery is defined only "
                                    "for uniform profiles");
    }

    TransmissionRecord record;
    record.file_length = params.file_length;
    for (unsigned k = 1; k <= vu; ++k) {
        for (unsigned i = 1; i <= params.file_count; ++i) {
            if (i == demand[k - 1]) continue;
            record.entries.push_back({k, i, placement.coded_subfile(i, k)});
        }
    }
    return record;
}

std::vector<FieldElement> np_decode(const SystemParams& params, const GeneratorMatrix& g,
                                    unsigned virtual_user, const CacheContent& cache,
                                    unsigned demanded_file, const TransmissionRecord& record) {
    unsigned sp = params.subpacket_count();
    size_t stripe = params.subfile_length();
    if (cache.symbols.size() != stripe) {
        throw std::invalid_argument("cache size does not match one coded subfile");
    }

    // Coded subfiles of the demanded file arrive directly at every position
    // whose virtual user demands something else.
    std::map<size_t, const std::vector<FieldElement>*> direct;
    std::vector<const std::vector<FieldElement>*> own_terms;
    for (const auto& e : record.entries) {
        if (e.file_index == demanded_file) direct[e.virtual_user] = &e.symbols;
        if (e.virtual_user == virtual_user) own_terms.push_back(&e.symbols);
    }
    if (own_terms.size() != params.file_count - 1u) {
        throw std::invalid_argument("transmission is missing entries for virtual user " +
                                    std::to_string(virtual_user));
    }
    if (direct.size() != size_t(params.virtual_user_count()) - params.user_count) {
        throw std::invalid_argument("transmission does not carry the expected coded subfiles "
                                    "of file " + std::to_string(demanded_file));
    }

    // C_{d,k} = Z_k minus every other file's coded subfile at position k.
    std::vector<FieldElement> own(stripe, params.field.zero());
    for (size_t t = 0; t < stripe; ++t) {
        FieldElement v = cache.symbols[t];
        for (const auto* term : own_terms) v = v - (*term)[t];
        own[t] = v;
    }

    std::vector<size_t> positions;
    positions.reserve(sp);
    positions.push_back(virtual_user);
    for (const auto& [pos, sym] : direct) positions.push_back(pos);
    std::sort(positions.begin(), positions.end());
    if (positions.size() != sp) {
        throw std::invalid_argument("fewer than K(N-1)+1 coded subfiles available");
    }

    std::vector<FieldElement> file(params.file_length, params.field.zero());
    std::vector<FieldElement> observed(sp, params.field.zero());
    for (size_t t = 0; t < stripe; ++t) {
        for (size_t idx = 0; idx < sp; ++idx) {
            size_t pos = positions[idx];
            observed[idx] = (pos == virtual_user) ? own[t] : (*direct.at(pos))[t];
        }
        std::vector<FieldElement> message = g.decode_from_any_k(positions, observed);
        for (unsigned j = 0; j < sp; ++j) file[size_t(j) * stripe + t] = message[j];
    }
    return file;
}

}  // namespace veilcache
