#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "veilcache/private_scheme.hpp"
#include "veilcache/rational.hpp"

#include <json.hpp>

namespace veilcache {

struct AuditOptions {
    // Per-run case cap; one case is one (demand, key) scheme evaluation. When
    // the full grid exceeds the cap, the run stops early and is reported as
    // partial coverage.
    size_t case_cap = 1'000'000;
    unsigned jobs = 0;  // 0 = hardware concurrency
};

struct DecodabilityCounterexample {
    DemandVector demand;             // real demand d
    std::vector<unsigned> keys;      // S values
    unsigned user = 0;               // real user that failed
    unsigned demanded_file = 0;
    std::vector<FieldElement> expected;  // W_{d_k}
    std::vector<FieldElement> decoded;   // empty when decode threw
    std::string note;                    // "wrong symbols" or the decode error
};

// Every (d, S) pair in [N]^K x [N]^K, every real user: place with forced
// keys, deliver, decode, compare against the library.
struct DecodabilityReport {
    unsigned user_count = 0;
    unsigned file_count = 0;
    size_t cases_total = 0;
    size_t cases_run = 0;
    bool complete = false;
    std::vector<DecodabilityCounterexample> counterexamples;

    bool pass() const { return complete && counterexamples.empty(); }
    nlohmann::json to_json() const;
};

DecodabilityReport verify_decodability(const SystemParams& params, const FileLibrary& lib,
                                       const GeneratorMatrix& g, const AuditOptions& opt = {});

// How keys are distributed when enumerating the observer's view.
struct KeyModel {
    // Uniform i.i.d. keys (the scheme as designed).
    static KeyModel uniform() { return {}; }
    // Degenerate model with a single fixed key vector; breaks privacy and is
    // used as the negative control.
    static KeyModel fixed(std::vector<unsigned> values) { return {std::move(values)}; }

    std::optional<std::vector<unsigned>> fixed_values;
};

struct PrivacyWitness {
    unsigned user = 0;
    std::vector<unsigned> others_a;  // two conditioning values of d_~k ...
    std::vector<unsigned> others_b;
    std::string event;               // ... and the (d_k, Z_k, X) event whose mass differs
    Rational prob_a;
    Rational prob_b;
};

struct PrivacyUserResult {
    unsigned user = 0;
    bool pass = false;
    Rational max_total_variation;  // across d_~k cells, diagnostics only
    // canonical (d_k, Z_k, X) serialization -> exact probability, per d_~k
    std::vector<std::vector<unsigned>> cells;  // d_~k value per cell
    std::vector<std::map<std::string, Rational>> distributions;
};

// Exact enumeration of the conditional distribution of (d_k, Z_k, X) given
// d_~k for each user, with demands and keys i.i.d. uniform. The scheme is
// private iff for each user the distribution is the same for every d_~k.
struct PrivacyReport {
    unsigned user_count = 0;
    unsigned file_count = 0;
    size_t cases_total = 0;
    size_t cases_run = 0;
    bool complete = false;
    std::vector<PrivacyUserResult> users;
    std::optional<PrivacyWitness> witness;

    bool pass() const;
    nlohmann::json to_json(bool include_distributions = true) const;
};

PrivacyReport verify_privacy(const SystemParams& params, const FileLibrary& lib,
                             const GeneratorMatrix& g, const KeyModel& keys = KeyModel::uniform(),
                             const AuditOptions& opt = {});

// The full (cache assignment x demand) -> broadcast grid for the two-user,
// two-file system. Rows are the four (S_1, S_2) cache assignments, columns
// the four distinct broadcasts; each cell names the demand vector that maps
// to that broadcast under that assignment.
struct Table1 {
    std::vector<std::string> row_labels;     // "Z_1,Z_3", ...
    std::vector<std::string> column_labels;  // rendered broadcasts, first-row demand order
    std::vector<std::vector<std::string>> cells;  // [row][col] -> "[A,B]"
    bool rows_complete = false;   // every row contains all four demands
    bool latin_square = false;    // every column hits every demand once across rows

    nlohmann::json to_json() const;
    std::string render_text() const;
};

Table1 table1_reconstruct(const SystemParams& params, const FileLibrary& lib,
                          const GeneratorMatrix& g);

// Canonical serialization of the observer triple; exposed for tests.
std::string canonical_triple(unsigned demand, const std::vector<FieldElement>& cache,
                             const TransmissionRecord& record);

}  // namespace veilcache
