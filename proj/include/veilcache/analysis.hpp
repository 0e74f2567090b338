#pragma once

#include <span>
#include <string>
#include <vector>

#include "veilcache/rational.hpp"

#include <json.hpp>

namespace veilcache {

struct RatePoint {
    Rational memory;  // M, normalized cache size
    Rational rate;    // R, normalized delivery load
    std::string scheme;
};

// M* = 1/(K(N-1)+1), the memory point of the coded-placement scheme.
Rational mstar(unsigned user_count, unsigned file_count);

// N(1-M), the exact optimum on [0, M*]. Rejects M outside that interval.
Rational optimal_private_rate(unsigned user_count, unsigned file_count, const Rational& memory);

// max over l in [N] of l + min(l+1,K)(N-l)/(N-l+min(l+1,K)) - lM.
Rational lower_bound(unsigned user_count, unsigned file_count, const Rational& memory);

// C(a, b) with the convention C(a, b) = 0 when b > a.
long long binomial(unsigned a, unsigned b);

// Virtual-user scheme on the memory grid {0, 1/K, ..., N}:
// [C(KN, KM+1) - C(KN-N, KM+1)] / C(KN, KM). Rejects non-integral KM.
Rational virtual_user_rate_grid(unsigned user_count, unsigned file_count,
                                const Rational& memory);

// Lower convex envelope of the grid points, evaluated anywhere in [0, N].
Rational virtual_user_rate_envelope(unsigned user_count, unsigned file_count,
                                    const Rational& memory);

// Memory-sharing value of the virtual-user scheme at M*, from the line
// between (0, N) and (1/K, grid rate at 1/K):
// N(1-M*) + (N-1)/(2[K(N-1)+1]).
Rational virtual_user_rate_at_mstar(unsigned user_count, unsigned file_count);

// LFR-DPCU closed-form rate at M*: N(1-M*) plus (N-1)/(K(N-1)+1) when
// K >= N, else K/(K(N-1)+1).
Rational lfr_dpcu_rate_at_mstar(unsigned user_count, unsigned file_count);

struct MstarComparison {
    Rational memory;              // M*
    std::vector<RatePoint> rows;  // optimal, virtual_user, lfr_dpcu, lower_bound
    // The virtual-user scheme is quoted elsewhere with the grid pair
    // (1/K, (2K-N-1)/(2K)); its binomial grid value at 1/K disagrees with
    // that. Both are carried here so the discrepancy stays visible.
    Rational stated_pair_rate_at_inv_k;  // (2K-N-1)/(2K)
    Rational grid_rate_at_inv_k;         // binomial formula at M = 1/K
    std::string footnote;
};

MstarComparison comparison_rates_at_mstar(unsigned user_count, unsigned file_count);

struct TradeoffRow {
    Rational memory;
    bool optimal_region = false;  // M <= M*, where the optimum meets the bound
    bool ordering_ok = false;     // lower_bound <= achievable rates at this M
    std::vector<RatePoint> values;
};

std::vector<TradeoffRow> tradeoff_table(unsigned user_count, unsigned file_count,
                                        std::span<const Rational> memory_grid);

// CSV columns: M_num, M_den, scheme, R_num, R_den, R_float (6 significant digits).
std::string rate_table_csv(std::span<const TradeoffRow> rows);
nlohmann::json rate_table_json(std::span<const TradeoffRow> rows);
nlohmann::json comparison_json(const MstarComparison& cmp);

}  // namespace veilcache
