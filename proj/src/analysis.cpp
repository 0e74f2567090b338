#include "veilcache/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace veilcache {

namespace {

void check_system(unsigned user_count, unsigned file_count) {
    if (user_count < 1 || file_count < 1) {
        throw std::invalid_argument("user and file counts must be positive");
    }
}

std::string format_float(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

Rational mstar(unsigned user_count, unsigned file_count) {
    check_system(user_count, file_count);
    return Rational(1, static_cast<long long>(user_count) * (file_count - 1) + 1);
}

Rational optimal_private_rate(unsigned user_count, unsigned file_count, const Rational& memory) {
    check_system(user_count, file_count);
    if (memory < Rational(0) || mstar(user_count, file_count) < memory) {
        throw std::domain_error("optimal rate is characterized only on [0, 1/(K(N-1)+1)]");
    }
    return Rational(file_count) * (Rational(1) - memory);
}

Rational lower_bound(unsigned user_count, unsigned file_count, const Rational& memory) {
    check_system(user_count, file_count);
    if (memory < Rational(0) || Rational(file_count) < memory) {
        throw std::domain_error("memory must lie in [0, N]");
    }
    Rational best;
    bool first = true;
    for (unsigned l = 1; l <= file_count; ++l) {
        long long cap = std::min<long long>(l + 1, user_count);
        long long rest = static_cast<long long>(file_count) - l;
        Rational value = Rational(l) + Rational(cap * rest, rest + cap) - Rational(l) * memory;
        if (first || best < value) {
            best = value;
            first = false;
        }
    }
    return best;
}

long long binomial(unsigned a, unsigned b) {
    if (b > a) return 0;
    if (b > a - b) b = a - b;
    __int128 result = 1;
    for (unsigned i = 1; i <= b; ++i) {
        result = result * (a - b + i) / i;
        if (result > __int128(INT64_MAX)) throw std::overflow_error("binomial overflow");
    }
    return static_cast<long long>(result);
}

Rational virtual_user_rate_grid(unsigned user_count, unsigned file_count,
                                const Rational& memory) {
    check_system(user_count, file_count);
    Rational km = Rational(user_count) * memory;
    if (!km.is_integer() || km < Rational(0) ||
        Rational(static_cast<long long>(user_count) * file_count) < km) {
        throw std::domain_error("grid formula needs M in {0, 1/K, ..., N}");
    }
    unsigned t = static_cast<unsigned>(km.num());
    unsigned kn = user_count * file_count;
    long long numer = binomial(kn, t + 1) - binomial(kn - file_count, t + 1);
    long long denom = binomial(kn, t);
    return Rational(numer, denom);
}

Rational virtual_user_rate_envelope(unsigned user_count, unsigned file_count,
                                    const Rational& memory) {
    check_system(user_count, file_count);
    if (memory < Rational(0) || Rational(file_count) < memory) {
        throw std::domain_error("memory must lie in [0, N]");
    }
    unsigned kn = user_count * file_count;
    std::vector<RatePoint> pts;
    pts.reserve(kn + 1);
    for (unsigned t = 0; t <= kn; ++t) {
        Rational m(t, user_count);
        pts.push_back({m, virtual_user_rate_grid(user_count, file_count, m), ""});
    }
    // lower hull, Andrew scan on exact rationals
    std::vector<RatePoint> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            // keep b only if it lies strictly below segment a-pt
            Rational lhs = (b.rate - a.rate) * (pt.memory - a.memory);
            Rational rhs = (pt.rate - a.rate) * (b.memory - a.memory);
            if (lhs < rhs) break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }
    for (size_t i = 1; i < hull.size(); ++i) {
        if (memory <= hull[i].memory) {
            const auto& a = hull[i - 1];
            const auto& b = hull[i];
            Rational t = (memory - a.memory) / (b.memory - a.memory);
            return a.rate + t * (b.rate - a.rate);
        }
    }
    return hull.back().rate;
}

Rational virtual_user_rate_at_mstar(unsigned user_count, unsigned file_count) {
    Rational ms = mstar(user_count, file_count);
    return Rational(file_count) * (Rational(1) - ms) +
           Rational(file_count - 1, 2 * (static_cast<long long>(user_count) * (file_count - 1) + 1));
}

Rational lfr_dpcu_rate_at_mstar(unsigned user_count, unsigned file_count) {
    check_system(user_count, file_count);
    long long sp = static_cast<long long>(user_count) * (file_count - 1) + 1;
    Rational base = Rational(file_count) * (Rational(1) - Rational(1, sp));
    if (user_count >= file_count) return base + Rational(file_count - 1, sp);
    return base + Rational(user_count, sp);
}

MstarComparison comparison_rates_at_mstar(unsigned user_count, unsigned file_count) {
    check_system(user_count, file_count);
    MstarComparison cmp;
    cmp.memory = mstar(user_count, file_count);
    cmp.rows.push_back(
        {cmp.memory, optimal_private_rate(user_count, file_count, cmp.memory), "optimal"});
    cmp.rows.push_back(
        {cmp.memory, virtual_user_rate_at_mstar(user_count, file_count), "virtual_user"});
    cmp.rows.push_back(
        {cmp.memory, lfr_dpcu_rate_at_mstar(user_count, file_count), "lfr_dpcu"});
    cmp.rows.push_back(
        {cmp.memory, lower_bound(user_count, file_count, cmp.memory), "lower_bound"});

    cmp.stated_pair_rate_at_inv_k =
        Rational(2LL * user_count - file_count - 1, 2LL * user_count);
    cmp.grid_rate_at_inv_k =
        virtual_user_rate_grid(user_count, file_count, Rational(1, user_count));
    if (cmp.stated_pair_rate_at_inv_k != cmp.grid_rate_at_inv_k) {
        cmp.footnote =
            "note: the virtual-user scheme's quoted grid pair (1/K, (2K-N-1)/(2K)) gives R = " +
            cmp.stated_pair_rate_at_inv_k.to_string() + " at M = 1/K, while its binomial grid "
            "formula gives R = " + cmp.grid_rate_at_inv_k.to_string() +
            " there; the comparison row uses the memory-sharing value consistent with the "
            "binomial grid.";
    }
    return cmp;
}

std::vector<TradeoffRow> tradeoff_table(unsigned user_count, unsigned file_count,
                                        std::span<const Rational> memory_grid) {
    check_system(user_count, file_count);
    Rational ms = mstar(user_count, file_count);
    std::vector<TradeoffRow> rows;
    rows.reserve(memory_grid.size());
    for (const Rational& m : memory_grid) {
        TradeoffRow row;
        row.memory = m;
        row.optimal_region = !(ms < m);
        Rational bound = lower_bound(user_count, file_count, m);
        row.values.push_back({m, bound, "lower_bound"});
        row.ordering_ok = true;
        if (row.optimal_region) {
            Rational opt = optimal_private_rate(user_count, file_count, m);
            row.values.push_back({m, opt, "optimal"});
            if (opt < bound) row.ordering_ok = false;
        }
        Rational vu = virtual_user_rate_envelope(user_count, file_count, m);
        row.values.push_back({m, vu, "virtual_user"});
        if (vu < bound) row.ordering_ok = false;
        if (m == ms) {
            Rational lfr = lfr_dpcu_rate_at_mstar(user_count, file_count);
            row.values.push_back({m, lfr, "lfr_dpcu"});
            if (lfr < bound) row.ordering_ok = false;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string rate_table_csv(std::span<const TradeoffRow> rows) {
    std::string out = "M_num,M_den,scheme,R_num,R_den,R_float\n";
    for (const auto& row : rows) {
        for (const auto& value : row.values) {
            out += std::to_string(value.memory.num()) + "," +
                   std::to_string(value.memory.den()) + "," + value.scheme + "," +
                   std::to_string(value.rate.num()) + "," + std::to_string(value.rate.den()) +
                   "," + format_float(value.rate.to_double()) + "\n";
        }
    }
    return out;
}

nlohmann::json rate_table_json(std::span<const TradeoffRow> rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json values = nlohmann::json::array();
        for (const auto& value : row.values) {
            values.push_back(nlohmann::json{{"scheme", value.scheme},
                                            {"R_num", value.rate.num()},
                                            {"R_den", value.rate.den()},
                                            {"R_float", value.rate.to_double()}});
        }
        out.push_back(nlohmann::json{{"M_num", row.memory.num()},
                                     {"M_den", row.memory.den()},
                                     {"optimal_region", row.optimal_region},
                                     {"ordering_ok", row.ordering_ok},
                                     {"rates", std::move(values)}});
    }
    return out;
}

nlohmann::json comparison_json(const MstarComparison& cmp) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : cmp.rows) {
        rows.push_back(nlohmann::json{{"scheme", row.scheme},
                                      {"M_num", row.memory.num()},
                                      {"M_den", row.memory.den()},
                                      {"R_num", row.rate.num()},
                                      {"R_den", row.rate.den()},
                                      {"R_float", row.rate.to_double()}});
    }
    nlohmann::json doc{{"rows", std::move(rows)}};
    doc["stated_pair_rate_at_inv_k"] = cmp.stated_pair_rate_at_inv_k.to_string();
    doc["grid_rate_at_inv_k"] = cmp.grid_rate_at_inv_k.to_string();
    if (!cmp.footnote.empty()) doc["footnote"] = cmp.footnote;
    return doc;
}

}  // namespace veilcache
