#include "veilcache/audit.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include "veilcache/render.hpp"

namespace veilcache {

namespace {

unsigned resolve_jobs(unsigned jobs) {
    if (jobs == 0) jobs = std::thread::hardware_concurrency();
    return jobs == 0 ? 1 : jobs;
}

template <typename Fn>
void parallel_for(size_t count, unsigned jobs, Fn&& fn) {
    jobs = resolve_jobs(jobs);
    if (jobs > count) jobs = static_cast<unsigned>(count);
    if (jobs <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

size_t pow_size(size_t base, unsigned exp) {
    size_t out = 1;
    for (unsigned i = 0; i < exp; ++i) out *= base;
    return out;
}

// index -> vector in [N]^len, lexicographic, first position most significant
std::vector<unsigned> unrank(size_t index, unsigned base, unsigned len) {
    std::vector<unsigned> out(len, 1);
    for (unsigned pos = len; pos-- > 0;) {
        out[pos] = 1 + static_cast<unsigned>(index % base);
        index /= base;
    }
    return out;
}

nlohmann::json rational_json(const Rational& r) { return r.to_string(); }

}  // namespace

std::string canonical_triple(unsigned demand, const std::vector<FieldElement>& cache,
                             const TransmissionRecord& record) {
    std::string out = "d=" + std::to_string(demand) + "|Z=";
    for (size_t t = 0; t < cache.size(); ++t) {
        if (t) out += ",";
        out += std::to_string(cache[t].value());
    }
    out += "|X=";
    for (size_t i = 0; i < record.entries.size(); ++i) {
        const auto& e = record.entries[i];
        if (i) out += ";";
        out += std::to_string(e.virtual_user) + ":" + std::to_string(e.file_index) + ":";
        for (size_t t = 0; t < e.symbols.size(); ++t) {
            if (t) out += ",";
            out += std::to_string(e.symbols[t].value());
        }
    }
    return out;
}

DecodabilityReport verify_decodability(const SystemParams& params, const FileLibrary& lib,
                                       const GeneratorMatrix& g, const AuditOptions& opt) {
    unsigned K = params.user_count;
    unsigned N = params.file_count;
    DecodabilityReport report;
    report.user_count = K;
    report.file_count = N;

    size_t demand_space = pow_size(N, K);
    report.cases_total = demand_space * demand_space;  // (d, S) pairs
    NonPrivatePlacement base = detail::np_place_unchecked(params, lib, g);

    // Partial coverage is taken in whole key rows so the covered set is easy
    // to state: the first cases_run / N^K key vectors in lexicographic order.
    bool capped = report.cases_total > opt.case_cap;
    size_t key_slots = capped ? opt.case_cap / demand_space : demand_space;
    report.cases_run = key_slots * demand_space;
    report.complete = !capped;

    std::vector<std::vector<DecodabilityCounterexample>> per_key(key_slots);
    parallel_for(key_slots, opt.jobs, [&](size_t key_index) {
        std::vector<unsigned> key_values = unrank(key_index, N, K);
        auto keys = keys_from_values(key_values, N);
        for (size_t demand_index = 0; demand_index < demand_space; ++demand_index) {
            DemandVector d = unrank(demand_index, N, K);
            TransmissionRecord record = np_deliver(base, virtual_demand(d, keys, N));
            for (unsigned user = 1; user <= K; ++user) {
                unsigned vi = (user - 1) * N + key_values[user - 1];
                const CacheContent& cache = base.caches[vi - 1];
                unsigned wanted = d[user - 1];
                try {
                    auto decoded =
                        np_decode(params, g, vi, cache, wanted, record);
                    if (decoded != lib.file(wanted)) {
                        per_key[key_index].push_back({d, key_values, user, wanted,
                                                      lib.file(wanted), decoded,
                                                      "decoded symbols differ from the "
                                                      "demanded file"});
                    }
                } catch (const std::exception& err) {
                    per_key[key_index].push_back(
                        {d, key_values, user, wanted, lib.file(wanted), {}, err.what()});
                }
            }
        }
    });
    for (auto& chunk : per_key) {
        for (auto& ce : chunk) report.counterexamples.push_back(std::move(ce));
    }
    return report;
}

nlohmann::json DecodabilityReport::to_json() const {
    nlohmann::json ces = nlohmann::json::array();
    for (const auto& ce : counterexamples) {
        auto symbols = [](const std::vector<FieldElement>& v) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& s : v) arr.push_back(s.value());
            return arr;
        };
        ces.push_back(nlohmann::json{{"d", ce.demand},
                                     {"S", ce.keys},
                                     {"user", ce.user},
                                     {"file", ce.demanded_file},
                                     {"expected", symbols(ce.expected)},
                                     {"decoded", symbols(ce.decoded)},
                                     {"note", ce.note}});
    }
    return nlohmann::json{{"K", user_count},
                          {"N", file_count},
                          {"cases_total", cases_total},
                          {"cases_run", cases_run},
                          {"complete", complete},
                          {"pass", pass()},
                          {"counterexamples", std::move(ces)}};
}

bool PrivacyReport::pass() const {
    if (!complete || users.empty()) return false;
    for (const auto& u : users) {
        if (!u.pass) return false;
    }
    return true;
}

PrivacyReport verify_privacy(const SystemParams& params, const FileLibrary& lib,
                             const GeneratorMatrix& g, const KeyModel& key_model,
                             const AuditOptions& opt) {
    unsigned K = params.user_count;
    unsigned N = params.file_count;
    PrivacyReport report;
    report.user_count = K;
    report.file_count = N;

    NonPrivatePlacement base = detail::np_place_unchecked(params, lib, g);

    std::vector<std::vector<unsigned>> key_space;
    if (key_model.fixed_values) {
        if (key_model.fixed_values->size() != K) {
            throw std::invalid_argument("fixed key model needs one value per user");
        }
        key_space.push_back(*key_model.fixed_values);
    } else {
        size_t count = pow_size(N, K);
        key_space.reserve(count);
        for (size_t i = 0; i < count; ++i) key_space.push_back(unrank(i, N, K));
    }

    size_t cells_per_user = pow_size(N, K - 1);
    report.cases_total = size_t(K) * cells_per_user * N * key_space.size();
    if (report.cases_total > opt.case_cap) {
        report.complete = false;
        report.cases_run = 0;
        return report;
    }
    report.cases_run = report.cases_total;
    report.complete = true;

    Rational atom(1, static_cast<long long>(N) * static_cast<long long>(key_space.size()));

    report.users.assign(K, {});
    for (unsigned user = 1; user <= K; ++user) {
        PrivacyUserResult& result = report.users[user - 1];
        result.user = user;
        result.cells.resize(cells_per_user);
        result.distributions.resize(cells_per_user);
    }

    // Each (user, d_~k) cell tallies its own distribution; cells are
    // independent, so this is the fan-out unit.
    parallel_for(size_t(K) * cells_per_user, opt.jobs, [&](size_t slot) {
        unsigned user = static_cast<unsigned>(slot / cells_per_user) + 1;
        size_t cell = slot % cells_per_user;
        PrivacyUserResult& result = report.users[user - 1];

        std::vector<unsigned> others = unrank(cell, N, K - 1);
        result.cells[cell] = others;
        auto& dist = result.distributions[cell];
        for (unsigned own = 1; own <= N; ++own) {
            DemandVector d(K);
            for (unsigned j = 1, o = 0; j <= K; ++j) {
                d[j - 1] = (j == user) ? own : others[o++];
            }
            for (const auto& key_values : key_space) {
                auto keys = keys_from_values(key_values, N);
                TransmissionRecord x = np_deliver(base, virtual_demand(d, keys, N));
                unsigned vi = (user - 1) * N + key_values[user - 1];
                dist[canonical_triple(own, base.caches[vi - 1].symbols, x)] += atom;
            }
        }
        Rational total(0);
        for (const auto& [event, prob] : dist) total += prob;
        if (total != Rational(1)) {
            throw std::logic_error("conditional distribution mass is " + total.to_string());
        }
    });

    for (PrivacyUserResult& result : report.users) {
        result.pass = true;
        result.max_total_variation = Rational(0);
        for (size_t a = 0; a < cells_per_user; ++a) {
            for (size_t b = a + 1; b < cells_per_user; ++b) {
                const auto& da = result.distributions[a];
                const auto& db = result.distributions[b];
                Rational tv(0);
                auto gap = [](const Rational& pa, const Rational& pb) {
                    return (pa < pb) ? (pb - pa) : (pa - pb);
                };
                for (const auto& [event, pa] : da) {
                    auto it = db.find(event);
                    tv += gap(pa, it == db.end() ? Rational(0) : it->second);
                }
                for (const auto& [event, pb] : db) {
                    if (da.find(event) == da.end()) tv += gap(Rational(0), pb);
                }
                tv /= Rational(2);
                result.max_total_variation = Rational::max(result.max_total_variation, tv);
                if (!tv.is_zero()) result.pass = false;
            }
        }
    }

    for (const auto& result : report.users) {
        if (result.pass) continue;
        // Pin a concrete witness: the first pair of cells and event that differ.
        for (size_t a = 0; a < result.distributions.size() && !report.witness; ++a) {
            for (size_t b = a + 1; b < result.distributions.size() && !report.witness; ++b) {
                const auto& da = result.distributions[a];
                const auto& db = result.distributions[b];
                auto emit = [&](const std::string& event, const Rational& pa,
                                const Rational& pb) {
                    report.witness = PrivacyWitness{result.user, result.cells[a],
                                                    result.cells[b], event, pa, pb};
                };
                for (const auto& [event, pa] : da) {
                    auto it = db.find(event);
                    Rational pb = it == db.end() ? Rational(0) : it->second;
                    if (pa != pb) {
                        emit(event, pa, pb);
                        break;
                    }
                }
                if (report.witness) break;
                for (const auto& [event, pb] : db) {
                    if (da.find(event) == da.end()) {
                        emit(event, Rational(0), pb);
                        break;
                    }
                }
            }
        }
        break;
    }
    return report;
}

nlohmann::json PrivacyReport::to_json(bool include_distributions) const {
    nlohmann::json user_docs = nlohmann::json::array();
    for (const auto& u : users) {
        nlohmann::json doc{{"user", u.user},
                           {"pass", u.pass},
                           {"max_total_variation", rational_json(u.max_total_variation)}};
        if (include_distributions) {
            nlohmann::json cells = nlohmann::json::array();
            for (size_t c = 0; c < u.cells.size(); ++c) {
                nlohmann::json dist = nlohmann::json::object();
                for (const auto& [event, prob] : u.distributions[c]) {
                    dist[event] = rational_json(prob);
                }
                cells.push_back(
                    nlohmann::json{{"others", u.cells[c]}, {"distribution", std::move(dist)}});
            }
            doc["cells"] = std::move(cells);
        }
        user_docs.push_back(std::move(doc));
    }
    nlohmann::json doc{{"K", user_count},
                       {"N", file_count},
                       {"cases_total", cases_total},
                       {"cases_run", cases_run},
                       {"complete", complete},
                       {"pass", pass()},
                       {"users", std::move(user_docs)}};
    if (witness) {
        doc["witness"] = nlohmann::json{{"user", witness->user},
                                        {"others_a", witness->others_a},
                                        {"others_b", witness->others_b},
                                        {"event", witness->event},
                                        {"prob_a", rational_json(witness->prob_a)},
                                        {"prob_b", rational_json(witness->prob_b)}};
    }
    return doc;
}

Table1 table1_reconstruct(const SystemParams& params, const FileLibrary& lib,
                          const GeneratorMatrix& g) {
    if (params.user_count != 2 || params.file_count != 2) {
        throw std::invalid_argument("the broadcast grid is defined for the (2, 2) system");
    }
    NonPrivatePlacement base = np_place(params, lib, g);

    const unsigned N = 2, K = 2;
    std::vector<std::vector<unsigned>> assignments, demands;
    for (size_t i = 0; i < 4; ++i) {
        assignments.push_back(unrank(i, N, K));
        demands.push_back(unrank(i, N, K));
    }

    Table1 table;
    std::vector<std::vector<std::string>> canon(4, std::vector<std::string>(4));
    std::vector<std::vector<std::string>> rendered(4, std::vector<std::string>(4));
    for (size_t r = 0; r < 4; ++r) {
        const auto& s = assignments[r];
        table.row_labels.push_back("Z_" + std::to_string(s[0]) + ",Z_" +
                                   std::to_string(2 + s[1]));
        auto keys = keys_from_values(s, N);
        for (size_t c = 0; c < 4; ++c) {
            TransmissionRecord x = np_deliver(base, virtual_demand(demands[c], keys, N));
            canon[r][c] = canonical_triple(0, {}, x);
            rendered[r][c] = render_record(g, x, N);
        }
    }

    // Columns in the first row's demand order, the layout the golden fixtures expect.
    std::vector<std::string> column_canon(4);
    for (size_t c = 0; c < 4; ++c) {
        column_canon[c] = canon[0][c];
        table.column_labels.push_back(rendered[0][c]);
    }

    table.cells.assign(4, std::vector<std::string>(4));
    table.rows_complete = true;
    for (size_t r = 0; r < 4; ++r) {
        std::vector<bool> used(4, false);
        for (size_t d = 0; d < 4; ++d) {
            bool placed = false;
            for (size_t c = 0; c < 4; ++c) {
                if (canon[r][d] == column_canon[c] && !used[c]) {
                    table.cells[r][c] = render_demand(demands[d], N);
                    used[c] = true;
                    placed = true;
                    break;
                }
            }
            if (!placed) table.rows_complete = false;
        }
    }

    table.latin_square = true;
    for (size_t c = 0; c < 4 && table.latin_square; ++c) {
        std::vector<std::string> column;
        for (size_t r = 0; r < 4; ++r) column.push_back(table.cells[r][c]);
        for (size_t a = 0; a < 4; ++a) {
            for (size_t b = a + 1; b < 4; ++b) {
                if (column[a].empty() || column[a] == column[b]) table.latin_square = false;
            }
        }
    }
    return table;
}

nlohmann::json Table1::to_json() const {
    return nlohmann::json{{"rows", row_labels},
                          {"columns", column_labels},
                          {"cells", cells},
                          {"rows_complete", rows_complete},
                          {"latin_square", latin_square}};
}

std::string Table1::render_text() const {
    std::string out = "broadcast columns:\n";
    for (size_t c = 0; c < column_labels.size(); ++c) {
        out += "  X" + std::to_string(c + 1) + " = " + column_labels[c] + "\n";
    }
    out += "\ncaches \\ X^d";
    for (size_t c = 0; c < column_labels.size(); ++c) {
        out += "      X" + std::to_string(c + 1);
    }
    out += "\n";
    for (size_t r = 0; r < row_labels.size(); ++r) {
        std::string line = row_labels[r];
        while (line.size() < 12) line += ' ';
        for (const auto& cell : cells[r]) {
            std::string padded = cell;
            while (padded.size() < 8) padded.insert(padded.begin(), ' ');
            line += padded;
        }
        out += line + "\n";
    }
    return out;
}

}  // namespace veilcache
