#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "veilcache/analysis.hpp"
#include "veilcache/audit.hpp"
#include "veilcache/galois.hpp"
#include "veilcache/mds.hpp"
#include "veilcache/model.hpp"
#include "veilcache/nonprivate.hpp"
#include "veilcache/private_scheme.hpp"
#include "veilcache/render.hpp"

namespace vc = veilcache;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDecodeFailure = 1;
constexpr int kExitPrivacyFailure = 2;
constexpr int kExitInputError = 3;
constexpr int kExitCapExceeded = 4;

struct RunConfig {
    unsigned K = 0;
    unsigned N = 0;
    size_t F = 0;           // 0 = derive from stripe length
    uint32_t p = 0;         // 0 = smallest prime >= max(KN, 2)
    std::string generator;  // path to generator JSON, empty = Reed-Solomon
    uint64_t seed = 0;
    bool seed_set = false;
    size_t stripe = 1;
    std::string mode = "private";  // simulate only: private | nonprivate
    std::string output = "out";
    size_t cap = 1'000'000;
    unsigned jobs = 0;
    std::string preset;  // example1 | example2
    std::string library;
};

struct Preset {
    unsigned K;
    unsigned N;
    uint32_t p;
    std::vector<std::vector<uint32_t>> generator_rows;
    std::vector<std::vector<uint32_t>> library_rows;  // for stripe = 1
};

const Preset kExample1{2, 2, 2, {{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}},
                       {{1, 0, 1}, {0, 1, 1}}};
const Preset kExample2{3,
                       2,
                       5,
                       {{1, 0, 0, 0, 1, 1}, {0, 1, 0, 0, 1, 2}, {0, 0, 1, 0, 1, 3},
                        {0, 0, 0, 1, 1, 4}},
                       {{1, 2, 3, 4}, {4, 0, 2, 1}}};

const Preset* find_preset(const std::string& name) {
    if (name == "example1") return &kExample1;
    if (name == "example2") return &kExample2;
    if (name.empty()) return nullptr;
    throw std::invalid_argument("unknown preset '" + name + "' (try example1, example2)");
}

// flags > config file > preset > derived defaults
void apply_config_file(CLI::App& cmd, RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    nlohmann::json doc;
    in >> doc;
    auto not_on_cli = [&](const std::string& flag) {
        auto* opt = cmd.get_option_no_throw("--" + flag);
        return opt == nullptr || opt->count() == 0;
    };
    if (doc.contains("K") && not_on_cli("K")) cfg.K = doc["K"].get<unsigned>();
    if (doc.contains("N") && not_on_cli("N")) cfg.N = doc["N"].get<unsigned>();
    if (doc.contains("F") && not_on_cli("F")) cfg.F = doc["F"].get<size_t>();
    if (doc.contains("p") && not_on_cli("p")) cfg.p = doc["p"].get<uint32_t>();
    if (doc.contains("generator") && not_on_cli("generator"))
        cfg.generator = doc["generator"].get<std::string>();
    if (doc.contains("seed") && not_on_cli("seed")) {
        cfg.seed = doc["seed"].get<uint64_t>();
        cfg.seed_set = true;
    }
    if (doc.contains("stripe") && not_on_cli("stripe")) cfg.stripe = doc["stripe"].get<size_t>();
    if (doc.contains("mode") && not_on_cli("mode")) cfg.mode = doc["mode"].get<std::string>();
    if (doc.contains("output") && not_on_cli("out")) cfg.output = doc["output"].get<std::string>();
    if (doc.contains("cap") && not_on_cli("cap")) cfg.cap = doc["cap"].get<size_t>();
    if (doc.contains("jobs") && not_on_cli("jobs")) cfg.jobs = doc["jobs"].get<unsigned>();
    if (doc.contains("preset") && not_on_cli("preset"))
        cfg.preset = doc["preset"].get<std::string>();
    if (doc.contains("library") && not_on_cli("library"))
        cfg.library = doc["library"].get<std::string>();
}

void resolve_seed(RunConfig& cfg) {
    if (cfg.seed_set) return;
    if (const char* env = std::getenv("VEILCACHE_SEED")) {
        cfg.seed = std::strtoull(env, nullptr, 10);
        cfg.seed_set = true;
    }
}

struct ResolvedSystem {
    vc::SystemParams params;
    vc::GeneratorMatrix generator;
    vc::FileLibrary library;
    bool preset_library = false;
};

ResolvedSystem resolve_system(RunConfig& cfg, bool force_unit_stripe,
                              bool zero_library = false) {
    const Preset* preset = find_preset(cfg.preset);
    if (preset) {
        if (cfg.K == 0) cfg.K = preset->K;
        if (cfg.N == 0) cfg.N = preset->N;
        if (cfg.p == 0) cfg.p = preset->p;
        if (cfg.K != preset->K || cfg.N != preset->N) {
            throw std::invalid_argument("preset " + cfg.preset + " is a (" +
                                        std::to_string(preset->K) + ", " +
                                        std::to_string(preset->N) + ") system");
        }
    }
    if (cfg.K == 0 || cfg.N == 0) {
        throw std::invalid_argument("need --K and --N (or a preset)");
    }
    vc::Field field = cfg.p ? vc::Field(cfg.p) : vc::field_for_params(cfg.K, cfg.N);

    if (force_unit_stripe) cfg.stripe = 1;
    unsigned sp = cfg.K * (cfg.N - 1) + 1;
    size_t file_len = cfg.F ? cfg.F : size_t(sp) * cfg.stripe;
    if (force_unit_stripe) file_len = sp;
    vc::SystemParams params(cfg.K, cfg.N, file_len, field);

    std::optional<vc::GeneratorMatrix> gen;
    if (!cfg.generator.empty()) {
        std::ifstream in(cfg.generator);
        if (!in) throw std::invalid_argument("cannot open generator file " + cfg.generator);
        nlohmann::json doc;
        in >> doc;
        gen = vc::GeneratorMatrix::from_json(doc);
    } else if (preset) {
        gen = vc::GeneratorMatrix(vc::Matrix::from_rows(preset->generator_rows, field));
    } else {
        gen = vc::GeneratorMatrix::reed_solomon(params.virtual_user_count(),
                                                params.subpacket_count(), field);
    }
    if (gen->field() != field) {
        throw std::invalid_argument("generator field does not match the system field");
    }

    resolve_seed(cfg);
    if (zero_library) {
        return {params, *gen, vc::zero_library(params), false};
    }
    if (!cfg.library.empty()) {
        auto [lp, lib] = vc::load_library(cfg.library);
        if (lp.user_count != params.user_count || lp.file_count != params.file_count ||
            lp.file_length != params.file_length || lp.field != params.field) {
            throw std::invalid_argument("library file does not match the configured system");
        }
        return {params, *gen, std::move(lib), false};
    }
    if (preset && params.file_length == preset->library_rows.front().size()) {
        std::vector<std::vector<vc::FieldElement>> files;
        for (const auto& row : preset->library_rows) {
            std::vector<vc::FieldElement> f;
            for (uint32_t v : row) f.push_back(field.element(v));
            files.push_back(std::move(f));
        }
        return {params, *gen, vc::FileLibrary(std::move(files)), true};
    }
    return {params, *gen, vc::random_library(params, cfg.seed), false};
}

std::vector<unsigned> parse_demand(const std::string& text, unsigned file_count) {
    std::vector<unsigned> out;
    std::string token;
    auto flush = [&] {
        if (token.empty()) throw std::invalid_argument("empty demand entry");
        if (token.size() == 1 && token[0] >= 'A' && token[0] <= 'Z') {
            out.push_back(unsigned(token[0] - 'A') + 1);
        } else if (token.size() == 1 && token[0] >= 'a' && token[0] <= 'z') {
            out.push_back(unsigned(token[0] - 'a') + 1);
        } else {
            out.push_back(static_cast<unsigned>(std::stoul(token)));
        }
        token.clear();
    };
    for (char c : text) {
        if (c == ',') {
            flush();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            token += c;
        }
    }
    flush();
    vc::validate_demand(out, file_count);
    return out;
}

std::vector<unsigned> parse_uints(const std::string& text) {
    std::vector<unsigned> out;
    std::string token;
    for (char c : text) {
        if (c == ',') {
            out.push_back(static_cast<unsigned>(std::stoul(token)));
            token.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            token += c;
        }
    }
    if (!token.empty()) out.push_back(static_cast<unsigned>(std::stoul(token)));
    return out;
}

std::vector<vc::Rational> parse_grid(const std::string& text) {
    std::vector<vc::Rational> out;
    std::string token;
    for (char c : text) {
        if (c == ',') {
            out.push_back(vc::Rational::parse(token));
            token.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            token += c;
        }
    }
    if (!token.empty()) out.push_back(vc::Rational::parse(token));
    return out;
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

void write_json(const fs::path& path, const nlohmann::json& doc) {
    write_file(path, doc.dump(2) + "\n");
}

nlohmann::json np_placement_json(const vc::NonPrivatePlacement& pl) {
    nlohmann::json caches = nlohmann::json::array();
    for (const auto& z : pl.caches) {
        nlohmann::json symbols = nlohmann::json::array();
        for (const auto& s : z.symbols) symbols.push_back(s.value());
        caches.push_back(nlohmann::json{{"user", z.user}, {"symbols", std::move(symbols)}});
    }
    return nlohmann::json{{"p", pl.params.field.modulus()},
                          {"K", pl.params.user_count},
                          {"N", pl.params.file_count},
                          {"F", pl.params.file_length},
                          {"generator", pl.generator.to_json()},
                          {"caches", std::move(caches)}};
}

int run_simulate(RunConfig cfg, const std::string& demand_text, const std::string& keys_text,
                 bool nonprivate) {
    ResolvedSystem sys = resolve_system(cfg, /*force_unit_stripe=*/false);
    const auto& params = sys.params;
    fs::path outdir = cfg.output;
    fs::create_directories(outdir);
    write_json(outdir / "library.json", vc::library_to_json(params, sys.library));

    if (nonprivate || cfg.mode == "nonprivate") {
        vc::DemandVector demand = parse_demand(demand_text, params.file_count);
        if (demand.size() != params.virtual_user_count()) {
            throw std::invalid_argument("non-private demand must name all " +
                                        std::to_string(params.virtual_user_count()) + " users");
        }
        vc::NonPrivatePlacement pl = vc::np_place(params, sys.library, sys.generator);
        vc::TransmissionRecord record = vc::np_deliver(pl, demand);
        write_json(outdir / "placement.json", np_placement_json(pl));
        write_json(outdir / "trace.json", record.to_json());

        bool all_ok = true;
        nlohmann::json decodes = nlohmann::json::array();
        for (unsigned k = 1; k <= params.virtual_user_count(); ++k) {
            auto file = vc::np_decode(params, sys.generator, k, pl.caches[k - 1],
                                      demand[k - 1], record);
            bool ok = file == sys.library.file(demand[k - 1]);
            all_ok = all_ok && ok;
            decodes.push_back(nlohmann::json{{"user", k}, {"demanded", demand[k - 1]},
                                             {"ok", ok}});
        }
        write_json(outdir / "decode.json",
                   nlohmann::json{{"mode", "nonprivate"}, {"all_ok", all_ok},
                                  {"users", std::move(decodes)}});
        std::cout << "mode: non-private (" << params.virtual_user_count() << " users)\n"
                  << "demand: " << vc::render_demand(demand, params.file_count) << "\n"
                  << "broadcast: " << vc::render_record(sys.generator, record, params.file_count)
                  << "\nrate: " << record.rate() << "\n"
                  << (all_ok ? "all users decoded their files\n"
                             : "DECODE FAILURE: see decode.json\n");
        return all_ok ? kExitOk : kExitDecodeFailure;
    }

    vc::DemandVector demand = parse_demand(demand_text, params.file_count);
    if (demand.size() != params.user_count) {
        throw std::invalid_argument("demand must name all " + std::to_string(params.user_count) +
                                    " users");
    }
    bool forced = !keys_text.empty();
    std::vector<vc::PrivacyKey> keys =
        forced ? vc::keys_from_values(parse_uints(keys_text), params.file_count)
               : vc::draw_keys(params.user_count, params.file_count, cfg.seed);
    vc::PrivatePlacement pl = vc::pv_place_with_keys(params, sys.library, sys.generator, keys);
    vc::TransmissionRecord record = vc::pv_deliver(pl, demand);

    nlohmann::json placement_doc = pl.to_json(/*include_secret=*/true);
    placement_doc["forced_keys"] = forced;
    write_json(outdir / "placement.json", placement_doc);
    write_json(outdir / "trace.json", record.to_json());

    bool all_ok = true;
    nlohmann::json decodes = nlohmann::json::array();
    for (unsigned k = 1; k <= params.user_count; ++k) {
        auto file = vc::pv_decode(params, sys.generator, k, pl.real_caches[k - 1],
                                  pl.keys[k - 1].value, demand[k - 1], record);
        bool ok = file == sys.library.file(demand[k - 1]);
        all_ok = all_ok && ok;
        decodes.push_back(
            nlohmann::json{{"user", k}, {"demanded", demand[k - 1]}, {"ok", ok}});
    }
    write_json(outdir / "decode.json",
               nlohmann::json{{"mode", "private"}, {"forced_keys", forced}, {"all_ok", all_ok},
                              {"users", std::move(decodes)}});

    std::cout << "mode: demand-private (" << params.user_count << " users, "
              << params.file_count << " files)"
              << (forced ? " — keys forced on the command line, NOT private\n" : "\n");
    for (unsigned k = 1; k <= params.user_count; ++k) {
        std::cout << "cache " << k << ": "
                  << vc::render_cache(sys.generator, pl.virtual_index(k), params.file_count)
                  << "\n";
    }
    std::cout << "demand: " << vc::render_demand(demand, params.file_count) << "\n"
              << "broadcast: " << vc::render_record(sys.generator, record, params.file_count)
              << "\nrate: " << record.rate() << "\n"
              << (all_ok ? "all users decoded their files\n"
                         : "DECODE FAILURE: see decode.json\n");
    return all_ok ? kExitOk : kExitDecodeFailure;
}

int run_audit(RunConfig cfg, const std::string& break_privacy, bool zero_library) {
    ResolvedSystem sys = resolve_system(cfg, /*force_unit_stripe=*/true, zero_library);
    const auto& params = sys.params;
    fs::path outdir = cfg.output;
    fs::create_directories(outdir);

    vc::AuditOptions opt;
    opt.case_cap = cfg.cap;
    opt.jobs = cfg.jobs;

    vc::KeyModel key_model = vc::KeyModel::uniform();
    if (break_privacy == "identity-keys") {
        key_model = vc::KeyModel::fixed(std::vector<unsigned>(params.user_count, 1));
    } else if (!break_privacy.empty()) {
        throw std::invalid_argument("unknown --break-privacy mode '" + break_privacy + "'");
    }

    vc::DecodabilityReport decodability =
        vc::verify_decodability(params, sys.library, sys.generator, opt);
    vc::PrivacyReport privacy =
        vc::verify_privacy(params, sys.library, sys.generator, key_model, opt);

    write_json(outdir / "decodability_report.json", decodability.to_json());
    write_json(outdir / "privacy_report.json", privacy.to_json());

    std::cout << "decodability: " << (decodability.pass() ? "pass" : "FAIL") << " ("
              << decodability.cases_run << "/" << decodability.cases_total << " cases)\n";
    std::cout << "privacy:      " << (privacy.pass() ? "pass" : "FAIL") << " ("
              << privacy.cases_run << "/" << privacy.cases_total << " cases)\n";
    if (privacy.witness) {
        std::cout << "privacy witness: user " << privacy.witness->user << ", event "
                  << privacy.witness->event << " has mass " << privacy.witness->prob_a
                  << " vs " << privacy.witness->prob_b << "\n";
    }

    if (params.user_count == 2 && params.file_count == 2) {
        vc::Table1 table = vc::table1_reconstruct(params, sys.library, sys.generator);
        write_json(outdir / "table1.json", table.to_json());
        write_file(outdir / "table1.txt", table.render_text());
        std::cout << "\n" << table.render_text();
    }

    if (!decodability.complete || !privacy.complete) return kExitCapExceeded;
    if (!decodability.pass()) return kExitDecodeFailure;
    if (!privacy.pass()) return kExitPrivacyFailure;
    return kExitOk;
}

int run_rates(RunConfig cfg, const std::string& grid_text, bool at_mstar) {
    if (cfg.K == 0 || cfg.N == 0) {
        const Preset* preset = find_preset(cfg.preset);
        if (preset) {
            cfg.K = preset->K;
            cfg.N = preset->N;
        }
    }
    if (cfg.K == 0 || cfg.N == 0) throw std::invalid_argument("need --K and --N");
    fs::path outdir = cfg.output;
    fs::create_directories(outdir);

    vc::Rational ms = vc::mstar(cfg.K, cfg.N);
    std::vector<vc::Rational> grid;
    if (!grid_text.empty()) {
        grid = parse_grid(grid_text);
    } else {
        for (int i = 0; i <= 20; ++i) grid.push_back(ms * vc::Rational(i, 20));
    }

    auto rows = vc::tradeoff_table(cfg.K, cfg.N, grid);
    write_file(outdir / "rates.csv", vc::rate_table_csv(rows));
    write_json(outdir / "rates.json", vc::rate_table_json(rows));

    std::cout << "rate-memory table, K=" << cfg.K << " N=" << cfg.N << " (M* = " << ms << ")\n";
    for (const auto& row : rows) {
        std::cout << "M = " << row.memory.to_string();
        for (const auto& value : row.values) {
            std::cout << "  " << value.scheme << "=" << value.rate.to_string();
        }
        std::cout << (row.optimal_region ? "  [optimal: achievable = bound]" : "") << "\n";
    }

    if (at_mstar) {
        vc::MstarComparison cmp = vc::comparison_rates_at_mstar(cfg.K, cfg.N);
        write_json(outdir / "comparison.json", vc::comparison_json(cmp));
        std::cout << "\nscheme comparison at M* = " << cmp.memory << ":\n";
        for (const auto& row : cmp.rows) {
            std::cout << "  " << row.scheme << ": R = " << row.rate << " ("
                      << row.rate.to_double() << ")\n";
        }
        if (!cmp.footnote.empty()) std::cout << "  " << cmp.footnote << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MDS-coded demand-private coded caching toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    std::string demand_text, keys_text, break_privacy, grid_text;
    bool nonprivate = false, zero_library = false, at_mstar = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file; flags override it");
        cmd->add_option("--K", cfg.K, "number of real users");
        cmd->add_option("--N", cfg.N, "number of files");
        cmd->add_option("--F", cfg.F, "file length in field symbols");
        cmd->add_option("--p", cfg.p, "prime field modulus override");
        cmd->add_option("--generator", cfg.generator, "generator matrix JSON file");
        cmd->add_option("--seed", cfg.seed, "PRNG seed (or env VEILCACHE_SEED)")
            ->each([&](const std::string&) { cfg.seed_set = true; });
        cmd->add_option("--stripe", cfg.stripe, "symbols per subfile (L)");
        cmd->add_option("--out", cfg.output, "output directory");
        cmd->add_option("--cap", cfg.cap, "enumeration case cap");
        cmd->add_option("--jobs", cfg.jobs, "worker threads (0 = hardware)");
        cmd->add_option("--preset", cfg.preset, "example1 or example2");
        cmd->add_option("--library", cfg.library, "library JSON file");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "place, deliver and decode one demand");
    add_common(simulate);
    simulate->add_option("--demand", demand_text, "per-user demand, e.g. A,B or 1,2")
        ->required();
    simulate->add_option("--keys", keys_text,
                         "force privacy keys (labels the run non-private)");
    simulate->add_flag("--nonprivate", nonprivate, "drive the underlying KN-user scheme");
    CLI::App* audit =
        app.add_subcommand("audit", "exhaustive decodability and privacy verification");
    add_common(audit);
    audit->add_option("--break-privacy", break_privacy,
                      "negative control; 'identity-keys' fixes all S_k = 1");
    audit->add_flag("--zero-library", zero_library, "use the all-zero library");
    CLI::App* rates = app.add_subcommand("rates", "exact rate-memory tables");
    add_common(rates);
    rates->add_option("--grid", grid_text, "comma-separated rational memory grid");
    rates->add_flag("--at-mstar", at_mstar, "emit the four-scheme comparison at M*");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        CLI::App* cmd = app.get_subcommands().front();
        if (!config_path.empty()) apply_config_file(*cmd, cfg, config_path);
        if (simulate->parsed()) return run_simulate(cfg, demand_text, keys_text, nonprivate);
        if (audit->parsed()) return run_audit(cfg, break_privacy, zero_library);
        if (rates->parsed()) return run_rates(cfg, grid_text, at_mstar);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
