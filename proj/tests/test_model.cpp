#include <doctest.h>

#include <algorithm>

#include "veilcache/model.hpp"

using namespace veilcache;

TEST_CASE("demand profiles sort counts descending and zero-pad") {
    CHECK(demand_profile({1, 1, 2, 2}, 2) == std::vector<unsigned>{2, 2});
    CHECK(demand_profile({1, 1, 1, 1}, 2) == std::vector<unsigned>{4, 0});
    CHECK(demand_profile({2, 1}, 3) == std::vector<unsigned>{1, 1, 0});
    CHECK_THROWS_AS(demand_profile({0, 1}, 2), std::invalid_argument);
    CHECK_THROWS_AS(demand_profile({3}, 2), std::invalid_argument);
}

TEST_CASE("profile uniformity") {
    CHECK(is_uniform({2, 2}));
    CHECK(!is_uniform({3, 1}));
    CHECK(is_uniform({4, 4, 4}));
    CHECK(is_uniform({7}));
    CHECK(!is_uniform({1, 1, 0}));
}

TEST_CASE("the profile is invariant under user permutation") {
    DemandVector d = {1, 3, 3, 2, 1, 3};
    auto profile = demand_profile(d, 3);
    std::sort(d.begin(), d.end());
    do {
        CHECK(demand_profile(d, 3) == profile);
    } while (std::next_permutation(d.begin(), d.end()));
}

TEST_CASE("system params enforce subpacketization") {
    Field gf5(5);
    SystemParams ok(2, 2, 6, gf5);
    CHECK(ok.subpacket_count() == 3);
    CHECK(ok.virtual_user_count() == 4);
    CHECK(ok.subfile_length() == 2);
    CHECK_THROWS_AS(SystemParams(2, 2, 4, gf5), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams(2, 2, 0, gf5), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams(0, 2, 3, gf5), std::invalid_argument);
}

TEST_CASE("libraries validate lengths and indices") {
    Field gf5(5);
    std::vector<FieldElement> a = {gf5.element(1), gf5.element(2)};
    std::vector<FieldElement> b = {gf5.element(3)};
    CHECK_THROWS_AS(FileLibrary({a, b}), std::invalid_argument);

    FileLibrary lib({a, a});
    CHECK(lib.file_count() == 2);
    CHECK(lib.file_length() == 2);
    CHECK_THROWS_AS(lib.file(0), std::out_of_range);
    CHECK_THROWS_AS(lib.file(3), std::out_of_range);
}

TEST_CASE("random libraries are seed-deterministic") {
    SystemParams params(2, 2, 9, field_for_params(2, 2));
    FileLibrary one = random_library(params, 42);
    FileLibrary two = random_library(params, 42);
    FileLibrary other = random_library(params, 43);
    CHECK(one.file(1) == two.file(1));
    CHECK(one.file(2) == two.file(2));
    CHECK((one.file(1) != other.file(1) || one.file(2) != other.file(2)));
}

TEST_CASE("library JSON round trip and validation") {
    SystemParams params(2, 2, 3, Field(2));
    FileLibrary lib = random_library(params, 7);
    nlohmann::json doc = library_to_json(params, lib);
    CHECK(doc["p"] == 2);
    CHECK(doc["K"] == 2);
    CHECK(doc["N"] == 2);
    CHECK(doc["F"] == 3);

    auto [params2, lib2] = library_from_json(doc);
    CHECK(params2.field == params.field);
    CHECK(lib2.file(1) == lib.file(1));
    CHECK(lib2.file(2) == lib.file(2));

    nlohmann::json bad = doc;
    bad["files"][0][1] = 9;  // symbol out of range for GF(2)
    CHECK_THROWS_AS(library_from_json(bad), std::invalid_argument);

    nlohmann::json short_file = doc;
    short_file["files"][1] = {1};
    CHECK_THROWS_AS(library_from_json(short_file), std::invalid_argument);
}

TEST_CASE("transmission records serialize deterministically") {
    Field gf2(2);
    TransmissionRecord rec;
    rec.file_length = 3;
    rec.entries.push_back({1, 2, {gf2.element(1)}});
    rec.entries.push_back({2, 1, {gf2.element(0)}});
    rec.entries.push_back({2, 2, {gf2.element(1)}});
    CHECK(rec.canonically_ordered());
    CHECK(rec.total_symbols() == 3);
    CHECK(rec.rate() == Rational(1));

    std::string once = rec.to_json().dump(2);
    std::string twice = rec.to_json().dump(2);
    CHECK(once == twice);

    TransmissionRecord back = TransmissionRecord::from_json(rec.to_json(), gf2);
    CHECK(back.entries.size() == 3);
    CHECK(back.file_length == 3);
    CHECK(back.to_json() == rec.to_json());

    TransmissionRecord unordered;
    unordered.file_length = 3;
    unordered.entries.push_back({2, 1, {gf2.element(0)}});
    unordered.entries.push_back({1, 2, {gf2.element(1)}});
    CHECK(!unordered.canonically_ordered());
}

TEST_CASE("empty record has rate zero") {
    TransmissionRecord rec;
    CHECK(rec.rate() == Rational(0));
}

TEST_CASE("library files round trip through disk") {
    SystemParams params(3, 2, 8, Field(7));
    FileLibrary lib = random_library(params, 13);
    auto path = std::filesystem::temp_directory_path() / "veilcache_lib_roundtrip.json";
    save_library(path, params, lib);
    auto [loaded_params, loaded] = load_library(path);
    CHECK(loaded_params.user_count == 3);
    CHECK(loaded_params.file_count == 2);
    CHECK(loaded_params.file_length == 8);
    CHECK(loaded_params.field == params.field);
    for (unsigned n = 1; n <= 2; ++n) CHECK(loaded.file(n) == lib.file(n));
    std::filesystem::remove(path);

    CHECK_THROWS_AS(load_library("/nonexistent/veilcache.json"), std::runtime_error);
}
