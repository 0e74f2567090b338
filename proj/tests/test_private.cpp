#include <doctest.h>

#include "fixtures.hpp"
#include "veilcache/private_scheme.hpp"
#include "veilcache/render.hpp"

using namespace veilcache;
using namespace fixtures;

namespace {

std::vector<unsigned> unrank(size_t index, unsigned base, unsigned len) {
    std::vector<unsigned> out(len, 1);
    for (unsigned pos = len; pos-- > 0;) {
        out[pos] = 1 + static_cast<unsigned>(index % base);
        index /= base;
    }
    return out;
}

size_t pow_size(size_t base, unsigned exp) {
    size_t out = 1;
    for (unsigned i = 0; i < exp; ++i) out *= base;
    return out;
}

}  // namespace

TEST_CASE("virtual demand pins the cyclic-shift convention") {
    // N=2, d=(A,B), S=(1,1) -> [A,B,B,A]
    auto keys = keys_from_values({1, 1}, 2);
    CHECK(virtual_demand({1, 2}, keys, 2) == DemandVector{1, 2, 2, 1});

    // zero shift when S_k = d_k
    auto keys3 = keys_from_values({2}, 3);
    CHECK(virtual_demand({2}, keys3, 3) == DemandVector{1, 2, 3});

    // N=3, d_k=2, S_k=1: shift (1-2) mod 3 = 2, q = (2,3,1)
    auto keys_s1 = keys_from_values({1}, 3);
    CHECK(virtual_demand({2}, keys_s1, 3) == DemandVector{2, 3, 1});
}

TEST_CASE("virtual demands are uniform and anchored, exhaustively") {
    for (auto [K, N] : {std::pair{2u, 2u}, {3u, 2u}, {2u, 3u}, {4u, 2u}, {2u, 4u}}) {
        size_t space = pow_size(N, K);
        for (size_t di = 0; di < space; ++di) {
            DemandVector d = unrank(di, N, K);
            for (size_t si = 0; si < space; ++si) {
                std::vector<unsigned> s = unrank(si, N, K);
                auto keys = keys_from_values(s, N);
                DemandVector vd = virtual_demand(d, keys, N);
                REQUIRE(vd.size() == size_t(K) * N);
                CHECK(is_uniform(demand_profile(vd, N)));
                for (unsigned k = 1; k <= K; ++k) {
                    // q_k[S_k] = d_k
                    CHECK(vd[(k - 1) * N + s[k - 1] - 1] == d[k - 1]);
                }
            }
        }
    }
}

TEST_CASE("key draw is seed-deterministic and in range") {
    auto a = draw_keys(4, 3, 99);
    auto b = draw_keys(4, 3, 99);
    REQUIRE(a.size() == 4);
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].user == i + 1);
        CHECK(a[i].value == b[i].value);
        CHECK(a[i].value >= 1);
        CHECK(a[i].value <= 3);
    }
}

TEST_CASE("placement hands each user the keyed virtual cache") {
    auto params = example1_params();
    auto lib = example1_library();
    auto g = example1_generator();

    PrivatePlacement pl = pv_place_with_keys(params, lib, g, keys_from_values({1, 1}, 2));
    // user 1 holds Z_1, user 2 holds Z_3
    CHECK(pl.real_caches[0].symbols == pl.base.caches[0].symbols);
    CHECK(pl.real_caches[1].symbols == pl.base.caches[2].symbols);
    CHECK(pl.virtual_index(1) == 1);
    CHECK(pl.virtual_index(2) == 3);

    PrivatePlacement pl2 = pv_place_with_keys(params, lib, g, keys_from_values({2, 2}, 2));
    CHECK(pl2.real_caches[0].symbols == pl2.base.caches[1].symbols);  // Z_2
    CHECK(pl2.real_caches[1].symbols == pl2.base.caches[3].symbols);  // Z_4

    PrivatePlacement seeded_a = pv_place(params, lib, g, 31);
    PrivatePlacement seeded_b = pv_place(params, lib, g, 31);
    for (unsigned k = 0; k < 2; ++k) {
        CHECK(seeded_a.keys[k].value == seeded_b.keys[k].value);
        CHECK(seeded_a.real_caches[k].symbols == seeded_b.real_caches[k].symbols);
    }

    CHECK_THROWS_AS(pv_place_with_keys(params, lib, g, keys_from_values({1}, 2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(keys_from_values({1, 3}, 2), std::invalid_argument);
}

TEST_CASE("delivery broadcasts the lifted virtual demand") {
    auto params = example1_params();
    auto lib = example1_library();
    auto g = example1_generator();
    PrivatePlacement pl = pv_place_with_keys(params, lib, g, keys_from_values({1, 1}, 2));

    TransmissionRecord ab = pv_deliver(pl, {1, 2});
    CHECK(render_record(g, ab, 2) == "B_1, A_2, A_3, B_1⊕B_2⊕B_3");
    TransmissionRecord ba = pv_deliver(pl, {2, 1});
    CHECK(render_record(g, ba, 2) == "A_1, B_2, B_3, A_1⊕A_2⊕A_3");

    // a different cache assignment reaches the same broadcast for a
    // different demand; this coincidence is what hides the demands
    PrivatePlacement pl14 = pv_place_with_keys(params, lib, g, keys_from_values({1, 2}, 2));
    TransmissionRecord aa = pv_deliver(pl14, {1, 1});
    CHECK(aa.to_json() == ab.to_json());
}

TEST_CASE("each real user decodes its demanded file") {
    auto params = example1_params();
    auto lib = example1_library();
    auto g = example1_generator();
    PrivatePlacement pl = pv_place_with_keys(params, lib, g, keys_from_values({1, 1}, 2));
    TransmissionRecord rec = pv_deliver(pl, {1, 2});
    CHECK(pv_decode(params, g, 1, pl.real_caches[0], 1, 1, rec) == lib.file(1));
    CHECK(pv_decode(params, g, 2, pl.real_caches[1], 1, 2, rec) == lib.file(2));

    auto zero = zero_library(params);
    PrivatePlacement plz = pv_place_with_keys(params, zero, g, keys_from_values({2, 1}, 2));
    TransmissionRecord recz = pv_deliver(plz, {2, 2});
    CHECK(pv_decode(params, g, 1, plz.real_caches[0], 2, 2, recz) == zero.file(2));
}

TEST_CASE("correctness and rate over every (d, S) pair") {
    struct Case {
        SystemParams params;
        GeneratorMatrix g;
        uint64_t seed;
    };
    std::vector<Case> cases = {{example1_params(), example1_generator(), 51},
                               {example2_params(), example2_generator(), 52},
                               {k2n3_params(), k2n3_generator(), 53}};
    for (const auto& c : cases) {
        unsigned K = c.params.user_count, N = c.params.file_count;
        FileLibrary lib = random_library(c.params, c.seed);
        Rational expected_rate(1LL * K * N * (N - 1), c.params.subpacket_count());
        size_t space = pow_size(N, K);
        for (size_t si = 0; si < space; ++si) {
            auto keys = keys_from_values(unrank(si, N, K), N);
            PrivatePlacement pl = pv_place_with_keys(c.params, lib, c.g, keys);
            for (size_t di = 0; di < space; ++di) {
                DemandVector d = unrank(di, N, K);
                TransmissionRecord rec = pv_deliver(pl, d);
                CHECK(rec.rate() == expected_rate);
                for (unsigned k = 1; k <= K; ++k) {
                    CHECK(pv_decode(c.params, c.g, k, pl.real_caches[k - 1],
                                    pl.keys[k - 1].value, d[k - 1], rec) == lib.file(d[k - 1]));
                }
            }
        }
    }
}

TEST_CASE("placement record serialization marks keys secret") {
    auto params = example1_params();
    PrivatePlacement pl = pv_place_with_keys(params, example1_library(), example1_generator(),
                                             keys_from_values({2, 1}, 2));
    nlohmann::json with = pl.to_json(true);
    CHECK(with["keys"]["secret"] == true);
    CHECK(with["keys"]["S"] == nlohmann::json::array({2, 1}));
    nlohmann::json without = pl.to_json(false);
    CHECK(!without.contains("keys"));
    CHECK(without["real_caches"].size() == 2);
}

TEST_CASE("hybrid delivery splits files and meets N(1-M) exactly") {
    unsigned K = 2, N = 2;
    Field f = Field(2);
    unsigned sp = K * (N - 1) + 1;  // 3
    SystemParams params(K, N, 2 * sp, f);
    FileLibrary lib = random_library(params, 77);
    auto g = example1_generator();
    auto keys = keys_from_values({1, 2}, N);

    SUBCASE("M = 0 broadcasts the whole library") {
        TransmissionRecord rec = hybrid_deliver(params, lib, g, keys, Rational(0), {1, 2});
        CHECK(rec.rate() == Rational(N));
        REQUIRE(rec.entries.size() == N);
        for (unsigned n = 1; n <= N; ++n) {
            CHECK(rec.entries[n - 1].virtual_user == 0);
            CHECK(rec.entries[n - 1].file_index == n);
            CHECK(rec.entries[n - 1].symbols == lib.file(n));
        }
    }

    SUBCASE("M = M* matches the pure coded scheme") {
        Rational mstar(1, sp);
        TransmissionRecord rec = hybrid_deliver(params, lib, g, keys, mstar, {1, 2});
        PrivatePlacement pl = pv_place_with_keys(params, lib, g, keys);
        CHECK(rec.to_json() == pv_deliver(pl, {1, 2}).to_json());
        CHECK(rec.rate() == Rational(N) * (Rational(1) - mstar));
    }

    SUBCASE("intermediate M = 1/6 gives rate 5/3") {
        TransmissionRecord rec = hybrid_deliver(params, lib, g, keys, Rational(1, 6), {2, 1});
        CHECK(rec.rate() == Rational(5, 3));
        CHECK(rec.total_symbols() == 10);  // 2 suffixes of 3 + 4 coded subfiles of 1
        CHECK(rec.canonically_ordered());
    }

    SUBCASE("indivisible splits are rejected") {
        SystemParams small(K, N, sp, f);
        FileLibrary small_lib = random_library(small, 78);
        CHECK_THROWS_AS(hybrid_deliver(small, small_lib, g, keys, Rational(1, 6), {1, 2}),
                        std::invalid_argument);
        CHECK_THROWS_AS(hybrid_deliver(params, lib, g, keys, Rational(1, 2), {1, 2}),
                        std::invalid_argument);  // above M*
    }
}

TEST_CASE("hybrid rate identity across admissible memories") {
    for (auto [K, N] : {std::pair{2u, 2u}, {3u, 2u}, {2u, 3u}}) {
        Field f = field_for_params(K, N);
        unsigned sp = K * (N - 1) + 1;
        SystemParams params(K, N, size_t(2) * sp, f);
        FileLibrary lib = random_library(params, 100 + K * 10 + N);
        GeneratorMatrix g = GeneratorMatrix::reed_solomon(params.virtual_user_count(), sp, f);
        DemandVector d(K, 1);
        for (Rational m : {Rational(0), Rational(1, 2 * sp), Rational(1, sp)}) {
            TransmissionRecord rec = hybrid_deliver(params, lib, g, uint64_t(9), m, d);
            CHECK(rec.rate() == Rational(N) * (Rational(1) - m));
        }
    }
}
