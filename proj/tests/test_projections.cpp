#include "oracles.hpp"
#include "tvalue/error.hpp"
#include "tvalue/netio.hpp"
#include "tvalue/projections.hpp"

#include <doctest.h>

using namespace tvalue;

TEST_CASE("keys") {
    const ProjectionKey u = make_key({1, 3, 4});
    CHECK(u == 0b1101);
    CHECK(coordinates_of(u) == std::vector<std::size_t>{1, 3, 4});
    CHECK(cardinality(u) == 3);
    CHECK(format_key(u) == "1,3,4");
    CHECK(lexicographic_less(make_key({1, 2}), make_key({1, 3})));
    CHECK(lexicographic_less(make_key({1}), make_key({1, 2})));
    CHECK(lexicographic_less(make_key({1, 4}), make_key({2})));
    CHECK_FALSE(lexicographic_less(make_key({2}), make_key({2})));
    CHECK_THROWS_AS(make_key({0}), ContractViolation);
    const auto levels = keys_by_cardinality(4, 2);
    CHECK(levels[1].size() == 4);
    CHECK(levels[2].size() == 6);
}

TEST_CASE("duplicate pair inside a net") {
    const NetDef net = NetDef::make({BitMatrix::identity(4), BitMatrix::identity(4), pascal_matrix(4)});
    const RhoTable table = rho_all_projections(net, 3);
    for (std::size_t j = 1; j <= 3; ++j) CHECK(table.at(make_key({j})) == 4);
    CHECK(table.at(make_key({1, 2})) == 1);
    CHECK(table.at(make_key({1, 2, 3})) <= 1);
    CHECK(table.t(make_key({1, 2})) == 3);
    CHECK(table.t(make_key({3})) == 0);
}

TEST_CASE("d_max = 1 enumerates nothing") {
    OpCounter counter;
    const RhoTable table = rho_all_projections(sample_regular_net(5, 8, 3), 1, &counter);
    CHECK(table.rho.size() == 5);
    for (const auto& [key, r] : table.rho) CHECK(r == 8);
    CHECK(counter.vec_adds == 0);
}

TEST_CASE("table entries match standalone and oracle values") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t s = 2 + rng() % 4;
        const std::size_t k = 2 + rng() % 6;
        const NetDef net = sample_regular_net(s, k, rng());
        const RhoTable table = rho_all_projections(net, s);
        const RhoTable by_s = rho_all_projections_schmid(net, s);
        const RhoTable by_ps = rho_all_projections_ps(net, s);
        CHECK(table.rho.size() == (std::size_t{1} << s) - 1);
        for (ProjectionKey u : table.sorted_keys()) {
            const auto gens = net.select(coordinates_of(u));
            const std::size_t expect = oracle::rho(gens);
            CAPTURE(format_key(u));
            CHECK(table.at(u) == expect);
            CHECK(by_s.at(u) == expect);
            CHECK(by_ps.at(u) == expect);
            CHECK(rho(gens, Method::mgl_increasing) == expect);
            // subset recurrence with the brute-force partial parameter
            std::size_t rhs = oracle::rho_tilde(gens);
            if (cardinality(u) == 1) rhs = k;
            for (ProjectionKey bits = u; bits && cardinality(u) > 1; bits &= bits - 1)
                rhs = std::min(rhs, table.at(u & ~(bits & (~bits + 1))));
            CHECK(table.at(u) == rhs);
            // t monotone under inclusion
            for (ProjectionKey v : table.sorted_keys())
                if ((v & u) == v) CHECK(table.t(v) <= table.t(u));
        }
    }
}

TEST_CASE("threads do not change results or counts") {
    const NetDef net = sample_regular_net(6, 10, 77);
    OpCounter one, four;
    const RhoTable a = rho_all_projections(net, 4, &one, 1);
    const RhoTable b = rho_all_projections(net, 4, &four, 4);
    CHECK(a.rho == b.rho);
    CHECK(one.vec_adds == four.vec_adds);
}

TEST_CASE("t_all_projections and range checks") {
    const NetDef net = identity_net(3, 5);
    const auto t = t_all_projections(net, 2);
    CHECK(t.size() == 6);
    CHECK(t.at(make_key({1, 3})) == 4);
    CHECK(t.at(make_key({2})) == 0);
    CHECK_THROWS_AS(rho_all_projections(net, 4), ContractViolation);
    CHECK_THROWS_AS(rho_all_projections(net, 0), ContractViolation);
    CHECK_THROWS_AS(rho_all_projections(net, 2).at(make_key({1, 2, 3})), ContractViolation);
}
