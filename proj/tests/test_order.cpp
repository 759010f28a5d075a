#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "obstructia/error.hpp"
#include "obstructia/order.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace obstructia;

namespace {

Poset chain(std::size_t n) {
    std::vector<std::string> names;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back("c" + std::to_string(i));
        if (i) pairs.emplace_back(i - 1, i);
    }
    return Poset::from_pairs(names, pairs);
}

/// Random poset on n elements: random DAG on a random linear extension.
Poset random_poset(testing_support::Rng& rng, std::size_t n) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::bernoulli_distribution edge(0.3);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (edge(rng)) pairs.emplace_back(perm[i], perm[j]);
        }
    }
    return Poset::from_pairs(names, pairs);
}

}  // namespace

TEST_CASE("from_pairs closes transitively and rejects cycles") {
    Poset c = chain(4);
    CHECK(c.leq(0, 3));
    CHECK_FALSE(c.leq(3, 0));
    std::vector<std::pair<std::size_t, std::size_t>> cyc{{0, 1}, {1, 0}};
    try {
        Poset::from_pairs({"a", "b"}, cyc);
        FAIL("expected NotAPartialOrder");
    } catch (const Error& e) {
        CHECK(e.kind() == "NotAPartialOrder");
    }
}

TEST_CASE("hasse diagram of a chain and of a Boolean lattice") {
    CHECK(hasse(chain(5)).size() == 4);
    // Subsets of {0,1,2}: 12 covers.
    std::vector<std::string> names;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t s = 0; s < 8; ++s) names.push_back(std::to_string(s));
    for (std::size_t a = 0; a < 8; ++a) {
        for (std::size_t b = 0; b < 8; ++b) {
            if ((a & ~b) == 0) pairs.emplace_back(a, b);
        }
    }
    CHECK(hasse(Poset::from_pairs(names, pairs)).size() == 12);
}

TEST_CASE("hasse cover relation regenerates the order") {
    testing_support::Rng rng(testing_support::seed() + 10);
    for (int trial = 0; trial < 50; ++trial) {
        Poset p = random_poset(rng, 1 + trial % 9);
        auto covers = hasse(p);
        Poset back = Poset::from_pairs(p.elements(), covers);
        CHECK(back.relation() == p.relation());
        // Brute-force cover check.
        for (auto [a, b] : covers) {
            for (std::size_t c = 0; c < p.size(); ++c) CHECK_FALSE((p.less(a, c) && p.less(c, b)));
        }
    }
}

TEST_CASE("collapse_lower puts the basepoint first and keeps survivors") {
    Poset c = chain(4);
    ElementSet lower = lower_closure(c, std::vector<std::size_t>{1});
    CHECK(lower == ElementSet{0, 1});
    PointedPoset pp = collapse_lower(c, lower, "[x]");
    CHECK(pp.basepoint == 0);
    CHECK(pp.size() == 3);
    CHECK(pp.basepoint_name() == "[x]");
    CHECK(minimal_obstructions(pp) == ElementSet{1});
    CHECK_FALSE(is_trivial(pp));
}

TEST_CASE("pointed maps validate monotonicity and basepoints") {
    PointedPoset a = collapse_lower(chain(3), ElementSet{0}, "*");
    PointedPoset b = collapse_lower(chain(2), ElementSet{0}, "*");
    CHECK_NOTHROW(PointedMap(a, b, {0, 1, 1}));
    CHECK_THROWS_AS(PointedMap(a, b, {1, 1, 1}), Error);  // basepoint moved
    CHECK_THROWS_AS(PointedMap(a, b, {0, 1, 0}), Error);  // not monotone
    PointedMap id = PointedMap::identity(a);
    CHECK(same_elementwise(id.then(id), id));
}

TEST_CASE("iso_pointed finds isomorphisms of relabelled posets") {
    testing_support::Rng rng(testing_support::seed() + 11);
    for (int trial = 0; trial < 40; ++trial) {
        Poset p = random_poset(rng, 2 + trial % 7);
        PointedPoset a = collapse_lower(p, lower_closure(p, std::vector<std::size_t>{0}), "[a]");
        // Relabel and permute.
        const std::size_t n = a.size();
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::string> names(n);
        BitMatrix leq(n);
        for (std::size_t i = 0; i < n; ++i) names[perm[i]] = "r" + a.poset.name(i);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (a.poset.leq(i, j)) leq.set(perm[i], perm[j]);
            }
        }
        PointedPoset b{Poset(names, leq), perm[a.basepoint]};
        auto iso = iso_pointed(a, b);
        REQUIRE(iso.has_value());
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                CHECK(a.poset.leq(i, j) == b.poset.leq((*iso)(i), (*iso)(j)));
            }
        }
    }
    CHECK_FALSE(iso_pointed(collapse_lower(chain(3), ElementSet{0}, "*"),
                            collapse_lower(Poset::from_pairs({"a", "b", "c"},
                                                             std::vector<std::pair<std::size_t, std::size_t>>{
                                                                 {0, 1}, {0, 2}}),
                                           ElementSet{0}, "*"))
                    .has_value());
}

TEST_CASE("poset reflection collapses cycles of a preorder") {
    testing_support::Rng rng(testing_support::seed() + 12);
    for (int trial = 0; trial < 40; ++trial) {
        FinCat c = testing_support::random_preorder(rng);
        Reflection r = poset_reflection(c);
        for (Index x = 0; x < c.object_count(); ++x) {
            for (Index y = 0; y < c.object_count(); ++y) {
                bool both = !oracle::arrows(c, x, y).empty() && !oracle::arrows(c, y, x).empty();
                CHECK((r.class_of[x] == r.class_of[y]) == both);
                CHECK(r.poset.leq(r.class_of[x], r.class_of[y]) == !oracle::arrows(c, x, y).empty());
            }
        }
    }
}

TEST_CASE("as_category is thin and DOT output is deterministic") {
    Poset c = chain(3);
    FinCat thin = as_category(c);
    thin.check_laws();
    CHECK(thin.morphism_count() == 6);
    PointedPoset pp = collapse_lower(c, ElementSet{0}, "[x]");
    std::string dot = to_dot(pp);
    CHECK(dot == to_dot(pp));
    CHECK(dot.find("doublecircle") != std::string::npos);
}
