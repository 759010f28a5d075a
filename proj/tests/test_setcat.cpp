#include <doctest.h>

#include <algorithm>
#include <set>

#include "obstructia/error.hpp"
#include "obstructia/homotopy.hpp"
#include "obstructia/setcat.hpp"
#include "support/generators.hpp"

using namespace obstructia;

namespace {

std::size_t power(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

std::size_t missing_from_image(const FiniteFunction& f) {
    auto img = f.image();
    return static_cast<std::size_t>(std::count(img.begin(), img.end(), false));
}

std::size_t kernel_size(const FiniteFunction& f) {
    std::size_t n = 0;
    for (std::size_t a = 0; a < f.domain.size(); ++a) {
        for (std::size_t b = 0; b < f.domain.size(); ++b) n += f.mapping[a] == f.mapping[b];
    }
    return n;
}

}  // namespace

TEST_CASE("finset ambient has all functions between small sets") {
    for (std::size_t k = 0; k <= 3; ++k) {
        FinCat c = finset_ambient(k);
        CHECK(c.object_count() == k + 1);
        std::size_t expected = 0;
        for (std::size_t m = 0; m <= k; ++m) {
            for (std::size_t n = 0; n <= k; ++n) expected += power(n, m);
        }
        CHECK(c.morphism_count() == expected);
    }
    finset_ambient(2).check_laws();
    CHECK_THROWS_AS(finset_ambient(5), Error);
}

TEST_CASE("ambient morphism lookup agrees with composition") {
    FinCat c = finset_ambient(3);
    testing_support::Rng rng(testing_support::seed() + 30);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t a = trial % 4, b = (trial / 4) % 4, d = (trial / 16) % 4;
        FiniteFunction f = testing_support::random_function(rng, a, b);
        FiniteFunction g = testing_support::random_function(rng, b, d);
        if (a > 0 && b == 0) continue;
        if (b > 0 && d == 0) continue;
        FiniteFunction fg = f;
        fg.codomain = g.codomain;
        for (auto& v : fg.mapping) v = g.mapping[v];
        CHECK(c.compose(ambient_morphism(c, f), ambient_morphism(c, g)) == ambient_morphism(c, fg));
    }
}

TEST_CASE("kernel pairs") {
    auto id = FiniteFunction::make("i", {"a", "b"}, {"a", "b"}, {{"a", "a"}, {"b", "b"}});
    CHECK(kernel_pair(id).pairs.size() == 2);
    auto cst = FiniteFunction::make("c", {"0", "1"}, {"*"}, {{"0", "*"}, {"1", "*"}});
    CHECK(kernel_pair(cst).pairs.size() == 4);
    auto fiber = FiniteFunction::make("g", {"a", "b", "c"}, {"x", "y"}, {{"a", "x"}, {"b", "x"}, {"c", "y"}});
    KernelPair kp = kernel_pair(fiber);
    CHECK(kp.pairs.size() == 5);
    // Equivalence relation.
    std::set<std::pair<std::size_t, std::size_t>> rel(kp.pairs.begin(), kp.pairs.end());
    for (auto [x, y] : kp.pairs) {
        CHECK(rel.count({y, x}));
        CHECK(rel.count({x, x}));
    }
    CHECK(kp.first_projection().size() == kp.pairs.size());
    ObstructionReport r = pi1_function(fiber);
    CHECK(r.minimal == std::vector<std::string>{"{(a,b)}", "{(b,a)}"});
}

TEST_CASE("worked examples") {
    FiniteFunction f = parse_function("fn f : {0,1} -> {0,1,2,3} ; 0=>0, 1=>1");
    ObstructionReport r0 = pi0_function(f);
    REQUIRE(r0.invariant);
    CHECK(r0.invariant->size() == 13);
    CHECK(hasse(r0.invariant->poset).size() == 22);
    CHECK(r0.minimal == std::vector<std::string>{"{2}", "{3}"});

    FiniteFunction g = parse_function("fn g : {0,1} -> {*} ; 0=>*, 1=>*");
    ObstructionReport r1 = pi1_function(g);
    REQUIRE(r1.invariant);
    CHECK(r1.invariant->size() == 13);
    CHECK(r1.minimal == std::vector<std::string>{"{(0,1)}", "{(1,0)}"});

    auto empty = FiniteFunction::make("e", {}, {"*"}, {});
    ObstructionReport re = pi0_function(empty);
    CHECK(re.invariant->size() == 2);
    CHECK(re.minimal == std::vector<std::string>{"{*}"});
}

TEST_CASE("minimal obstruction counts and triviality") {
    testing_support::Rng rng(testing_support::seed() + 31);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t m = trial % 6, n = 1 + (trial / 6) % 6;
        FiniteFunction f = testing_support::random_function(rng, m, n);
        ObstructionReport r0 = pi0_function(f), r1 = pi1_function(f);
        CHECK(r0.minimal.size() == missing_from_image(f));
        CHECK(r1.minimal.size() == kernel_size(f) - m);
        CHECK(r0.trivial == f.surjective());
        CHECK(r1.trivial == f.injective());
        CHECK(*r0.element_count == 1 + power(2, n) - power(2, n - missing_from_image(f)));
    }
}

TEST_CASE("large powersets stay symbolic") {
    testing_support::Rng rng(testing_support::seed() + 32);
    FiniteFunction f = testing_support::random_function(rng, 3, 14);
    ObstructionReport r = pi0_function(f);
    CHECK_FALSE(r.invariant.has_value());
    CHECK(r.minimal.size() == missing_from_image(f));
    CHECK(*r.element_count == 1 + power(2, 14) - power(2, 14 - missing_from_image(f)));
}

TEST_CASE("function text round-trips") {
    testing_support::Rng rng(testing_support::seed() + 33);
    for (int trial = 0; trial < 50; ++trial) {
        FiniteFunction f = testing_support::random_function(rng, trial % 5, 1 + trial % 4);
        CHECK(parse_function(format_function(f)) == f);
    }
    CHECK_THROWS_AS(parse_function("fn f : {0} -> {1} ; 0=>2"), Error);
}

TEST_CASE("fast path agrees with the generic engine on small functions") {
    auto ambient = share(finset_ambient(3));
    for (std::size_t m = 0; m <= 2; ++m) {
        for (std::size_t n = 0; n <= 3; ++n) {
            for (const FiniteFunction& f : testing_support::all_functions(m, n)) {
                MorphismAnalysis a = analyze_morphism(ambient, ambient_morphism(*ambient, f));
                ObstructionReport fast0 = pi0_function(f);
                CHECK(a.split_epi == f.surjective());
                CHECK(a.mono == f.injective());
                CHECK(iso_pointed(*a.pi0.invariant, *fast0.invariant).has_value());
                if (kernel_size(f) <= 3) {
                    CHECK(iso_pointed(*a.pi1.invariant, *pi1_function(f).invariant).has_value());
                }
            }
        }
    }
}
