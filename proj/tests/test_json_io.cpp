#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gpd/json_io.hpp>

using namespace gpd;

TEST_CASE("algebra json round trip") {
    Field F2(2);
    auto L0 = Algebra::nakayama(F2, 3, {8, 9, 9});
    json j = algebra_to_json(*L0);
    auto back = algebra_from_json(j);
    CHECK(back->dim() == 26);
    CHECK(back->loewy_bound() == 9);
    CHECK(back->quiver().arrows.size() == 3);
    // serialized again it is identical
    CHECK(algebra_to_json(*back) == j);
}

TEST_CASE("module json round trip and string form") {
    Field Q(0);
    auto L0 = Algebra::nakayama(Q, 3, {8, 9, 9});
    Rep V1 = string_module(L0, {"g3", "g2"});
    json j = module_to_json(V1);
    Rep back = module_from_json(j, L0);
    CHECK(reps_equal(back, V1));
    json sj = {{"string", {"g3", "g2"}}};
    CHECK(reps_equal(module_from_json(sj, L0), V1));
    // the Greek spelling from the paper is accepted
    json gj = {{"string", {"γ3", "γ2"}}};
    CHECK(reps_equal(module_from_json(gj, L0), V1));
    json ej = {{"string", json::array()}, {"at", 1}};
    CHECK(module_from_json(ej, L0).dims == std::vector<int>{0, 1, 0});
}

TEST_CASE("invalid module json is rejected") {
    Field Q(0);
    auto DN = Algebra::build(Q, Quiver{1, {{"x", 0, 0}}}, {Relation{{Q.one(), {0, 0}}}}, 2);
    json j = {{"dims", {1}}, {"action", {{"x", {{"1"}}}}}};  // x^2 = 1 != 0
    CHECK_THROWS_AS(module_from_json(j, DN), RepError);
    json j2 = {{"dims", {1, 2}}};
    CHECK_THROWS_AS(module_from_json(j2, DN), IoError);
}

TEST_CASE("complex json round trip") {
    Field F2(2);
    auto A2 = Algebra::build(F2, Quiver{2, {{"a", 0, 1}}}, {}, 2);
    Rep P1 = indecomposable_projective(A2, 0);
    Rep P2 = indecomposable_projective(A2, 1);
    AlgElt u = A2->zero_elt();
    u[A2->arrow_basis_index(0)] = F2.one();
    Complex c;
    c.alg = A2;
    c.terms.emplace(-1, P2);
    c.terms.emplace(0, P1);
    c.diffs.emplace(-1, right_mult_map(A2, 1, 0, u));
    json j = complex_to_json(c);
    Complex back = complex_from_json(j, A2);
    CHECK(back.terms.size() == 2);
    CHECK(map_sub(back.diff_or_zero(-1), c.diff_or_zero(-1)).is_zero());
}

TEST_CASE("ring json") {
    Field Q(0);
    json j = {{"vars", {"t"}}, {"relations", {"t^3"}}, {"order", 4}};
    ArtinAlgebra R = ring_from_json(j, Q);
    CHECK(R.dim() == 3);
    json back = ring_to_json(R);
    CHECK(back.at("relations") == json::array({"t^3"}));
    CHECK(back.at("order") == 4);
}

TEST_CASE("versal report json") {
    Field F2(2);
    auto DN = Algebra::build(F2, Quiver{1, {{"x", 0, 0}}}, {Relation{{F2.one(), {0, 0}}}}, 2);
    VersalPresentation v = versal_presentation(simple_rep(DN, 0), 4);
    json j = versal_to_json(v);
    CHECK(j.at("vars") == 1);
    CHECK(j.at("relations") == json::array({"t^2"}));
    CHECK(j.at("exact") == true);
}

TEST_CASE("bimodule json round trip") {
    Field F2(2);
    auto DN = Algebra::build(F2, Quiver{1, {{"x", 0, 0}}}, {Relation{{F2.one(), {0, 0}}}}, 2);
    Bimodule id = identity_bimodule(DN);
    json j = bimodule_to_json(id);
    Bimodule back = bimodule_from_json(j);
    CHECK(back.rep.total_dim() == 2);
    CHECK(back.rep.dims == id.rep.dims);
}
