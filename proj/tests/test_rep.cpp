#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gpd/rep.hpp>

#include "oracle_rep.hpp"

using namespace gpd;

namespace {

struct Fixture {
    std::shared_ptr<const Algebra> L0, A2, DN;  // Nakayama(3,(8,9,9)), path A2, k[x]/x^2
    Rep V1, V2;

    explicit Fixture(std::uint32_t p) {
        Field F(p);
        L0 = Algebra::nakayama(F, 3, {8, 9, 9});
        A2 = Algebra::build(F, Quiver{2, {{"a", 0, 1}}}, {}, 2);
        DN = Algebra::build(F, Quiver{1, {{"x", 0, 0}}}, {Relation{{F.one(), {0, 0}}}}, 2);
        V1 = string_module(L0, {"g3", "g2"});
        V2 = string_module(L0, {"g3", "g2", "g1", "g3", "g2"});
    }
};

}  // namespace

TEST_CASE("string modules") {
    Fixture fx(2);
    CHECK(fx.V1.total_dim() == 3);
    CHECK(fx.V1.dims == std::vector<int>{1, 1, 1});
    CHECK(fx.V2.total_dim() == 6);
    CHECK(fx.V2.dims == std::vector<int>{2, 2, 2});
    // empty word gives a simple
    Rep s = string_module(fx.L0, {}, 1);
    CHECK(s.dims == std::vector<int>{0, 1, 0});
    // the 3-letter word g3 g2 (display) applied from vertex 1 has dim 3
    Rep m = string_module(fx.L0, {"g1", "g3", "g2"});
    CHECK(m.total_dim() == 4);
    SUBCASE("invalid words") {
        CHECK_THROWS_AS(string_module(fx.L0, {"g2", "g3"}), RepError);  // not composable
        CHECK_THROWS_AS(string_module(fx.L0, {"zz"}), RepError);
        CHECK_THROWS_AS(string_module(fx.L0, {"-g2"}), RepError);  // inverse letter
        // the full 9-cycle from vertex 1 hits the relation
        std::vector<std::string> w;
        for (int i = 0; i < 3; ++i) {
            w.push_back("g1");
            w.push_back("g3");
            w.push_back("g2");
        }
        CHECK_THROWS_AS(string_module(fx.L0, w), RepError);
    }
}

TEST_CASE("hom spaces") {
    for (std::uint32_t p : {2u, 0u}) {
        Fixture fx(p);
        CHECK(hom_basis(fx.V1, fx.V1).dim() == 1);  // End(V1) = k
        Rep s1 = simple_rep(fx.A2, 0), s2 = simple_rep(fx.A2, 1);
        CHECK(hom_basis(s1, s2).dim() == 0);
        // Yoneda: dim Hom(P_i, M) = dim e_i M, cross-checked by path count
        Rep P2 = indecomposable_projective(fx.L0, 1);
        CHECK(hom_basis(P2, fx.V2).dim() == fx.V2.dims[1]);
        CHECK(hom_basis(P2, fx.V1).dim() == fx.V1.dims[1]);
        for (int v = 0; v < 3; ++v)
            CHECK(hom_basis(indecomposable_projective(fx.L0, v), fx.V2).dim() == fx.V2.dims[v]);
    }
}

TEST_CASE("hom additivity") {
    Fixture fx(2);
    Rep P2 = indecomposable_projective(fx.L0, 1);
    auto ds = direct_sum({fx.V1, P2});
    CHECK(hom_basis(ds.sum, fx.V2).dim() ==
          hom_basis(fx.V1, fx.V2).dim() + hom_basis(P2, fx.V2).dim());
}

TEST_CASE("projective covers") {
    Fixture fx(0);
    SUBCASE("cover of the simple S2 is P_2 of dimension 9") {
        Cover c = projective_cover(simple_rep(fx.L0, 1));
        CHECK(c.p.rep.total_dim() == 9);
        CHECK(c.p.verts == std::vector<int>{1});
    }
    SUBCASE("cover of a projective is an isomorphism") {
        Rep P1 = indecomposable_projective(fx.L0, 0);
        Cover c = projective_cover(P1);
        CHECK(c.p.rep.total_dim() == P1.total_dim());
        CHECK(map_is_iso(c.p.rep, P1, c.pi));
        CHECK(is_projective(P1));
        CHECK(!is_projective(fx.V1));
    }
    SUBCASE("cover of V2 is P_2 (top is S_2)") {
        Cover c = projective_cover(fx.V2);
        CHECK(c.p.verts == std::vector<int>{1});
        CHECK(c.p.rep.total_dim() == 9);
    }
}

TEST_CASE("syzygies") {
    for (std::uint32_t p : {2u, 0u}) {
        CAPTURE(p);
        Fixture fx(p);
        SUBCASE("syzygy of V2 is V1") {
            Rep o = syzygy(fx.V2);
            CHECK(o.total_dim() == 3);
            auto witness = std::optional<ModuleMap>{};
            CHECK(iso_verdict(o, fx.V1, &witness) == IsoVerdict::Iso);
            REQUIRE(witness);
            validate_map(o, fx.V1, *witness);
        }
        SUBCASE("syzygy of a projective is zero") {
            CHECK(syzygy(indecomposable_projective(fx.L0, 1)).is_zero());
        }
        SUBCASE("syzygy of k over k[x]/(x^2) is k") {
            Rep k = simple_rep(fx.DN, 0);
            Rep o = syzygy(k);
            CHECK(iso_verdict(o, k, nullptr) == IsoVerdict::Iso);
        }
        SUBCASE("syzygy is additive") {
            Rep P2 = indecomposable_projective(fx.L0, 1);
            Rep o = syzygy(direct_sum({fx.V2, P2}).sum);
            CHECK(iso_verdict(o, fx.V1, nullptr) == IsoVerdict::Iso);
        }
    }
}

TEST_CASE("minimal resolutions") {
    Fixture fx(0);
    SUBCASE("projective stops immediately") {
        Resolution r = min_proj_resolution(indecomposable_projective(fx.L0, 2), 5);
        CHECK(r.terminated_at == 1);
        CHECK(r.terms.size() == 1);
    }
    SUBCASE("k over k[x]/(x^2) has period-1 resolution") {
        Resolution r = min_proj_resolution(simple_rep(fx.DN, 0), 4);
        CHECK(r.terminated_at == -1);
        REQUIRE(r.terms.size() == 5);
        for (const auto& t : r.terms) CHECK(t.rep.total_dim() == 2);
        // differentials map into the radical (minimality)
        for (const auto& d : r.diffs) {
            auto rad = radical_span(r.terms[0].rep);
            // image of d at the vertex is contained in the radical span
            Mat cmb = Mat::hstack({rad[0], d.comps[0]});
            CHECK(rank(cmb) == rank(rad[0]));
        }
    }
    SUBCASE("S1 over A2 resolves by 0 -> P2 -> P1") {
        Resolution r = min_proj_resolution(simple_rep(fx.A2, 0), 5);
        CHECK(r.terminated_at == 2);
        REQUIRE(r.terms.size() == 2);
        CHECK(r.terms[0].verts == std::vector<int>{0});
        CHECK(r.terms[1].verts == std::vector<int>{1});
    }
}

TEST_CASE("ext dimensions") {
    for (std::uint32_t p : {2u, 0u}) {
        CAPTURE(p);
        Fixture fx(p);
        CHECK(ext_dim(fx.V2, fx.V2, 1) == 1);  // Ext^1(V2, V2) = k
        CHECK(ext_dim(fx.V1, fx.V1, 1) == 1);
        Rep P2 = indecomposable_projective(fx.L0, 1);
        CHECK(ext_dim(P2, fx.V2, 1) == 0);
        CHECK(ext_dim(P2, fx.V2, 2) == 0);
        Rep k = simple_rep(fx.DN, 0);
        CHECK(ext_dim(k, k, 1) == 1);
        CHECK(ext_dim(k, k, 2) == 1);
        CHECK(ext_dim(simple_rep(fx.A2, 0), simple_rep(fx.A2, 1), 1) == 1);
        CHECK(ext_dim(simple_rep(fx.A2, 0), simple_rep(fx.A2, 0), 1) == 0);
    }
}

TEST_CASE("ext agrees with the extension-cocycle and dimension-shift oracles") {
    Fixture fx(2);
    std::vector<Rep> mods{simple_rep(fx.DN, 0), regular_rep(fx.DN).rep, simple_rep(fx.A2, 0),
                          simple_rep(fx.A2, 1)};
    for (const auto& m : mods)
        for (const auto& n : mods) {
            if (m.alg != n.alg) continue;
            CAPTURE(m.dims);
            CAPTURE(n.dims);
            CHECK(hom_basis(m, n).dim() == oracle::hom_dim_oracle(m, n));
            CHECK(ext_dim(m, n, 1) == oracle::ext1_dim_oracle(m, n));
            CHECK(ext_dim(m, n, 2) == oracle::ext2_dim_oracle(m, n));
        }
    // a Nakayama spot-check
    CHECK(ext_dim(fx.V2, fx.V2, 1) == oracle::ext1_dim_oracle(fx.V2, fx.V2));
    CHECK(ext_dim(fx.V1, fx.V1, 2) == oracle::ext2_dim_oracle(fx.V1, fx.V1));
}

TEST_CASE("duals") {
    for (std::uint32_t p : {2u, 0u}) {
        CAPTURE(p);
        Fixture fx(p);
        SUBCASE("dual of the regular module") {
            Rep lam = regular_rep(fx.L0).rep;
            Rep d = dual_wrt_algebra(lam);
            CHECK(d.total_dim() == 26);
            validate_rep(d);
        }
        SUBCASE("dual of P_i is the opposite projective at i") {
            for (int i = 0; i < 3; ++i) {
                Rep d = dual_wrt_algebra(indecomposable_projective(fx.L0, i));
                Rep pop = indecomposable_projective(fx.L0->opposite(), i);
                CHECK(iso_verdict(d, pop, nullptr) == IsoVerdict::Iso);
            }
        }
        SUBCASE("V1 is reflexive via the natural map") {
            auto [ev, dd] = double_dual_map(fx.V1);
            CHECK(dd.dims == fx.V1.dims);
            CHECK(map_is_iso(fx.V1, dd, ev));
            validate_map(fx.V1, dd, ev);
        }
    }
}

TEST_CASE("stable hom") {
    for (std::uint32_t p : {2u, 0u}) {
        CAPTURE(p);
        Fixture fx(p);
        StableHom se2 = stable_hom(fx.V2, fx.V2);
        CHECK(se2.full_hom_dim == 2);
        CHECK(se2.dim == 1);  // stable End(V2) = k
        CHECK(stable_hom(fx.V1, fx.V1).dim == 1);
        Rep P2 = indecomposable_projective(fx.L0, 1);
        CHECK(stable_hom(fx.V2, P2).dim == 0);
        Rep k = simple_rep(fx.DN, 0);
        CHECK(stable_hom(k, k).dim == 1);
        CHECK(stable_hom(k, regular_rep(fx.DN).rep).dim == 0);
    }
}

TEST_CASE("ext via stable hom of the syzygy for modules with Ext(-,Λ)=0") {
    Fixture fx(2);
    // V1, V2 are Gorenstein projective: Ext^1(M, N) = stableHom(ΩM, N)
    for (const Rep* m : {&fx.V1, &fx.V2})
        for (const Rep* n : {&fx.V1, &fx.V2})
            CHECK(ext_dim(*m, *n, 1) == stable_hom(syzygy(*m), *n).dim);
    // over the self-injective k[x]/x^2 it holds for everything
    Rep k = simple_rep(fx.DN, 0);
    CHECK(ext_dim(k, k, 1) == stable_hom(syzygy(k), k).dim);
}

TEST_CASE("gorenstein projectivity") {
    for (std::uint32_t p : {2u, 0u}) {
        CAPTURE(p);
        Fixture fx(p);
        SUBCASE("V1 and V2 are GP with periodicity certificates") {
            for (const Rep* m : {&fx.V1, &fx.V2}) {
                GPVerdict v = is_gorenstein_projective(*m, 10);
                CHECK(v.status == GPVerdict::Status::Yes);
                CHECK(v.period_len > 0);
                CHECK(v.dual_period_len > 0);
                // certificate re-verification: the Ext window is really zero
                Rep lam = regular_rep(fx.L0).rep;
                for (int i = 1; i <= v.period_start + v.period_len; ++i)
                    CHECK(ext_dim(*m, lam, i) == 0);
            }
        }
        SUBCASE("simple over A2 is not GP (finite projective dimension)") {
            GPVerdict v = is_gorenstein_projective(simple_rep(fx.A2, 0), 10);
            CHECK(v.status == GPVerdict::Status::No);
            CHECK(v.finite_projdim == 1);
        }
        SUBCASE("k over k[x]/(x^2) is GP with period 1") {
            GPVerdict v = is_gorenstein_projective(simple_rep(fx.DN, 0), 10);
            CHECK(v.status == GPVerdict::Status::Yes);
            CHECK(v.period_len == 1);
        }
        SUBCASE("projectives are GP") {
            GPVerdict v = is_gorenstein_projective(indecomposable_projective(fx.L0, 0), 10);
            CHECK(v.status == GPVerdict::Status::Yes);
        }
        SUBCASE("non-GP simple over the Nakayama algebra") {
            GPVerdict v = is_gorenstein_projective(simple_rep(fx.L0, 0), 30);
            CHECK(v.status == GPVerdict::Status::No);
        }
        SUBCASE("GP is closed under syzygies") {
            GPVerdict v = is_gorenstein_projective(syzygy(fx.V1), 10);
            CHECK(v.status == GPVerdict::Status::Yes);
        }
    }
}

TEST_CASE("decompose") {
    for (std::uint32_t p : {2u, 0u}) {
        CAPTURE(p);
        Fixture fx(p);
        Rep P2 = indecomposable_projective(fx.L0, 1);
        SUBCASE("P2 + P2") {
            auto parts = decompose(direct_sum({P2, P2}).sum);
            REQUIRE(parts.size() == 1);
            CHECK(parts[0].second == 2);
            CHECK(iso_verdict(parts[0].first, P2, nullptr) == IsoVerdict::Iso);
        }
        SUBCASE("V1 + P2 splits into two distinct summands") {
            auto parts = decompose(direct_sum({fx.V1, P2}).sum);
            REQUIRE(parts.size() == 2);
            CHECK(parts[0].second == 1);
            CHECK(parts[1].second == 1);
            CHECK(parts[0].first.total_dim() + parts[1].first.total_dim() == 12);
        }
        SUBCASE("indecomposable maps to itself") {
            auto parts = decompose(fx.V2);
            REQUIRE(parts.size() == 1);
            CHECK(parts[0].second == 1);
            CHECK(reps_equal(parts[0].first, fx.V2));
        }
        SUBCASE("dimension preserved and idempotent") {
            Rep big = direct_sum({fx.V1, fx.V1, P2}).sum;
            auto parts = decompose(big);
            int tot = 0;
            for (auto& [r, m] : parts) tot += r.total_dim() * m;
            CHECK(tot == big.total_dim());
            for (auto& [r, m] : parts) {
                auto again = decompose(r);
                REQUIRE(again.size() == 1);
                CHECK(again[0].second == 1);
            }
        }
    }
}

TEST_CASE("hom oracle agreement on small modules over F2") {
    Fixture fx(2);
    // all representations of k[x]/x^2 with dim <= 2: X in {0, [0], [[0,0],[0,0]], [[0,1],[0,0]], ...}
    std::vector<Rep> mods;
    Field F(2);
    for (int d = 0; d <= 2; ++d) {
        // enumerate nilpotent-square matrices
        std::vector<std::uint64_t> entries(d * d, 0);
        while (true) {
            Mat X(F, d, d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) X.at(i, j) = F.from_long(static_cast<long>(entries[i * d + j]));
            if (X.mul(X).is_zero()) {
                Rep r = zero_rep(fx.DN);
                r.dims[0] = d;
                r.action[0] = X;
                mods.push_back(r);
            }
            std::size_t k = 0;
            while (k < entries.size() && ++entries[k] == 2) entries[k++] = 0;
            if (k == entries.size() || entries.empty()) break;
        }
    }
    for (const auto& m : mods)
        for (const auto& n : mods)
            CHECK(hom_basis(m, n).dim() == oracle::hom_dim_oracle(m, n));
}
