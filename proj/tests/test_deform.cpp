#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gpd/deform.hpp>

using namespace gpd;

namespace {

struct Fixture {
    std::shared_ptr<const Algebra> L0, A2, DN;
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

ArtinAlgebra truncated_univariate(Field F, int power, int order) {
    // k[t]/(t^power) presented at the given truncation order
    auto ring = std::make_shared<PolyRing>(F, std::vector<std::string>{"t"}, order);
    if (power > order) return ArtinAlgebra::quotient(ring, {});
    return ArtinAlgebra::quotient(ring, {parse_poly(ring, "t^" + std::to_string(power))});
}

}  // namespace

TEST_CASE("polynomial rings and parsing") {
    Field Q(0);
    auto ring = std::make_shared<PolyRing>(Q, std::vector<std::string>{"t1", "t2"}, 3);
    CHECK(ring->count() == 10);  // monomials of degree <= 3 in two variables
    Poly p = parse_poly(ring, "t1^2 - 2*t2 + 1/3");
    CHECK(poly_string(parse_poly(ring, poly_string(p))) == poly_string(p));
    CHECK_THROWS_AS(parse_poly(ring, "t1^9"), DeformError);
    Poly q = parse_poly(ring, "t1*t2 + t1^3");
    CHECK(!q.is_zero());
}

TEST_CASE("artin quotients") {
    Field Q(0);
    SUBCASE("dual numbers") {
        ArtinAlgebra R = truncated_univariate(Q, 2, 4);
        CHECK(R.dim() == 2);
        CHECK(R.nilpotency_degree() == 2);
        auto t = R.reduce(parse_poly(R.ring(), "t"));
        CHECK(R.is_zero(R.mul(t, t)));
    }
    SUBCASE("k[t]/(t^3)") {
        ArtinAlgebra R = truncated_univariate(Q, 3, 4);
        CHECK(R.dim() == 3);
        auto t = R.reduce(parse_poly(R.ring(), "t"));
        auto t2 = R.mul(t, t);
        CHECK(!R.is_zero(t2));
        CHECK(R.is_zero(R.mul(t2, t)));
    }
    SUBCASE("no variables gives the field") {
        auto ring = std::make_shared<PolyRing>(Q, std::vector<std::string>{}, 3);
        ArtinAlgebra R = ArtinAlgebra::quotient(ring, {});
        CHECK(R.dim() == 1);
    }
    SUBCASE("a two-variable quotient") {
        auto ring = std::make_shared<PolyRing>(Q, std::vector<std::string>{"t1", "t2"}, 3);
        ArtinAlgebra R = ArtinAlgebra::quotient(ring, {parse_poly(ring, "t1*t2")});
        // basis: 1, t2, t1, t2^2, t1^2, t2^3, t1^3
        CHECK(R.dim() == 7);
        CHECK(R.minimal_generators().size() == 1);
        CHECK(poly_string(R.minimal_generators()[0]) == "t1*t2");
    }
    SUBCASE("units are rejected") {
        auto ring = std::make_shared<PolyRing>(Q, std::vector<std::string>{"t"}, 2);
        CHECK_THROWS_AS(ArtinAlgebra::quotient(ring, {parse_poly(ring, "1 + t")}), DeformError);
    }
}

TEST_CASE("small extensions") {
    Field Q(0);
    ArtinAlgebra R3 = truncated_univariate(Q, 3, 3);
    ArtinAlgebra R2 = truncated_univariate(Q, 2, 3);
    SmallExtension e = make_small_extension(R3, R2);
    CHECK(e.big.dim() == 3);
    CHECK(e.small.dim() == 2);
    // socle is t^2
    Poly s = e.big.lift(e.socle);
    CHECK(poly_string(s) == "t^2");
    // non-small extension rejected
    ArtinAlgebra R4 = truncated_univariate(Q, 4, 4);
    CHECK_THROWS_AS(make_small_extension(R4, R2), DeformError);
}

TEST_CASE("tangent dimensions") {
    for (std::uint32_t p : {2u, 0u}) {
        CAPTURE(p);
        Fixture fx(p);
        CHECK(tangent_dim(fx.V1) == 1);
        CHECK(tangent_dim(fx.V2) == 1);
        CHECK(tangent_dim(indecomposable_projective(fx.L0, 1)) == 0);
        CHECK(tangent_dim(simple_rep(fx.DN, 0)) == 1);
        CHECK(tangent_dim(simple_rep(fx.A2, 0)) == 0);
        // dual route: tangent = Ext^1
        for (const Rep* m : {&fx.V1, &fx.V2}) CHECK(tangent_dim(*m) == ext_dim(*m, *m, 1));
    }
}

TEST_CASE("extension of lifts") {
    for (std::uint32_t p : {2u, 0u}) {
        CAPTURE(p);
        Fixture fx(p);
        Field F(p);
        SUBCASE("the first-order lift of V1 extends to k[t]/(t^3) and becomes P2") {
            VersalPresentation v1 = versal_presentation(fx.V1, 1);
            REQUIRE(v1.lift);
            validate_lift(*v1.lift);
            // nontrivial: not isomorphic to the trivial lift
            CHECK(!lifts_isomorphic(*v1.lift, trivial_lift(fx.V1, *v1.ring)));
            ArtinAlgebra R3 = truncated_univariate(F, 3, 2);
            SmallExtension e = make_small_extension(R3, *v1.ring);
            auto ext = extend_lift(*v1.lift, e);
            REQUIRE(ext);
            validate_lift(*ext);
            // the underlying module of the extended lift is P2 (dimension 9)
            Rep total = lift_as_module(*ext);
            CHECK(total.total_dim() == 9);
            CHECK(iso_verdict(total, indecomposable_projective(fx.L0, 1), nullptr) ==
                  IsoVerdict::Iso);
        }
        SUBCASE("lifts of projectives extend") {
            Rep P2 = indecomposable_projective(fx.L0, 1);
            ArtinAlgebra R2 = truncated_univariate(F, 2, 2);
            ArtinAlgebra R3 = truncated_univariate(F, 3, 3);
            SmallExtension e = make_small_extension(R3, R2);
            auto ext = extend_lift(trivial_lift(P2, R2), e);
            REQUIRE(ext);
            validate_lift(*ext);
        }
        SUBCASE("the nontrivial lift of k over the dual numbers obstructs at order two") {
            Rep k = simple_rep(fx.DN, 0);
            VersalPresentation vk = versal_presentation(k, 1);
            REQUIRE(vk.lift);
            ArtinAlgebra R3 = truncated_univariate(F, 3, 2);
            SmallExtension e = make_small_extension(R3, *vk.ring);
            CHECK(!extend_lift(*vk.lift, e));
            // while the trivial lift extends fine
            CHECK(extend_lift(trivial_lift(k, *vk.ring), e).has_value());
        }
        SUBCASE("two-step extension agrees with the composite") {
            // extend V1's first-order lift twice: k[t]/m^2 -> m^3 -> m^4
            VersalPresentation v1 = versal_presentation(fx.V1, 1);
            ArtinAlgebra Rm3 = truncated_univariate(F, 4, 2);  // k[t]/m^3
            ArtinAlgebra Rm4 = truncated_univariate(F, 4, 3);  // k[t]/m^4
            SmallExtension e1 = make_small_extension(Rm3, *v1.ring);
            auto l2 = extend_lift(*v1.lift, e1);
            REQUIRE(l2);
            SmallExtension e2 = make_small_extension(Rm4, l2->R);
            auto l3 = extend_lift(*l2, e2);
            // the V1 lift obstructs at order 3 (the versal ring is k[t]/(t^3))
            CHECK(!l3);
        }
    }
}

TEST_CASE("versal presentations") {
    for (std::uint32_t p : {2u, 0u}) {
        CAPTURE(p);
        Fixture fx(p);
        SUBCASE("V1 presents as k[[t]]/(t^3), exact, universal") {
            VersalPresentation v = versal_presentation(fx.V1, 4);
            CHECK(v.vars == 1);
            REQUIRE(v.relations.size() == 1);
            CHECK(poly_string(v.relations[0]) == "t^3");
            CHECK(v.exact);
            CHECK(v.universal_claimed);
            CHECK(v.ring->dim() == 3);
        }
        SUBCASE("V2 presents identically (syzygy invariance)") {
            VersalPresentation v = versal_presentation(fx.V2, 4);
            CHECK(v.vars == 1);
            REQUIRE(v.relations.size() == 1);
            CHECK(poly_string(v.relations[0]) == "t^3");
            CHECK(v.exact);
            CHECK(v.universal_claimed);
        }
        SUBCASE("projectives are rigid") {
            VersalPresentation v = versal_presentation(indecomposable_projective(fx.L0, 1), 4);
            CHECK(v.vars == 0);
            CHECK(v.relations.empty());
            CHECK(v.exact);
            CHECK(v.ring->dim() == 1);
        }
        SUBCASE("k over the dual numbers presents as k[[t]]/(t^2)") {
            VersalPresentation v = versal_presentation(simple_rep(fx.DN, 0), 4);
            CHECK(v.vars == 1);
            REQUIRE(v.relations.size() == 1);
            CHECK(poly_string(v.relations[0]) == "t^2");
            CHECK(v.exact);
        }
        SUBCASE("perfect-summand invariance at orders 2..4") {
            Rep P2 = indecomposable_projective(fx.L0, 1);
            Rep sum = direct_sum({fx.V1, P2}).sum;
            for (int ord = 2; ord <= 4; ++ord) {
                VersalPresentation a = versal_presentation(fx.V1, ord);
                VersalPresentation b = versal_presentation(sum, ord);
                CHECK(a.vars == b.vars);
                REQUIRE(a.relations.size() == b.relations.size());
                for (std::size_t i = 0; i < a.relations.size(); ++i)
                    CHECK(poly_string(a.relations[i]) == poly_string(b.relations[i]));
            }
        }
        SUBCASE("truncation coherence") {
            for (int ord = 2; ord <= 4; ++ord) {
                VersalPresentation hi = versal_presentation(fx.V2, ord);
                VersalPresentation lo = versal_presentation(fx.V2, ord - 1);
                // reduce the higher-order relations mod m^{ord}: same ideal
                auto lowring = std::make_shared<PolyRing>(Field(p), hi.var_names, ord - 1);
                std::vector<Poly> reduced;
                for (const auto& rel : hi.relations) {
                    Poly q = zero_poly(lowring);
                    for (int j = 0; j < rel.ring->count(); ++j) {
                        int k = lowring->mono_index(rel.ring->monomials()[j]);
                        if (k >= 0) q.c[k] = rel.c[j];
                    }
                    if (!q.is_zero()) reduced.push_back(std::move(q));
                }
                ArtinAlgebra a = ArtinAlgebra::quotient(lowring, reduced);
                ArtinAlgebra b = ArtinAlgebra::quotient(
                    lowring, [&] {
                        std::vector<Poly> rs;
                        for (const auto& rel : lo.relations) {
                            Poly q = zero_poly(lowring);
                            for (int j = 0; j < rel.ring->count(); ++j)
                                q.c[lowring->mono_index(rel.ring->monomials()[j])] = rel.c[j];
                            rs.push_back(std::move(q));
                        }
                        return rs;
                    }());
                CHECK(a.dim() == b.dim());
                CHECK(a.qbasis() == b.qbasis());
            }
        }
    }
}

TEST_CASE("a two-variable versal presentation") {
    // S1 + S2 over the 2-cycle Nakayama algebra deforms along both arrows
    // with the single relation t1 t2 (two ways of composing kill each other)
    for (std::uint32_t p : {2u, 0u}) {
        CAPTURE(p);
        Field F(p);
        auto N2 = Algebra::nakayama(F, 2, {2, 2});
        Rep sum = direct_sum({simple_rep(N2, 0), simple_rep(N2, 1)}).sum;
        CHECK(tangent_dim(sum) == 2);
        VersalPresentation v = versal_presentation(sum, 4);
        CHECK(v.vars == 2);
        REQUIRE(v.relations.size() == 1);
        CHECK(poly_string(v.relations[0]) == "t1*t2");
        CHECK(!v.exact);  // the hull is infinite-dimensional
    }
}

TEST_CASE("lift isomorphism") {
    Fixture fx(2);
    Field F2(2);
    Rep k = simple_rep(fx.DN, 0);
    ArtinAlgebra E = truncated_univariate(F2, 2, 1);  // dual numbers
    SUBCASE("reflexivity") {
        ModuleLift l = trivial_lift(k, E);
        CHECK(lifts_isomorphic(l, l));
    }
    SUBCASE("distinct parameters are non-isomorphic") {
        // x acts by a*eps and b*eps
        ModuleLift la = trivial_lift(k, E), lb = trivial_lift(k, E);
        la.action[0][1].at(0, 0) = F2.one();
        validate_lift(la);
        CHECK(!lifts_isomorphic(la, lb));
        CHECK(lifts_isomorphic(la, la));
    }
    SUBCASE("trivial versus first-order versal lift of V1") {
        VersalPresentation v1 = versal_presentation(fx.V1, 1);
        CHECK(!lifts_isomorphic(*v1.lift, trivial_lift(fx.V1, *v1.ring)));
    }
}

TEST_CASE("deformation enumeration at tiny scale") {
    Fixture fx(2);
    Field F2(2);
    SUBCASE("k over the dual numbers has two classes over k[eps]") {
        ArtinAlgebra E = truncated_univariate(F2, 2, 1);
        auto classes = enumerate_deformations(simple_rep(fx.DN, 0), E);
        CHECK(classes.size() == 2);
    }
    SUBCASE("projectives have one class") {
        ArtinAlgebra E = truncated_univariate(F2, 2, 1);
        auto classes = enumerate_deformations(indecomposable_projective(fx.A2, 0), E);
        CHECK(classes.size() == 1);
    }
    SUBCASE("V1 mod 2 has 2^1 classes, matching the tangent dimension") {
        ArtinAlgebra E = truncated_univariate(F2, 2, 1);
        auto classes = enumerate_deformations(fx.V1, E);
        CHECK(classes.size() == 2);
        CHECK(classes.size() == (1u << tangent_dim(fx.V1)));
    }
    SUBCASE("size guard") {
        ArtinAlgebra E = truncated_univariate(F2, 2, 1);
        Rep big = direct_sum({fx.V2, fx.V2}).sum;
        CHECK_THROWS_AS(enumerate_deformations(big, E), DeformError);
    }
}

TEST_CASE("complex lifts") {
    for (std::uint32_t p : {2u, 0u}) {
        CAPTURE(p);
        Fixture fx(p);
        Field F(p);
        SUBCASE("stalk complexes behave like modules") {
            Complex s = stalk_complex(fx.V1, 0);
            VersalPresentation vc = versal_presentation_complex(s, 4);
            VersalPresentation vm = versal_presentation(fx.V1, 4);
            CHECK(vc.vars == vm.vars);
            REQUIRE(vc.relations.size() == 1);
            CHECK(poly_string(vc.relations[0]) == poly_string(vm.relations[0]));
            CHECK(vc.universal_claimed);
        }
        SUBCASE("a perfect two-term complex is rigid") {
            Rep P1 = indecomposable_projective(fx.A2, 0);
            Rep P2 = indecomposable_projective(fx.A2, 1);
            AlgElt u = fx.A2->zero_elt();
            u[fx.A2->arrow_basis_index(0)] = F.one();
            Complex c;
            c.alg = fx.A2;
            c.terms.emplace(-1, P2);
            c.terms.emplace(0, P1);
            c.diffs.emplace(-1, right_mult_map(fx.A2, 1, 0, u));
            VersalPresentation v = versal_presentation_complex(c, 2);
            CHECK(v.vars == 0);
            CHECK(v.relations.empty());
        }
        SUBCASE("shift invariance of lifting") {
            Complex s = stalk_complex(fx.V1, 0);
            Complex t = shift(s, 2);
            VersalPresentation a = versal_presentation_complex(s, 3);
            VersalPresentation b = versal_presentation_complex(t, 3);
            CHECK(a.vars == b.vars);
            REQUIRE(a.relations.size() == b.relations.size());
            for (std::size_t i = 0; i < a.relations.size(); ++i)
                CHECK(poly_string(a.relations[i]) == poly_string(b.relations[i]));
        }
        SUBCASE("perfect complexes lift along small extensions") {
            Rep P1 = indecomposable_projective(fx.A2, 0);
            Rep P2 = indecomposable_projective(fx.A2, 1);
            AlgElt u = fx.A2->zero_elt();
            u[fx.A2->arrow_basis_index(0)] = F.one();
            Complex c;
            c.alg = fx.A2;
            c.terms.emplace(-1, P2);
            c.terms.emplace(0, P1);
            c.diffs.emplace(-1, right_mult_map(fx.A2, 1, 0, u));
            for (int n = 1; n <= 3; ++n) {
                ArtinAlgebra Rn = truncated_univariate(F, n + 1, n);
                ArtinAlgebra Rn1 = truncated_univariate(F, n + 2, n + 1);
                SmallExtension e = make_small_extension(Rn1, Rn);
                ComplexLift l = trivial_complex_lift(c, Rn);
                auto ext = extend_complex_lift(l, e);
                REQUIRE(ext);
                validate_complex_lift(*ext);
                // reduction isomorphic (here: equal) to the input
                ComplexLift back = trivial_complex_lift(c, Rn);
                CHECK(complex_lifts_isomorphic(l, back));
            }
        }
        SUBCASE("lift_complex over a fixture ring") {
            ArtinAlgebra R = truncated_univariate(F, 3, 3);
            auto l = lift_complex(stalk_complex(indecomposable_projective(fx.L0, 0), 0), R);
            REQUIRE(l);
            validate_complex_lift(*l);
        }
    }
}
