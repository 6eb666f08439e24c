#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gpd/complex.hpp>

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

    // two-term complex P2 -> P1 over A2 (degrees -1, 0), the resolution of S1
    Complex a2_resolution() const {
        Rep P1 = indecomposable_projective(A2, 0);
        Rep P2 = indecomposable_projective(A2, 1);
        // map P2 -> P1: right multiplication by the arrow
        AlgElt u = A2->zero_elt();
        u[A2->arrow_basis_index(0)] = A2->field().one();
        ModuleMap d = right_mult_map(A2, 1, 0, u);
        Complex c;
        c.alg = A2;
        c.terms.emplace(-1, P2);
        c.terms.emplace(0, P1);
        c.diffs.emplace(-1, d);
        return c;
    }
};

}  // namespace

TEST_CASE("shift identities") {
    Fixture fx(2);
    Complex x = fx.a2_resolution();
    validate_complex(x);
    SUBCASE("shift by zero") {
        Complex y = shift(x, 0);
        CHECK(y.terms.size() == 2);
        CHECK(reps_equal(y.term_or_zero(0), x.term_or_zero(0)));
    }
    SUBCASE("shift round trip") {
        Complex y = shift(shift(x, 1), -1);
        CHECK(y.low() == x.low());
        CHECK(map_sub(y.diff_or_zero(-1), x.diff_or_zero(-1)).is_zero());
    }
    SUBCASE("stalk shifted by 2 sits in degree -2") {
        Complex s = stalk_complex(fx.V1, 0);
        Complex t = shift(s, 2);
        CHECK(t.low() == -2);
        CHECK(t.high() == -2);
    }
}

TEST_CASE("cones and cohomology") {
    Fixture fx(0);
    SUBCASE("cone of the identity is acyclic") {
        Complex s = stalk_complex(fx.V2, 0);
        ChainMap id = stalk_chain_map(identity_map(fx.V2), 0);
        CHECK(is_acyclic(cone(s, s, id)));
        CHECK(is_quasi_iso(s, s, id));
    }
    SUBCASE("cone of 0 -> y is y") {
        Complex y = stalk_complex(fx.V1, 0);
        Complex zero;
        zero.alg = fx.L0;
        ChainMap f;
        Complex c = cone(zero, y, f);
        CHECK(c.terms.size() == 1);
        CHECK(reps_equal(c.term_or_zero(0), fx.V1));
    }
    SUBCASE("cone of the cover P2 ->> M1 has cohomology Ω M1 in degree -1") {
        Rep M1 = fx.V2;  // M[g3 g2 g1 g3 g2]
        Cover cov = projective_cover(M1);
        Complex px = stalk_complex(cov.p.rep, 0);
        Complex my = stalk_complex(M1, 0);
        ChainMap f = stalk_chain_map(cov.pi, 0);
        Complex c = cone(px, my, f);
        CHECK(cohomology(c, 0).is_zero());
        Rep hm1 = cohomology(c, -1);
        CHECK(hm1.total_dim() == 3);
        CHECK(iso_verdict(hm1, syzygy(M1), nullptr) == IsoVerdict::Iso);
        CHECK(iso_verdict(hm1, fx.V1, nullptr) == IsoVerdict::Iso);
    }
    SUBCASE("cohomology of a stalk is the module") {
        Complex s = stalk_complex(fx.V1, 3);
        CHECK(reps_equal(cohomology(s, 3), fx.V1));
        CHECK(cohomology(s, 2).is_zero());
    }
    SUBCASE("two-term resolution is quasi-isomorphic to the stalk of S1") {
        Complex r = fx.a2_resolution();
        Rep S1 = simple_rep(fx.A2, 0);
        CHECK(cohomology(r, -1).is_zero());
        CHECK(iso_verdict(cohomology(r, 0), S1, nullptr) == IsoVerdict::Iso);
        // the augmentation is a quasi-isomorphism
        Cover cov = projective_cover(S1);
        ChainMap aug = stalk_chain_map(cov.pi, 0);
        // r's degree-0 term is P1 = the cover
        CHECK(is_quasi_iso(r, stalk_complex(S1, 0), aug));
    }
}

TEST_CASE("long exact cohomology sequence of a cone on a fixture") {
    Fixture fx(2);
    // f: V1 -> V2 a nonzero hom (if any), else the cover P2 ->> V2
    Cover cov = projective_cover(fx.V2);
    Complex x = stalk_complex(cov.p.rep, 0);
    Complex y = stalk_complex(fx.V2, 0);
    ChainMap f = stalk_chain_map(cov.pi, 0);
    Triangle tri = cone_triangle(x, y, f);
    validate_complex(tri.cone);
    validate_chain_map(y, tri.cone, tri.incl);
    validate_chain_map(tri.cone, shift(x, 1), tri.proj);
    // exactness at H^n(cone): ker H(proj) = im H(incl), plus the composite vanishes
    for (int n = -1; n <= 1; ++n) {
        Mat hi = induced_cohomology_matrix(y, tri.cone, tri.incl, n);
        Mat hp = induced_cohomology_matrix(tri.cone, shift(x, 1), tri.proj, n);
        CHECK(hp.mul(hi).is_zero());
        CHECK(kernel_basis(hp).cols() == rank(hi));  // exactness in the middle
    }
}

TEST_CASE("projective resolutions of complexes") {
    Fixture fx(0);
    SUBCASE("resolving a projective stalk returns itself") {
        Rep P1 = indecomposable_projective(fx.L0, 0);
        ResolvedComplex rc = proj_resolve_complex(stalk_complex(P1, 0), -4);
        REQUIRE(rc.p.verts.size() == 1);
        CHECK(rc.p.verts.at(0) == std::vector<int>{0});
        CHECK(is_quasi_iso(rc.p.realize_complex(), stalk_complex(P1, 0), rc.eps));
    }
    SUBCASE("stalk k over k[x]/(x^2) to bound -4: period-1 resolution") {
        Rep k = simple_rep(fx.DN, 0);
        ResolvedComplex rc = proj_resolve_complex(stalk_complex(k, 0), -4);
        for (int n = -4; n <= 0; ++n) {
            REQUIRE(rc.p.verts.count(n));
            CHECK(rc.p.verts.at(n) == std::vector<int>{0});
        }
        CHECK(rc.trunc_degree == -4);
    }
    SUBCASE("already-projective two-term complex resolves to itself") {
        Complex r = fx.a2_resolution();
        ResolvedComplex rc = proj_resolve_complex(r, -5);
        REQUIRE(rc.p.verts.count(-1));
        REQUIRE(rc.p.verts.count(0));
        CHECK(rc.p.verts.at(-1) == std::vector<int>{1});
        CHECK(rc.p.verts.at(0) == std::vector<int>{0});
        CHECK(rc.p.verts.count(-2) == 0);
        CHECK(is_quasi_iso(rc.p.realize_complex(), r, rc.eps));
    }
    SUBCASE("a genuine two-term complex with nonprojective terms") {
        // V2 --pi--> V1 where pi is the quotient onto the top 3 layers
        HomSpace h = hom_basis(fx.V2, fx.V1);
        REQUIRE(h.dim() >= 1);
        // find a surjective hom
        auto surjective = [&](const ModuleMap& f) {
            for (std::size_t v = 0; v < f.comps.size(); ++v)
                if (rank(f.comps[v]) != static_cast<std::size_t>(fx.V1.dims[v])) return false;
            return true;
        };
        std::optional<ModuleMap> srj;
        for (auto& f : h.basis)
            if (surjective(f)) srj = f;
        if (!srj)
            for (auto& f : h.basis)
                for (auto& g : h.basis)
                    if (surjective(map_add(f, g))) srj = map_add(f, g);
        REQUIRE(srj);
        Complex c;
        c.alg = fx.L0;
        c.terms.emplace(-1, fx.V2);
        c.terms.emplace(0, fx.V1);
        c.diffs.emplace(-1, *srj);
        validate_complex(c);
        ResolvedComplex rc = proj_resolve_complex(c, -6);
        Complex pc = rc.p.realize_complex();
        validate_complex(pc);
        validate_chain_map(pc, c, rc.eps);
        // quasi-isomorphism above the truncation edge
        for (int n = -4; n <= 0; ++n) {
            Complex cn = cone(pc, c, rc.eps);
            (void)cn;
        }
        Complex cn = cone(pc, c, rc.eps);
        auto dims = cohomology_dims(cn);
        // all cohomology vanishes except possibly at the truncation edge
        for (int n = cn.low(); n <= cn.high(); ++n)
            if (n > rc.trunc_degree + 1) CHECK(cohomology(cn, n).is_zero());
        // minimality: all differentials radical-valued
        for (const auto& [n, am] : rc.p.diffs)
            for (std::size_t t = 0; t < am.tgt_verts.size(); ++t)
                for (std::size_t s = 0; s < am.src_verts.size(); ++s)
                    if (am.src_verts[s] == am.tgt_verts[t])
                        CHECK(fx.L0->field().is_zero(
                            fx.L0->corner_unit_part(am.at(t, s), am.src_verts[s])));
    }
}

TEST_CASE("derived homs") {
    for (std::uint32_t p : {2u, 0u}) {
        CAPTURE(p);
        Fixture fx(p);
        SUBCASE("between stalks at i = 0 it is plain Hom") {
            CHECK(hom_derived_dim(stalk_complex(fx.V1, 0), stalk_complex(fx.V1, 0), 0) == 1);
            CHECK(hom_derived_dim(stalk_complex(fx.V2, 0), stalk_complex(fx.V2, 0), 0) == 2);
        }
        SUBCASE("between stalks at i >= 1 it is Ext") {
            CHECK(hom_derived_dim(stalk_complex(fx.V2, 0), stalk_complex(fx.V2, 0), 1) == 1);
            Rep k = simple_rep(fx.DN, 0);
            for (int i = 1; i <= 3; ++i)
                CHECK(hom_derived_dim(stalk_complex(k, 0), stalk_complex(k, 0), i) == 1);
        }
        SUBCASE("GP versus perfect: vanishing in positive shifts") {
            Rep P1 = indecomposable_projective(fx.L0, 0);
            Complex perf = stalk_complex(P1, 0);
            for (const Rep* v : {&fx.V1, &fx.V2})
                for (int i = 1; i <= 3; ++i)
                    CHECK(hom_derived_dim(stalk_complex(*v, 0), perf, i) == 0);
        }
        SUBCASE("perfect versus perfect vanishes in positive shifts") {
            // normalized supports: first argument in degrees >= 0, second <= 0
            Complex r = fx.a2_resolution();   // degrees [-1, 0]
            Complex r1 = shift(r, -1);        // degrees [0, 1]
            for (int i = 1; i <= 3; ++i) {
                CHECK(hom_derived_dim(r, r, i) == 0);
                CHECK(hom_derived_dim(r1, r, i) == 0);
                CHECK(hom_derived_dim(r1, shift(r, 2), i) == 0);
            }
        }
        SUBCASE("negative shifts see the amplitude") {
            Complex r = fx.a2_resolution();
            Rep S1 = simple_rep(fx.A2, 0);
            // Hom(S1-stalk, T^{-1} r) = Hom(S1, H^{-1}-ish data): compare both models
            int d1 = hom_derived_dim(stalk_complex(S1, 0), r, -1);
            int d2 = hom_derived_dim(stalk_complex(S1, 0), stalk_complex(S1, 0), -1);
            CHECK(d2 == 0);
            CHECK(d1 == 0);  // r is quasi-isomorphic to the stalk
        }
    }
}

TEST_CASE("perfectness verdicts") {
    for (std::uint32_t p : {2u, 0u}) {
        CAPTURE(p);
        Fixture fx(p);
        SUBCASE("bounded projective complexes are perfect") {
            PerfectVerdict v = is_perfect(fx.a2_resolution(), 6);
            CHECK(v.status == PerfectVerdict::Status::Yes);
            // certificate re-verifies
            Complex w = v.witness.realize_complex();
            validate_complex(w);
            CHECK(is_quasi_iso(w, fx.a2_resolution(), v.witness_eps));
        }
        SUBCASE("stalk k over k[x]/(x^2) is not perfect, with periodic witness") {
            PerfectVerdict v = is_perfect(stalk_complex(simple_rep(fx.DN, 0), 0), 6);
            CHECK(v.status == PerfectVerdict::Status::No);
            CHECK(v.tail_period_end > v.tail_period_start);
        }
        SUBCASE("stalk S1 over A2 is perfect (finite global dimension)") {
            PerfectVerdict v = is_perfect(stalk_complex(simple_rep(fx.A2, 0), 0), 6);
            CHECK(v.status == PerfectVerdict::Status::Yes);
            Complex w = v.witness.realize_complex();
            CHECK(is_quasi_iso(w, stalk_complex(simple_rep(fx.A2, 0), 0), v.witness_eps));
        }
        SUBCASE("V1 stalk is not perfect over the Nakayama algebra") {
            PerfectVerdict v = is_perfect(stalk_complex(fx.V1, 0), 10);
            CHECK(v.status == PerfectVerdict::Status::No);
        }
    }
}

TEST_CASE("cone of a factorization through perfect complexes is perfect") {
    // u = f ∘ v with cone(u), cone(v) perfect forces cone(f) perfect
    Fixture fx(2);
    Rep P1 = indecomposable_projective(fx.L0, 0);
    Rep P2 = indecomposable_projective(fx.L0, 1);
    // v: P2 -> P2 (+) P1 the inclusion, f: the projection, u = f ∘ v = id-ish
    auto ds = direct_sum({P2, P1});
    Complex cx = stalk_complex(P2, 0), cm = stalk_complex(ds.sum, 0);
    ChainMap v = stalk_chain_map(ds.inj[0], 0);
    ChainMap f = stalk_chain_map(ds.proj[0], 0);
    ChainMap u = stalk_chain_map(map_compose(ds.proj[0], ds.inj[0]), 0);
    CHECK(is_perfect(cone(cx, cm, v), 6).status == PerfectVerdict::Status::Yes);
    CHECK(is_perfect(cone(cx, cx, u), 6).status == PerfectVerdict::Status::Yes);
    CHECK(is_perfect(cone(cm, cx, f), 6).status == PerfectVerdict::Status::Yes);
}

TEST_CASE("singularity-category homs") {
    for (std::uint32_t p : {2u, 0u}) {
        CAPTURE(p);
        Fixture fx(p);
        SUBCASE("stalk V1 has one-dimensional endomorphisms in the quotient") {
            CHECK(hom_singularity_dim(stalk_complex(fx.V1, 0), stalk_complex(fx.V1, 0), 20) == 1);
            CHECK(hom_singularity_dim(stalk_complex(fx.V2, 0), stalk_complex(fx.V2, 0), 20) == 1);
        }
        SUBCASE("perfect argument kills the hom") {
            Rep P1 = indecomposable_projective(fx.L0, 0);
            CHECK(hom_singularity_dim(stalk_complex(P1, 0), stalk_complex(fx.V1, 0), 20) == 0);
            CHECK(hom_singularity_dim(stalk_complex(fx.V1, 0), stalk_complex(P1, 0), 20) == 0);
        }
        SUBCASE("finite global dimension: everything vanishes") {
            Rep P1 = indecomposable_projective(fx.A2, 0);
            Rep P2 = indecomposable_projective(fx.A2, 1);
            Complex r = fx.a2_resolution();
            CHECK(hom_singularity_dim(stalk_complex(P1, 0), stalk_complex(P2, 0), 20) == 0);
            CHECK(hom_singularity_dim(r, r, 20) == 0);
        }
        SUBCASE("non-GP terms are refused") {
            CHECK_THROWS_AS(
                hom_singularity_dim(stalk_complex(simple_rep(fx.A2, 0), 0),
                                    stalk_complex(simple_rep(fx.A2, 0), 0), 20),
                ComplexError);
        }
        SUBCASE("invariance under adding a perfect summand") {
            Rep P2 = indecomposable_projective(fx.L0, 1);
            auto ds = direct_sum({fx.V1, P2});
            Complex plain = stalk_complex(fx.V1, 0);
            Complex padded = stalk_complex(ds.sum, 0);
            CHECK(hom_singularity_dim(padded, padded, 20) ==
                  hom_singularity_dim(plain, plain, 20));
        }
        SUBCASE("a two-term GP complex") {
            // V1 in degrees -1 and 0 with zero differential
            Complex c;
            c.alg = fx.L0;
            c.terms.emplace(-1, fx.V1);
            c.terms.emplace(0, fx.V1);
            int d = hom_singularity_dim(c, c, 20);
            // End(V1 ⊕ V1[1]) in the quotient: the diagonal contributes 2,
            // the off-diagonal parts Hom(V1, V1[±1]) contribute stable homs
            // against syzygies
            int offdiag = stable_hom(syzygy(fx.V1), fx.V1).dim + stable_hom(fx.V1, syzygy(fx.V1)).dim;
            CHECK(d == 2 + offdiag);
        }
    }
}
