// Batch front-end: loads algebras/modules/complexes/bimodules from JSON,
// runs one operation and prints a deterministic JSON report.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include <gpd/json_io.hpp>
#include <gpd/version.hpp>

using namespace gpd;
using ojson = nlohmann::ordered_json;

namespace {

struct Options {
    int cutoff = -1;  // -1: 2 dim(Λ), unless GPDEFORM_CUTOFF is set
    int order = 4;
    int field = 2;
};

int resolved_cutoff(const Options& o, const Algebra& a) {
    if (o.cutoff > 0) return o.cutoff;
    if (const char* env = std::getenv("GPDEFORM_CUTOFF")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 2 * a.dim();
}

ojson report_skeleton(const std::string& command, const Options& o, int cutoff_used) {
    ojson j;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    j["command"] = command;
    j["config"] = {{"field", o.field}, {"cutoff", cutoff_used}, {"order", o.order}};
    return j;
}

void emit(const ojson& j) { std::cout << j.dump(2) << "\n"; }

const char* gp_status(GPVerdict::Status s) {
    switch (s) {
        case GPVerdict::Status::Yes: return "yes";
        case GPVerdict::Status::No: return "no";
        default: return "unknown";
    }
}

const char* verdict_str(SingEquivReport::Verdict v) {
    switch (v) {
        case SingEquivReport::Verdict::Yes: return "yes";
        case SingEquivReport::Verdict::No: return "no";
        default: return "unknown";
    }
}

ojson projdim_json(const ProjDimResult& r) {
    ojson j;
    switch (r.kind) {
        case ProjDimResult::Kind::Finite:
            j["kind"] = "finite";
            j["dim"] = r.dim;
            break;
        case ProjDimResult::Kind::Infinite:
            j["kind"] = "infinite";
            j["period_start"] = r.period_start;
            j["period_end"] = r.period_end;
            break;
        default:
            j["kind"] = "unknown";
            j["cutoff"] = r.cutoff;
    }
    return j;
}

// lift JSON: { "module": <module json or path>, "ring": <ring json>,
//              "action": {"arrow": [["poly", ...], ...]} }
ModuleLift lift_from_json(const json& j) {
    Rep base = [&]() {
        const json& m = j.at("module");
        if (m.is_string()) return load_module_file(m.get<std::string>());
        auto alg = algebra_from_json(m.at("algebra"));
        return module_from_json(m, alg);
    }();
    ArtinAlgebra R = ring_from_json(j.at("ring"), base.field());
    ModuleLift l = trivial_lift(base, R);
    if (j.contains("action")) {
        for (std::size_t a = 0; a < base.action.size(); ++a) {
            const auto& name = base.alg->quiver().arrows[a].name;
            if (!j.at("action").contains(name)) continue;
            const json& rows = j.at("action").at(name);
            for (std::size_t r = 0; r < base.action[a].rows(); ++r)
                for (std::size_t c = 0; c < base.action[a].cols(); ++c) {
                    Poly p = parse_poly(R.ring(), rows.at(r).at(c).get<std::string>());
                    auto cls = R.reduce(p);
                    for (int w = 0; w < R.dim(); ++w) l.action[a][w].at(r, c) = cls[w];
                }
        }
    }
    validate_lift(l);
    return l;
}

ojson lift_to_json(const ModuleLift& l) {
    ojson j;
    j["ring"] = ring_to_json(l.R);
    ojson action = ojson::object();
    const Field& F = l.base.field();
    for (std::size_t a = 0; a < l.action.size(); ++a) {
        ojson mat = ojson::array();
        for (std::size_t r = 0; r < l.base.action[a].rows(); ++r) {
            ojson row = ojson::array();
            for (std::size_t c = 0; c < l.base.action[a].cols(); ++c) {
                ArtinAlgebra::RElt e = l.R.zero();
                for (int w = 0; w < l.R.dim(); ++w) e[w] = l.action[a][w].at(r, c);
                row.push_back(poly_string(l.R.lift(e)));
            }
            mat.push_back(row);
        }
        action[l.base.alg->quiver().arrows[a].name] = mat;
    }
    j["action"] = action;
    (void)F;
    return j;
}

int run_appendix_scenario(const Options& opt) {
    Field F(opt.field);
    auto L0 = Algebra::nakayama(F, 3, {8, 9, 9});
    const int cutoff = resolved_cutoff(opt, *L0);
    ojson rpt = report_skeleton("scenario appendix", opt, cutoff);
    ojson res;
    bool ok = true;
    auto check = [&](const std::string& name, bool cond, ojson value) {
        res[name] = {{"value", std::move(value)}, {"ok", cond}};
        ok = ok && cond;
    };
    check("dim_algebra", L0->dim() == 26, L0->dim());
    Rep V1 = string_module(L0, {"g3", "g2"});
    Rep V2 = string_module(L0, {"g3", "g2", "g1", "g3", "g2"});
    check("dim_V1", V1.total_dim() == 3, V1.total_dim());
    check("dim_V2", V2.total_dim() == 6, V2.total_dim());
    Rep o = syzygy(V2);
    bool syz_iso = iso_verdict(o, V1, nullptr) == IsoVerdict::Iso;
    check("syzygy_V2_iso_V1", syz_iso, syz_iso);
    int endv1 = hom_basis(V1, V1).dim();
    check("dim_end_V1", endv1 == 1, endv1);
    int se2 = stable_hom(V2, V2).dim;
    check("dim_stable_end_V2", se2 == 1, se2);
    GPVerdict g1 = is_gorenstein_projective(V1, cutoff);
    GPVerdict g2 = is_gorenstein_projective(V2, cutoff);
    check("gp_V1", g1.status == GPVerdict::Status::Yes, gp_status(g1.status));
    check("gp_V2", g2.status == GPVerdict::Status::Yes, gp_status(g2.status));
    int e1 = ext_dim(V2, V2, 1);
    check("dim_ext1_V2_V2", e1 == 1, e1);
    VersalPresentation p1 = versal_presentation(V1, opt.order);
    VersalPresentation p2 = versal_presentation(V2, opt.order);
    check("versal_V1",
          p1.vars == 1 && p1.relations.size() == 1 && poly_string(p1.relations[0]) == "t^3" &&
              p1.exact,
          versal_to_json(p1));
    check("versal_V2",
          p2.vars == 1 && p2.relations.size() == 1 && poly_string(p2.relations[0]) == "t^3" &&
              p2.exact,
          versal_to_json(p2));
    res["versal_ring"] = "k[[t]]/(t^3)";
    rpt["result"] = res;
    rpt["ok"] = ok;
    emit(rpt);
    return ok ? 0 : 1;
}

ChainMap chain_map_from_json(const json& j, const Complex& from, const Complex& to) {
    ChainMap f;
    const Field& F = from.alg->field();
    for (auto it = j.begin(); it != j.end(); ++it) {
        int n = std::stoi(it.key());
        ModuleMap m = zero_map(from.term_or_zero(n), to.term_or_zero(n));
        const json& comps = it.value();
        for (int v = 0; v < from.alg->vertices(); ++v)
            for (std::size_t r = 0; r < m.comps[v].rows(); ++r)
                for (std::size_t c = 0; c < m.comps[v].cols(); ++c) {
                    const json& cell = comps.at(v).at(r).at(c);
                    m.comps[v].at(r, c) =
                        cell.is_string() ? F.from_string(cell.get<std::string>())
                                         : F.from_long(cell.get<long>());
                }
        f.comps.emplace(n, std::move(m));
    }
    validate_chain_map(from, to, f);
    return f;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact homological workbench for bound quiver algebras"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--cutoff", opt.cutoff, "semidecision bound (default 2 dim Λ)");
    app.add_option("--order", opt.order, "deformation order (default 4)");
    app.add_option("--field", opt.field, "field characteristic: a prime or 0 (default 2)");

    std::string file1, file2, file3, word_csv;
    int at_vertex = -1, nak_n = 0, index_i = 1, degree_n = 0;
    std::string nak_c;

    auto* alg = app.add_subcommand("alg", "algebra operations")->require_subcommand(1);
    auto* alg_build = alg->add_subcommand("build", "build an algebra from JSON and report it");
    alg_build->add_option("file", file1)->required();
    auto* alg_nak = alg->add_subcommand("nakayama", "construct a cyclic Nakayama algebra");
    alg_nak->add_option("--n", nak_n, "number of vertices")->required();
    alg_nak->add_option("--c", nak_c, "admissible sequence, comma separated")->required();
    auto* alg_check = alg->add_subcommand("check", "validate an algebra");
    alg_check->add_option("file", file1)->required();

    auto* mod = app.add_subcommand("mod", "module operations")->require_subcommand(1);
    auto* mod_hom = mod->add_subcommand("hom", "hom space dimension and basis size");
    mod_hom->add_option("m", file1)->required();
    mod_hom->add_option("n", file2)->required();
    auto* mod_ext = mod->add_subcommand("ext", "Ext^i dimension");
    mod_ext->add_option("m", file1)->required();
    mod_ext->add_option("n", file2)->required();
    mod_ext->add_option("--i", index_i, "cohomological degree (default 1)");
    auto* mod_syz = mod->add_subcommand("syzygy", "kernel of the minimal projective cover");
    mod_syz->add_option("m", file1)->required();
    auto* mod_res = mod->add_subcommand("resolve", "minimal projective resolution");
    mod_res->add_option("m", file1)->required();
    mod_res->add_option("--length", index_i, "resolution length (default from --cutoff)");
    auto* mod_gp = mod->add_subcommand("gp", "Gorenstein projectivity verdict");
    mod_gp->add_option("m", file1)->required();
    auto* mod_st = mod->add_subcommand("stable-end", "stable endomorphism dimension");
    mod_st->add_option("m", file1)->required();
    auto* mod_dec = mod->add_subcommand("decompose", "indecomposable decomposition");
    mod_dec->add_option("m", file1)->required();
    auto* mod_str = mod->add_subcommand("string", "build a string module");
    mod_str->add_option("algebra", file1)->required();
    mod_str->add_option("--word", word_csv, "letters in written order, comma separated");
    mod_str->add_option("--at", at_vertex, "vertex for the empty word");

    auto* cx = app.add_subcommand("cx", "complex operations")->require_subcommand(1);
    auto* cx_cone = cx->add_subcommand("cone", "mapping cone of a chain map file");
    cx_cone->add_option("f", file1)->required();
    auto* cx_coh = cx->add_subcommand("cohomology", "cohomology of a complex");
    cx_coh->add_option("x", file1)->required();
    cx_coh->add_option("--n", degree_n, "degree");
    auto* cx_perf = cx->add_subcommand("perfect", "perfectness verdict");
    cx_perf->add_option("x", file1)->required();
    auto* cx_hd = cx->add_subcommand("hom-derived", "derived hom dimension");
    cx_hd->add_option("x", file1)->required();
    cx_hd->add_option("y", file2)->required();
    cx_hd->add_option("--i", index_i, "shift (default 1)");
    auto* cx_sg = cx->add_subcommand("hom-sg", "singularity-category hom dimension");
    cx_sg->add_option("x", file1)->required();
    cx_sg->add_option("y", file2)->required();

    auto* def = app.add_subcommand("def", "deformation operations")->require_subcommand(1);
    auto* def_tan = def->add_subcommand("tangent", "tangent dimension Ext^1(V,V)");
    def_tan->add_option("m", file1)->required();
    auto* def_ext = def->add_subcommand("extend", "extend a lift along a small extension");
    def_ext->add_option("lift", file1)->required();
    def_ext->add_option("ext", file2, "{\"big\": ring, \"small\": ring}")->required();
    auto* def_ver = def->add_subcommand("versal", "truncated versal presentation");
    def_ver->add_option("m", file1)->required();
    auto* def_enum = def->add_subcommand("enumerate", "exhaustive deformation classes");
    def_enum->add_option("m", file1)->required();
    def_enum->add_option("ring", file2)->required();

    auto* sing = app.add_subcommand("sing", "singular equivalence operations")->require_subcommand(1);
    auto* sing_check = sing->add_subcommand("check", "certify a singular equivalence of Morita type");
    sing_check->add_option("x", file1)->required();
    sing_check->add_option("y", file2)->required();
    auto* sing_tr = sing->add_subcommand("transport", "transport a module through a bimodule");
    sing_tr->add_option("x", file1)->required();
    sing_tr->add_option("v", file2)->required();
    auto* sing_inv = sing->add_subcommand("invariance", "versal rings agree under transport");
    sing_inv->add_option("x", file1)->required();
    sing_inv->add_option("y", file2)->required();
    sing_inv->add_option("v", file3)->required();

    auto* scenario = app.add_subcommand("scenario", "reproducible walkthroughs")->require_subcommand(1);
    scenario->add_subcommand("appendix", "the Nakayama(3,(8,9,9)) walkthrough");

    CLI11_PARSE(app, argc, argv);

    try {
        if (scenario->parsed()) return run_appendix_scenario(opt);

        if (alg->parsed()) {
            if (alg_nak->parsed()) {
                Field F(opt.field);
                std::vector<int> c;
                std::stringstream ss(nak_c);
                std::string tok;
                while (std::getline(ss, tok, ',')) c.push_back(std::stoi(tok));
                auto a = Algebra::nakayama(F, nak_n, c);
                ojson rpt = report_skeleton("alg nakayama", opt, resolved_cutoff(opt, *a));
                rpt["result"] = {{"dim", a->dim()}, {"algebra", algebra_to_json(*a)}};
                emit(rpt);
                return 0;
            }
            auto a = load_algebra_file(file1);
            if (alg_check->parsed()) a->check();
            ojson rpt = report_skeleton(alg_check->parsed() ? "alg check" : "alg build", opt,
                                        resolved_cutoff(opt, *a));
            rpt["result"] = {{"dim", a->dim()},
                             {"vertices", a->quiver().vertices},
                             {"arrows", a->quiver().arrows.size()},
                             {"loewy_bound", a->loewy_bound()},
                             {"valid", true}};
            emit(rpt);
            return 0;
        }

        if (mod->parsed()) {
            if (mod_str->parsed()) {
                auto a = load_algebra_file(file1);
                std::vector<std::string> word;
                std::stringstream ss(word_csv);
                std::string tok;
                while (std::getline(ss, tok, ',')) word.push_back(tok);
                Rep m = string_module(a, word, at_vertex);
                ojson rpt = report_skeleton("mod string", opt, resolved_cutoff(opt, *a));
                rpt["result"] = {{"total_dim", m.total_dim()}, {"module", module_to_json(m)}};
                emit(rpt);
                return 0;
            }
            Rep m = load_module_file(file1);
            const int cutoff = resolved_cutoff(opt, *m.alg);
            if (mod_hom->parsed() || mod_ext->parsed()) {
                Rep n = load_module_file(file2);
                if (m.alg->dim() != n.alg->dim())
                    throw IoError("modules live over different algebras");
                n.alg = m.alg;
                validate_rep(n);
                ojson rpt = report_skeleton(mod_hom->parsed() ? "mod hom" : "mod ext", opt, cutoff);
                if (mod_hom->parsed())
                    rpt["result"] = {{"dim", hom_basis(m, n).dim()}};
                else
                    rpt["result"] = {{"i", index_i}, {"dim", ext_dim(m, n, index_i)}};
                emit(rpt);
                return 0;
            }
            if (mod_syz->parsed()) {
                Rep o = syzygy(m);
                ojson rpt = report_skeleton("mod syzygy", opt, cutoff);
                rpt["result"] = {{"total_dim", o.total_dim()}, {"module", module_to_json(o)}};
                emit(rpt);
                return 0;
            }
            if (mod_res->parsed()) {
                int len = mod_res->count("--length") ? index_i : cutoff;
                Resolution r = min_proj_resolution(m, len);
                ojson rpt = report_skeleton("mod resolve", opt, cutoff);
                ojson terms = ojson::array();
                for (const auto& t : r.terms) terms.push_back(t.verts);
                rpt["result"] = {{"terms", terms}, {"terminated_at", r.terminated_at}};
                emit(rpt);
                return 0;
            }
            if (mod_gp->parsed()) {
                GPVerdict v = is_gorenstein_projective(m, cutoff);
                ojson rpt = report_skeleton("mod gp", opt, cutoff);
                rpt["result"] = {{"status", gp_status(v.status)},
                                 {"reason", v.reason},
                                 {"period_start", v.period_start},
                                 {"period_len", v.period_len},
                                 {"dual_period_start", v.dual_period_start},
                                 {"dual_period_len", v.dual_period_len}};
                emit(rpt);
                return 0;
            }
            if (mod_st->parsed()) {
                StableHom s = stable_hom(m, m);
                ojson rpt = report_skeleton("mod stable-end", opt, cutoff);
                rpt["result"] = {{"dim", s.dim}, {"full_end_dim", s.full_hom_dim}};
                emit(rpt);
                return 0;
            }
            if (mod_dec->parsed()) {
                auto parts = decompose(m);
                ojson rpt = report_skeleton("mod decompose", opt, cutoff);
                ojson arr = ojson::array();
                for (const auto& [r, mult] : parts)
                    arr.push_back({{"dims", r.dims}, {"multiplicity", mult}});
                rpt["result"] = {{"summands", arr}};
                emit(rpt);
                return 0;
            }
        }

        if (cx->parsed()) {
            if (cx_cone->parsed()) {
                json j;
                {
                    std::ifstream in(file1);
                    if (!in) throw IoError("cannot open " + file1);
                    in >> j;
                }
                auto a = algebra_from_json(j.at("algebra"));
                Complex from = complex_from_json(j.at("from"), a);
                Complex to = complex_from_json(j.at("to"), a);
                ChainMap f = chain_map_from_json(j.at("comps"), from, to);
                Complex c = cone(from, to, f);
                ojson rpt = report_skeleton("cx cone", opt, resolved_cutoff(opt, *a));
                rpt["result"] = {{"cone", complex_to_json(c)},
                                 {"cohomology", cohomology_dims(c)}};
                emit(rpt);
                return 0;
            }
            Complex x = load_complex_file(file1);
            const int cutoff = resolved_cutoff(opt, *x.alg);
            if (cx_coh->parsed()) {
                Rep h = cohomology(x, degree_n);
                ojson rpt = report_skeleton("cx cohomology", opt, cutoff);
                rpt["result"] = {{"n", degree_n}, {"dims", h.dims}, {"total_dim", h.total_dim()}};
                emit(rpt);
                return 0;
            }
            if (cx_perf->parsed()) {
                PerfectVerdict v = is_perfect(x, cutoff);
                ojson rpt = report_skeleton("cx perfect", opt, cutoff);
                const char* st = v.status == PerfectVerdict::Status::Yes
                                     ? "yes"
                                     : (v.status == PerfectVerdict::Status::No ? "no" : "unknown");
                rpt["result"] = {{"status", st}, {"reason", v.reason}};
                emit(rpt);
                return 0;
            }
            Complex y = load_complex_file(file2);
            if (x.alg->dim() != y.alg->dim()) throw IoError("complexes over different algebras");
            y.alg = x.alg;
            for (auto& [n, t] : y.terms) t.alg = x.alg;
            if (cx_hd->parsed()) {
                ojson rpt = report_skeleton("cx hom-derived", opt, cutoff);
                rpt["result"] = {{"i", index_i}, {"dim", hom_derived_dim(x, y, index_i)}};
                emit(rpt);
                return 0;
            }
            if (cx_sg->parsed()) {
                ojson rpt = report_skeleton("cx hom-sg", opt, cutoff);
                rpt["result"] = {{"dim", hom_singularity_dim(x, y, cutoff)}};
                emit(rpt);
                return 0;
            }
        }

        if (def->parsed()) {
            if (def_ext->parsed()) {
                json lj, ej;
                {
                    std::ifstream in(file1);
                    if (!in) throw IoError("cannot open " + file1);
                    in >> lj;
                }
                {
                    std::ifstream in(file2);
                    if (!in) throw IoError("cannot open " + file2);
                    in >> ej;
                }
                ModuleLift l = lift_from_json(lj);
                ArtinAlgebra big = ring_from_json(ej.at("big"), l.base.field());
                ArtinAlgebra small = ring_from_json(ej.at("small"), l.base.field());
                SmallExtension e = make_small_extension(big, small);
                auto ext = extend_lift(l, e);
                ojson rpt = report_skeleton("def extend", opt, resolved_cutoff(opt, *l.base.alg));
                if (ext)
                    rpt["result"] = {{"extends", true}, {"lift", lift_to_json(*ext)}};
                else
                    rpt["result"] = {{"extends", false}};
                emit(rpt);
                return 0;
            }
            Rep m = load_module_file(file1);
            const int cutoff = resolved_cutoff(opt, *m.alg);
            if (def_tan->parsed()) {
                ojson rpt = report_skeleton("def tangent", opt, cutoff);
                rpt["result"] = {{"dim", tangent_dim(m)}};
                emit(rpt);
                return 0;
            }
            if (def_ver->parsed()) {
                VersalPresentation v = versal_presentation(m, opt.order);
                ojson rpt = report_skeleton("def versal", opt, cutoff);
                rpt["result"] = versal_to_json(v);
                emit(rpt);
                return 0;
            }
            if (def_enum->parsed()) {
                ArtinAlgebra R = load_ring_file(file2, m.field());
                auto classes = enumerate_deformations(m, R);
                ojson rpt = report_skeleton("def enumerate", opt, cutoff);
                rpt["result"] = {{"classes", classes.size()}};
                emit(rpt);
                return 0;
            }
        }

        if (sing->parsed()) {
            Bimodule x = load_bimodule_file(file1);
            const int cutoff = resolved_cutoff(opt, *x.left);
            if (sing_tr->parsed()) {
                Rep v = load_module_file(file2);
                if (v.alg->dim() != x.right->dim()) throw IoError("module not over the right algebra");
                v.alg = x.right;
                validate_rep(v);
                Rep t = transport_module(x, v);
                GPVerdict g = is_gorenstein_projective(t, cutoff);
                ojson rpt = report_skeleton("sing transport", opt, cutoff);
                rpt["result"] = {{"total_dim", t.total_dim()},
                                 {"gp", gp_status(g.status)},
                                 {"module", module_to_json(t)}};
                emit(rpt);
                return 0;
            }
            Bimodule y = load_bimodule_file(file2);
            SingEquivReport r = check_singular_equivalence(x, y, cutoff);
            if (sing_check->parsed()) {
                ojson rpt = report_skeleton("sing check", opt, cutoff);
                rpt["result"] = {{"certified", r.certified()},
                                 {"x_side_projective", verdict_str(r.x_side_projective)},
                                 {"y_side_projective", verdict_str(r.y_side_projective)},
                                 {"xy_splits", verdict_str(r.xy_splits)},
                                 {"yx_splits", verdict_str(r.yx_splits)},
                                 {"hom_x_finite", verdict_str(r.hom_x_finite)},
                                 {"hom_y_finite", verdict_str(r.hom_y_finite)},
                                 {"q_projdim", projdim_json(r.q_projdim)},
                                 {"p_projdim", projdim_json(r.p_projdim)}};
                emit(rpt);
                return 0;
            }
            if (sing_inv->parsed()) {
                if (!r.certified()) throw IoError("the bimodule pair is not certified");
                Rep v = load_module_file(file3);
                if (v.alg->dim() != x.right->dim()) throw IoError("module not over the right algebra");
                v.alg = x.right;
                validate_rep(v);
                bool inv = verify_transport_invariance(x, v, opt.order);
                ojson rpt = report_skeleton("sing invariance", opt, cutoff);
                rpt["result"] = {{"invariant", inv}};
                emit(rpt);
                return inv ? 0 : 1;
            }
        }
    } catch (const std::exception& e) {
        ojson err;
        err["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
        err["error"] = e.what();
        std::cout << err.dump(2) << "\n";
        return 2;
    }
    std::cerr << "unknown subcommand\n";
    return 2;
}
