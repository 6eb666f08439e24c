#include "gpd/json_io.hpp"

#include <filesystem>
#include <fstream>

namespace gpd {

namespace {

Scalar scalar_from_json(const Field& F, const json& j) {
    if (j.is_number_integer()) return F.from_long(j.get<long>());
    if (j.is_string()) return F.from_string(j.get<std::string>());
    throw IoError("scalar entries must be integers or strings");
}

std::string arrow_name_normalized(const Algebra& a, std::string n) {
    // accept the Greek spelling for the Nakayama presets
    auto pos = n.find("γ");
    if (pos != std::string::npos) n = "g" + n.substr(pos + 2);
    if (a.quiver().arrow_index(n) < 0) throw IoError("unknown arrow: " + n);
    return n;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    json j;
    in >> j;
    return j;
}

std::shared_ptr<const Algebra> algebra_ref(const json& j, const std::string& key,
                                           const std::string& base_dir) {
    if (!j.contains(key)) throw IoError("missing \"" + key + "\"");
    const json& v = j.at(key);
    if (v.is_string()) {
        std::filesystem::path p(v.get<std::string>());
        if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
        return algebra_from_json(read_json_file(p.string()));
    }
    return algebra_from_json(v);
}

}  // namespace

json algebra_to_json(const Algebra& a) {
    json j;
    j["field"] = {{"char", a.field().characteristic()}};
    json arrows = json::array();
    for (const auto& ar : a.quiver().arrows)
        arrows.push_back({{"name", ar.name}, {"src", ar.src}, {"tgt", ar.tgt}});
    j["quiver"] = {{"vertices", a.quiver().vertices}, {"arrows", arrows}};
    json rels = json::array();
    for (const auto& rel : a.relations()) {
        json terms = json::array();
        for (const auto& t : rel) {
            json path = json::array();
            for (auto it = t.arrows.rbegin(); it != t.arrows.rend(); ++it)
                path.push_back(a.quiver().arrows[*it].name);
            terms.push_back({{"coef", a.field().to_string(t.coef)}, {"path", path}});
        }
        rels.push_back(terms);
    }
    j["relations"] = rels;
    j["loewy_bound"] = a.loewy_bound();
    return j;
}

std::shared_ptr<const Algebra> algebra_from_json(const json& j) {
    Field F(j.at("field").at("char").get<std::uint32_t>());
    Quiver q;
    q.vertices = j.at("quiver").at("vertices").get<int>();
    for (const auto& ar : j.at("quiver").at("arrows"))
        q.arrows.push_back({ar.at("name").get<std::string>(), ar.at("src").get<int>(),
                            ar.at("tgt").get<int>()});
    std::vector<Relation> rels;
    if (j.contains("relations"))
        for (const auto& rel : j.at("relations")) {
            Relation r;
            for (const auto& t : rel) {
                RelTerm term;
                term.coef = scalar_from_json(F, t.at("coef"));
                std::vector<int> display;
                for (const auto& name : t.at("path")) {
                    int idx = q.arrow_index(name.get<std::string>());
                    if (idx < 0) throw IoError("unknown arrow in relation: " + name.get<std::string>());
                    display.push_back(idx);
                }
                term.arrows.assign(display.rbegin(), display.rend());
                r.push_back(std::move(term));
            }
            rels.push_back(std::move(r));
        }
    return Algebra::build(F, std::move(q), std::move(rels), j.at("loewy_bound").get<int>());
}

json module_to_json(const Rep& m) {
    json j;
    j["algebra"] = algebra_to_json(*m.alg);
    j["dims"] = m.dims;
    json action = json::object();
    const Field& F = m.field();
    for (std::size_t a = 0; a < m.action.size(); ++a) {
        json mat = json::array();
        for (std::size_t r = 0; r < m.action[a].rows(); ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < m.action[a].cols(); ++c)
                row.push_back(F.to_string(m.action[a].at(r, c)));
            mat.push_back(row);
        }
        action[m.alg->quiver().arrows[a].name] = mat;
    }
    j["action"] = action;
    return j;
}

Rep module_from_json(const json& j, std::shared_ptr<const Algebra> alg) {
    const Field F = alg->field();
    if (j.contains("string")) {
        std::vector<std::string> word;
        for (const auto& w : j.at("string"))
            word.push_back(arrow_name_normalized(*alg, w.get<std::string>()));
        int at = j.value("at", -1);
        return string_module(std::move(alg), word, at);
    }
    Rep m = zero_rep(alg);
    auto dims = j.at("dims").get<std::vector<int>>();
    if (static_cast<int>(dims.size()) != alg->vertices()) throw IoError("dims length mismatch");
    m.dims = dims;
    for (std::size_t a = 0; a < alg->quiver().arrows.size(); ++a) {
        const auto& ar = alg->quiver().arrows[a];
        Mat mat(F, dims[ar.tgt], dims[ar.src]);
        if (j.contains("action") && j.at("action").contains(ar.name)) {
            const json& rows = j.at("action").at(ar.name);
            if (rows.size() != mat.rows()) throw IoError("matrix rows mismatch on " + ar.name);
            for (std::size_t r = 0; r < mat.rows(); ++r) {
                if (rows[r].size() != mat.cols()) throw IoError("matrix cols mismatch on " + ar.name);
                for (std::size_t c = 0; c < mat.cols(); ++c)
                    mat.at(r, c) = scalar_from_json(F, rows[r][c]);
            }
        }
        m.action[a] = std::move(mat);
    }
    validate_rep(m);
    return m;
}

json complex_to_json(const Complex& c) {
    json j;
    j["algebra"] = algebra_to_json(*c.alg);
    json terms = json::object(), diffs = json::object();
    const Field& F = c.alg->field();
    for (const auto& [n, t] : c.terms) {
        json tj = module_to_json(t);
        tj.erase("algebra");
        terms[std::to_string(n)] = tj;
    }
    for (const auto& [n, d] : c.diffs) {
        json comps = json::array();
        for (const auto& m : d.comps) {
            json mat = json::array();
            for (std::size_t r = 0; r < m.rows(); ++r) {
                json row = json::array();
                for (std::size_t cc = 0; cc < m.cols(); ++cc) row.push_back(F.to_string(m.at(r, cc)));
                mat.push_back(row);
            }
            comps.push_back(mat);
        }
        diffs[std::to_string(n)] = comps;
    }
    j["terms"] = terms;
    j["diffs"] = diffs;
    return j;
}

Complex complex_from_json(const json& j, std::shared_ptr<const Algebra> alg) {
    Complex c;
    c.alg = alg;
    const Field F = alg->field();
    for (auto it = j.at("terms").begin(); it != j.at("terms").end(); ++it) {
        int n = std::stoi(it.key());
        json tj = it.value();
        tj["algebra"] = nullptr;  // unused by module_from_json
        c.terms.emplace(n, module_from_json(tj, alg));
    }
    if (j.contains("diffs"))
        for (auto it = j.at("diffs").begin(); it != j.at("diffs").end(); ++it) {
            int n = std::stoi(it.key());
            Rep src = c.term_or_zero(n), tgt = c.term_or_zero(n + 1);
            ModuleMap d = zero_map(src, tgt);
            const json& comps = it.value();
            if (static_cast<int>(comps.size()) != alg->vertices())
                throw IoError("differential needs one matrix per vertex");
            for (int v = 0; v < alg->vertices(); ++v) {
                const json& mat = comps[v];
                for (std::size_t r = 0; r < d.comps[v].rows(); ++r)
                    for (std::size_t cc = 0; cc < d.comps[v].cols(); ++cc)
                        d.comps[v].at(r, cc) = scalar_from_json(F, mat.at(r).at(cc));
            }
            c.diffs.emplace(n, std::move(d));
        }
    validate_complex(c);
    c.normalize();
    return c;
}

json ring_to_json(const ArtinAlgebra& r) {
    json j;
    j["vars"] = r.ring()->vars();
    json rels = json::array();
    for (const auto& p : r.minimal_generators()) rels.push_back(poly_string(p));
    j["relations"] = rels;
    j["order"] = r.ring()->order();
    return j;
}

ArtinAlgebra ring_from_json(const json& j, const Field& f) {
    auto vars = j.at("vars").get<std::vector<std::string>>();
    int order = j.at("order").get<int>();
    auto ring = std::make_shared<PolyRing>(f, vars, order);
    std::vector<Poly> gens;
    if (j.contains("relations"))
        for (const auto& r : j.at("relations")) gens.push_back(parse_poly(ring, r.get<std::string>()));
    return ArtinAlgebra::quotient(ring, gens);
}

json versal_to_json(const VersalPresentation& v) {
    json j;
    j["vars"] = v.vars;
    j["var_names"] = v.var_names;
    json rels = json::array();
    for (const auto& p : v.relations) rels.push_back(poly_string(p));
    j["relations"] = rels;
    j["order"] = v.order;
    j["exact"] = v.exact;
    j["universal_claimed"] = v.universal_claimed;
    return j;
}

json bimodule_to_json(const Bimodule& b) {
    json j = module_to_json(b.rep);
    j.erase("algebra");
    j["left"] = algebra_to_json(*b.left);
    j["right"] = algebra_to_json(*b.right);
    return j;
}

Bimodule bimodule_from_json(const json& j) {
    auto left = algebra_from_json(j.at("left"));
    auto right = algebra_from_json(j.at("right"));
    auto env = Algebra::enveloping(left, right);
    json mj = j;
    Rep rep = module_from_json(mj, env);
    return make_bimodule(left, right, std::move(rep));
}

std::shared_ptr<const Algebra> load_algebra_file(const std::string& path) {
    return algebra_from_json(read_json_file(path));
}

Rep load_module_file(const std::string& path) {
    json j = read_json_file(path);
    auto alg = algebra_ref(j, "algebra", std::filesystem::path(path).parent_path().string());
    return module_from_json(j, alg);
}

Complex load_complex_file(const std::string& path) {
    json j = read_json_file(path);
    auto alg = algebra_ref(j, "algebra", std::filesystem::path(path).parent_path().string());
    return complex_from_json(j, alg);
}

Bimodule load_bimodule_file(const std::string& path) { return bimodule_from_json(read_json_file(path)); }

ArtinAlgebra load_ring_file(const std::string& path, const Field& f) {
    return ring_from_json(read_json_file(path), f);
}

}  // namespace gpd
