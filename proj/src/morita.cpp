#include "gpd/morita.hpp"

#include <algorithm>

namespace gpd {

namespace {

// env arrow indices for "l:<name>:<col>" and "r:<name>:<row>"
struct EnvArrows {
    std::vector<std::vector<int>> l;  // [left arrow][col j]
    std::vector<std::vector<int>> r;  // [right arrow][row i]
};

EnvArrows env_arrows(const std::shared_ptr<const Algebra>& left,
                     const std::shared_ptr<const Algebra>& right,
                     const std::shared_ptr<const Algebra>& env) {
    EnvArrows ea;
    const auto& laq = left->quiver();
    const auto& rq = right->quiver();  // op arrows carry the original names
    int nb = right->vertices();
    int na = left->vertices();
    ea.l.assign(laq.arrows.size(), std::vector<int>(nb, -1));
    ea.r.assign(rq.arrows.size(), std::vector<int>(na, -1));
    for (std::size_t a = 0; a < laq.arrows.size(); ++a)
        for (int j = 0; j < nb; ++j) {
            ea.l[a][j] = env->quiver().arrow_index("l:" + laq.arrows[a].name + ":" + std::to_string(j));
            if (ea.l[a][j] < 0) throw MoritaError("missing left arrow in the enveloping algebra");
        }
    for (std::size_t b = 0; b < rq.arrows.size(); ++b)
        for (int i = 0; i < na; ++i) {
            ea.r[b][i] = env->quiver().arrow_index("r:" + rq.arrows[b].name + ":" + std::to_string(i));
            if (ea.r[b][i] < 0) throw MoritaError("missing right arrow in the enveloping algebra");
        }
    return ea;
}

struct QuotientData {
    Mat proj;  // ambient -> quotient coordinates
    std::vector<int> comp_coords;
    int dim = 0;
};

QuotientData make_quotient(const Field& F, const Mat& raw_span, int ambient) {
    // independent columns of the span
    auto rr = rref(raw_span);
    std::vector<Mat> cols;
    for (auto pc : rr.pivots) cols.push_back(raw_span.col(pc));
    Mat span = cols.empty() ? Mat(F, ambient, 0) : Mat::hstack(cols);
    auto rrt = rref(span.transpose());
    std::vector<bool> piv(ambient, false);
    for (auto c : rrt.pivots) piv[c] = true;
    QuotientData qd;
    for (int k = 0; k < ambient; ++k)
        if (!piv[k]) qd.comp_coords.push_back(k);
    qd.dim = static_cast<int>(qd.comp_coords.size());
    Mat units(F, ambient, qd.dim);
    for (int k = 0; k < qd.dim; ++k) units.at(qd.comp_coords[k], k) = F.one();
    Mat big = Mat::hstack({span, units});
    auto sol = solve(big, Mat::identity(F, ambient));
    if (!sol) throw MoritaError("quotient projection failed");
    qd.proj = Mat(F, qd.dim, ambient);
    for (int k = 0; k < qd.dim; ++k)
        for (int j = 0; j < ambient; ++j) qd.proj.at(k, j) = sol->at(span.cols() + k, j);
    return qd;
}

Mat section_of(const Field& F, const QuotientData& qd, int ambient) {
    Mat s(F, ambient, qd.dim);
    for (int k = 0; k < qd.dim; ++k) s.at(qd.comp_coords[k], k) = F.one();
    return s;
}

}  // namespace

Bimodule make_bimodule(std::shared_ptr<const Algebra> left, std::shared_ptr<const Algebra> right,
                       Rep rep) {
    Bimodule b;
    b.left = std::move(left);
    b.right = std::move(right);
    b.env = Algebra::enveloping(b.left, b.right);
    if (rep.alg != b.env) throw MoritaError("representation is not over the enveloping algebra");
    b.rep = std::move(rep);
    validate_rep(b.rep);
    return b;
}

Bimodule identity_bimodule(const std::shared_ptr<const Algebra>& a) {
    Bimodule b;
    b.left = a;
    b.right = a;
    b.env = Algebra::enveloping(a, a);
    const Field F = a->field();
    Rep rep = zero_rep(b.env);
    const int n = a->vertices();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            rep.dims[b.env->pair_vertex(i, j)] = static_cast<int>(a->paths(j, i).size());
    EnvArrows ea = env_arrows(a, a, b.env);
    for (std::size_t al = 0; al < a->quiver().arrows.size(); ++al) {
        const auto& ar = a->quiver().arrows[al];
        int ab = a->arrow_basis_index(static_cast<int>(al));
        // left multiplication: e_i Λ e_j -> e_{i'} Λ e_j at column j
        for (int j = 0; j < n; ++j) {
            const auto& sp = a->paths(j, ar.src);
            const auto& tp = a->paths(j, ar.tgt);
            std::map<int, int> tpos;
            for (std::size_t k = 0; k < tp.size(); ++k) tpos[tp[k]] = static_cast<int>(k);
            Mat m(F, tp.size(), sp.size());
            for (std::size_t c = 0; c < sp.size(); ++c)
                for (const auto& [k, v] : a->mul_basis(ab, sp[c])) m.at(tpos.at(k), c) = v;
            rep.action[ea.l[al][j]] = std::move(m);
        }
        // right multiplication: e_i Λ e_{tgt} -> e_i Λ e_{src} at row i
        for (int i = 0; i < n; ++i) {
            const auto& sp = a->paths(ar.tgt, i);
            const auto& tp = a->paths(ar.src, i);
            std::map<int, int> tpos;
            for (std::size_t k = 0; k < tp.size(); ++k) tpos[tp[k]] = static_cast<int>(k);
            Mat m(F, tp.size(), sp.size());
            for (std::size_t c = 0; c < sp.size(); ++c)
                for (const auto& [k, v] : a->mul_basis(sp[c], ab)) m.at(tpos.at(k), c) = v;
            rep.action[ea.r[al][i]] = std::move(m);
        }
    }
    b.rep = std::move(rep);
    validate_rep(b.rep);
    return b;
}

Bimodule tensor_square_bimodule(const std::shared_ptr<const Algebra>& a) {
    Bimodule b;
    b.left = a;
    b.right = a;
    b.env = Algebra::enveloping(a, a);
    const Field F = a->field();
    const int n = a->vertices();
    std::vector<std::vector<int>> in_i(n), out_j(n);
    for (int v = 0; v < n; ++v) {
        for (int w = 0; w < n; ++w)
            for (int p : a->paths(w, v)) in_i[v].push_back(p);
        std::sort(in_i[v].begin(), in_i[v].end());
        out_j[v] = a->paths_from(v);
    }
    auto pos = [&](const std::vector<int>& list, int id) {
        for (std::size_t k = 0; k < list.size(); ++k)
            if (list[k] == id) return static_cast<int>(k);
        throw MoritaError("path lookup failed");
    };
    Rep rep = zero_rep(b.env);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            rep.dims[b.env->pair_vertex(i, j)] =
                static_cast<int>(in_i[i].size() * out_j[j].size());
    EnvArrows ea = env_arrows(a, a, b.env);
    for (std::size_t al = 0; al < a->quiver().arrows.size(); ++al) {
        const auto& ar = a->quiver().arrows[al];
        int ab = a->arrow_basis_index(static_cast<int>(al));
        for (int j = 0; j < n; ++j) {
            // alpha (p (x) q) = (alpha p) (x) q
            const auto& sin = in_i[ar.src];
            const auto& tin = in_i[ar.tgt];
            std::size_t qn = out_j[j].size();
            Mat m(F, tin.size() * qn, sin.size() * qn);
            for (std::size_t pc = 0; pc < sin.size(); ++pc)
                for (const auto& [k, v] : a->mul_basis(ab, sin[pc])) {
                    int pr = pos(tin, k);
                    for (std::size_t q = 0; q < qn; ++q)
                        m.at(pr * qn + q, pc * qn + q) = v;
                }
            rep.action[ea.l[al][j]] = std::move(m);
        }
        for (int i = 0; i < n; ++i) {
            // (p (x) q) beta = p (x) (q beta): column at tgt -> column at src
            const auto& sout = out_j[ar.tgt];
            const auto& tout = out_j[ar.src];
            std::size_t pn = in_i[i].size();
            Mat m(F, pn * tout.size(), pn * sout.size());
            for (std::size_t qc = 0; qc < sout.size(); ++qc)
                for (const auto& [k, v] : a->mul_basis(sout[qc], ab)) {
                    int qr = pos(tout, k);
                    for (std::size_t p = 0; p < pn; ++p)
                        m.at(p * tout.size() + qr, p * sout.size() + qc) = v;
                }
            rep.action[ea.r[al][i]] = std::move(m);
        }
    }
    b.rep = std::move(rep);
    validate_rep(b.rep);
    return b;
}

Bimodule twisted_identity_bimodule(const std::shared_ptr<const Algebra>& a,
                                   const std::vector<int>& vperm, const std::vector<int>& aperm) {
    const auto& q = a->quiver();
    if (static_cast<int>(vperm.size()) != a->vertices() || aperm.size() != q.arrows.size())
        throw MoritaError("permutation sizes do not match the quiver");
    for (std::size_t al = 0; al < q.arrows.size(); ++al)
        if (q.arrows[aperm[al]].src != vperm[q.arrows[al].src] ||
            q.arrows[aperm[al]].tgt != vperm[q.arrows[al].tgt])
            throw MoritaError("permutations do not define a quiver automorphism");
    for (const auto& rel : a->relations()) {
        AlgElt acc = a->zero_elt();
        for (const auto& term : rel) {
            std::vector<int> w;
            for (int arr : term.arrows) w.push_back(aperm[arr]);
            acc = a->add(acc, a->scaled(a->word_nf(w), term.coef));
        }
        if (!a->is_zero_elt(acc)) throw MoritaError("permutation does not preserve the relations");
    }
    Bimodule id = identity_bimodule(a);
    Bimodule b;
    b.left = a;
    b.right = a;
    b.env = id.env;
    const int n = a->vertices();
    Rep rep = zero_rep(b.env);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            rep.dims[b.env->pair_vertex(i, j)] = id.rep.dims[b.env->pair_vertex(i, vperm[j])];
    EnvArrows ea = env_arrows(a, a, b.env);
    for (std::size_t al = 0; al < q.arrows.size(); ++al) {
        for (int j = 0; j < n; ++j) rep.action[ea.l[al][j]] = id.rep.action[ea.l[al][vperm[j]]];
        for (int i = 0; i < n; ++i) rep.action[ea.r[al][i]] = id.rep.action[ea.r[aperm[al]][i]];
    }
    b.rep = std::move(rep);
    validate_rep(b.rep);
    return b;
}

Bimodule bimodule_direct_sum(const Bimodule& a, const Bimodule& b) {
    if (a.left != b.left || a.right != b.right)
        throw MoritaError("direct sum of mismatched bimodules");
    Bimodule out;
    out.left = a.left;
    out.right = a.right;
    out.env = a.env;
    out.rep = direct_sum({a.rep, b.rep}).sum;
    return out;
}

Rep left_restriction(const Bimodule& x) {
    const Field F = x.left->field();
    const int na = x.left->vertices(), nb = x.right->vertices();
    EnvArrows ea = env_arrows(x.left, x.right, x.env);
    Rep out = zero_rep(x.left);
    std::vector<std::vector<int>> off(na, std::vector<int>(nb, 0));
    for (int i = 0; i < na; ++i) {
        int d = 0;
        for (int j = 0; j < nb; ++j) {
            off[i][j] = d;
            d += x.rep.dims[x.env->pair_vertex(i, j)];
        }
        out.dims[i] = d;
    }
    for (std::size_t al = 0; al < x.left->quiver().arrows.size(); ++al) {
        const auto& ar = x.left->quiver().arrows[al];
        Mat m(F, out.dims[ar.tgt], out.dims[ar.src]);
        for (int j = 0; j < nb; ++j) {
            const Mat& blk = x.rep.action[ea.l[al][j]];
            for (std::size_t r = 0; r < blk.rows(); ++r)
                for (std::size_t c = 0; c < blk.cols(); ++c)
                    m.at(off[ar.tgt][j] + r, off[ar.src][j] + c) = blk.at(r, c);
        }
        out.action[al] = std::move(m);
    }
    validate_rep(out);
    return out;
}

Rep right_restriction(const Bimodule& x) {
    const Field F = x.left->field();
    auto rop = x.right->opposite();
    const int na = x.left->vertices(), nb = x.right->vertices();
    EnvArrows ea = env_arrows(x.left, x.right, x.env);
    Rep out = zero_rep(rop);
    std::vector<std::vector<int>> off(nb, std::vector<int>(na, 0));
    for (int j = 0; j < nb; ++j) {
        int d = 0;
        for (int i = 0; i < na; ++i) {
            off[j][i] = d;
            d += x.rep.dims[x.env->pair_vertex(i, j)];
        }
        out.dims[j] = d;
    }
    // op arrows are indexed like the original arrows, with src/tgt swapped
    for (std::size_t bl = 0; bl < rop->quiver().arrows.size(); ++bl) {
        const auto& ar = rop->quiver().arrows[bl];
        Mat m(F, out.dims[ar.tgt], out.dims[ar.src]);
        for (int i = 0; i < na; ++i) {
            const Mat& blk = x.rep.action[ea.r[bl][i]];
            for (std::size_t r = 0; r < blk.rows(); ++r)
                for (std::size_t c = 0; c < blk.cols(); ++c)
                    m.at(off[ar.tgt][i] + r, off[ar.src][i] + c) = blk.at(r, c);
        }
        out.action[bl] = std::move(m);
    }
    validate_rep(out);
    return out;
}

Bimodule bimodule_tensor(const Bimodule& x, const Bimodule& y) {
    if (x.right != y.left) throw MoritaError("tensor needs matching middle algebras");
    const Field F = x.left->field();
    const auto mid = x.right;
    const int na = x.left->vertices(), nm = mid->vertices(), nd = y.right->vertices();
    EnvArrows eax = env_arrows(x.left, x.right, x.env);
    EnvArrows eay = env_arrows(y.left, y.right, y.env);

    Bimodule out;
    out.left = x.left;
    out.right = y.right;
    out.env = Algebra::enveloping(out.left, out.right);

    auto xdim = [&](int i, int j) { return x.rep.dims[x.env->pair_vertex(i, j)]; };
    auto ydim = [&](int j, int k) { return y.rep.dims[y.env->pair_vertex(j, k)]; };

    struct VD {
        std::vector<int> off;
        int big = 0;
        QuotientData qd;
    };
    std::vector<std::vector<VD>> vd(na, std::vector<VD>(nd));
    for (int i = 0; i < na; ++i)
        for (int k = 0; k < nd; ++k) {
            VD& d = vd[i][k];
            d.off.assign(nm, 0);
            int dim = 0;
            for (int j = 0; j < nm; ++j) {
                d.off[j] = dim;
                dim += xdim(i, j) * ydim(j, k);
            }
            d.big = dim;
            // balancing relations along the middle arrows:
            // (x a) (x) y - x (x) (a y) for a: s -> t, x in X_(i,t), y in Y_(s,k)
            std::vector<Mat> rels;
            for (std::size_t al = 0; al < mid->quiver().arrows.size(); ++al) {
                const auto& ar = mid->quiver().arrows[al];
                int s = ar.src, t = ar.tgt;
                const Mat& xa = x.rep.action[eax.r[al][i]];  // X_(i,t) -> X_(i,s)
                const Mat& ya = y.rep.action[eay.l[al][k]];  // Y_(s,k) -> Y_(t,k)
                for (int xi = 0; xi < xdim(i, t); ++xi)
                    for (int yi = 0; yi < ydim(s, k); ++yi) {
                        Mat col(F, d.big, 1);
                        for (int r = 0; r < xdim(i, s); ++r)
                            if (!F.is_zero(xa.at(r, xi)))
                                col.at(d.off[s] + r * ydim(s, k) + yi, 0) = xa.at(r, xi);
                        for (int r = 0; r < ydim(t, k); ++r)
                            if (!F.is_zero(ya.at(r, yi)))
                                col.at(d.off[t] + xi * ydim(t, k) + r, 0) =
                                    F.sub(col.at(d.off[t] + xi * ydim(t, k) + r, 0), ya.at(r, yi));
                        if (!col.is_zero()) rels.push_back(std::move(col));
                    }
            }
            Mat span = rels.empty() ? Mat(F, d.big, 0) : Mat::hstack(rels);
            d.qd = make_quotient(F, span, d.big);
        }

    Rep rep = zero_rep(out.env);
    for (int i = 0; i < na; ++i)
        for (int k = 0; k < nd; ++k) rep.dims[out.env->pair_vertex(i, k)] = vd[i][k].qd.dim;

    EnvArrows eao = env_arrows(out.left, out.right, out.env);
    // left action: alpha on the X side, block diagonal over j
    for (std::size_t al = 0; al < x.left->quiver().arrows.size(); ++al) {
        const auto& ar = x.left->quiver().arrows[al];
        for (int k = 0; k < nd; ++k) {
            const VD& src = vd[ar.src][k];
            const VD& dst = vd[ar.tgt][k];
            Mat big(F, dst.big, src.big);
            for (int j = 0; j < nm; ++j) {
                const Mat& blk = x.rep.action[eax.l[al][j]];  // X_(src,j) -> X_(tgt,j)
                int yd = ydim(j, k);
                for (std::size_t r = 0; r < blk.rows(); ++r)
                    for (std::size_t c = 0; c < blk.cols(); ++c)
                        if (!F.is_zero(blk.at(r, c)))
                            for (int q = 0; q < yd; ++q)
                                big.at(dst.off[j] + r * yd + q, src.off[j] + c * yd + q) =
                                    blk.at(r, c);
            }
            rep.action[eao.l[al][k]] =
                dst.qd.proj.mul(big.mul(section_of(F, src.qd, src.big)));
        }
    }
    // right action: beta on the Y side
    for (std::size_t bl = 0; bl < y.right->quiver().arrows.size(); ++bl) {
        const auto& ar = y.right->quiver().arrows[bl];  // original orientation
        // right-op arrow moves column tgt -> column src
        for (int i = 0; i < na; ++i) {
            const VD& src = vd[i][ar.tgt];
            const VD& dst = vd[i][ar.src];
            Mat big(F, dst.big, src.big);
            for (int j = 0; j < nm; ++j) {
                const Mat& blk = y.rep.action[eay.r[bl][j]];  // Y_(j,tgt) -> Y_(j,src)
                int xd = xdim(i, j);
                for (std::size_t r = 0; r < blk.rows(); ++r)
                    for (std::size_t c = 0; c < blk.cols(); ++c)
                        if (!F.is_zero(blk.at(r, c)))
                            for (int p = 0; p < xd; ++p)
                                big.at(dst.off[j] + p * blk.rows() + r,
                                       src.off[j] + p * blk.cols() + c) = blk.at(r, c);
            }
            rep.action[eao.r[bl][i]] =
                dst.qd.proj.mul(big.mul(section_of(F, src.qd, src.big)));
        }
    }
    out.rep = std::move(rep);
    validate_rep(out.rep);
    return out;
}

namespace {

std::shared_ptr<const Algebra> trivial_algebra(const Field& F) {
    return Algebra::build(F, Quiver{1, {}}, {}, 1);
}

Bimodule module_as_bimodule(const std::shared_ptr<const Algebra>& lambda, const Rep& v) {
    auto triv = trivial_algebra(lambda->field());
    Bimodule b;
    b.left = lambda;
    b.right = triv;
    b.env = Algebra::enveloping(lambda, triv);
    Rep rep = zero_rep(b.env);
    for (int j = 0; j < lambda->vertices(); ++j) rep.dims[b.env->pair_vertex(j, 0)] = v.dims[j];
    EnvArrows ea = env_arrows(lambda, triv, b.env);
    for (std::size_t a = 0; a < lambda->quiver().arrows.size(); ++a)
        rep.action[ea.l[a][0]] = v.action[a];
    b.rep = std::move(rep);
    validate_rep(b.rep);
    return b;
}

Rep bimodule_as_module(const Bimodule& b) {
    // inverse of module_as_bimodule for a trivial right algebra
    if (b.right->dim() != 1) throw MoritaError("not a one-sided bimodule");
    return left_restriction(b);
}

}  // namespace

Rep transport_module(const Bimodule& x, const Rep& v) {
    if (v.alg != x.right) throw MoritaError("transport: module is not over the right algebra");
    Bimodule vb = module_as_bimodule(x.right, v);
    return bimodule_as_module(bimodule_tensor(x, vb));
}

Complex transport_complex(const Bimodule& x, const Complex& c) {
    Complex out;
    out.alg = x.left;
    for (const auto& [n, t] : c.terms) {
        Rep tt = transport_module(x, t);
        if (!tt.is_zero()) out.terms.emplace(n, std::move(tt));
    }
    // transported differentials: X (x) f, computed through the quotients
    for (const auto& [n, d] : c.diffs) {
        if (!out.term(n) || !out.term(n + 1)) continue;
        // build the big-space map and push through the projections
        Bimodule sb = module_as_bimodule(x.right, c.terms.at(n));
        Bimodule tb = module_as_bimodule(x.right, c.terms.at(n + 1));
        // recompute quotient data exactly as bimodule_tensor does
        const Field F = x.left->field();
        const int na = x.left->vertices(), nm = x.right->vertices();
        EnvArrows eax = env_arrows(x.left, x.right, x.env);
        auto xdim = [&](int i, int j) { return x.rep.dims[x.env->pair_vertex(i, j)]; };
        ModuleMap f;
        for (int i = 0; i < na; ++i) {
            auto build_qd = [&](const Rep& m) {
                int big = 0;
                std::vector<int> off(nm, 0);
                for (int j = 0; j < nm; ++j) {
                    off[j] = big;
                    big += xdim(i, j) * m.dims[j];
                }
                std::vector<Mat> rels;
                for (std::size_t al = 0; al < x.right->quiver().arrows.size(); ++al) {
                    const auto& ar = x.right->quiver().arrows[al];
                    int s = ar.src, t = ar.tgt;
                    const Mat& xa = x.rep.action[eax.r[al][i]];
                    const Mat& ya = m.action[al];
                    for (int xi = 0; xi < xdim(i, t); ++xi)
                        for (int yi = 0; yi < m.dims[s]; ++yi) {
                            Mat col(F, big, 1);
                            for (int r = 0; r < xdim(i, s); ++r)
                                if (!F.is_zero(xa.at(r, xi)))
                                    col.at(off[s] + r * m.dims[s] + yi, 0) = xa.at(r, xi);
                            for (int r = 0; r < m.dims[t]; ++r)
                                if (!F.is_zero(ya.at(r, yi)))
                                    col.at(off[t] + xi * m.dims[t] + r, 0) =
                                        F.sub(col.at(off[t] + xi * m.dims[t] + r, 0),
                                              ya.at(r, yi));
                            if (!col.is_zero()) rels.push_back(std::move(col));
                        }
                }
                Mat span = rels.empty() ? Mat(F, big, 0) : Mat::hstack(rels);
                return std::make_tuple(make_quotient(F, span, big), off, big);
            };
            auto [qs, soff, sbig] = build_qd(c.terms.at(n));
            auto [qt, toff, tbig] = build_qd(c.terms.at(n + 1));
            Mat big(F, tbig, sbig);
            for (int j = 0; j < nm; ++j) {
                const Mat& blk = d.comps[j];
                int xd = xdim(i, j);
                for (std::size_t r = 0; r < blk.rows(); ++r)
                    for (std::size_t cc = 0; cc < blk.cols(); ++cc)
                        if (!F.is_zero(blk.at(r, cc)))
                            for (int p = 0; p < xd; ++p)
                                big.at(toff[j] + p * blk.rows() + r, soff[j] + p * blk.cols() + cc) =
                                    blk.at(r, cc);
            }
            f.comps.push_back(qt.proj.mul(big.mul(section_of(F, qs, sbig))));
        }
        validate_map(*out.term(n), *out.term(n + 1), f);
        out.diffs.emplace(n, std::move(f));
    }
    validate_complex(out);
    out.normalize();
    return out;
}

Rep hom_into_left_algebra(const Bimodule& x) {
    // Hom_Γ(X, Γ) with its left module structure over the right algebra
    const Field F = x.left->field();
    const auto lam = x.right;
    const int nb = lam->vertices();
    EnvArrows ea = env_arrows(x.left, x.right, x.env);
    // column modules X e_l over Γ
    std::vector<Rep> cols;
    for (int l = 0; l < nb; ++l) {
        Rep c = zero_rep(x.left);
        for (int i = 0; i < x.left->vertices(); ++i)
            c.dims[i] = x.rep.dims[x.env->pair_vertex(i, l)];
        for (std::size_t al = 0; al < x.left->quiver().arrows.size(); ++al)
            c.action[al] = x.rep.action[ea.l[al][l]];
        validate_rep(c);
        cols.push_back(std::move(c));
    }
    Rep gamma = regular_rep(x.left).rep;
    std::vector<HomSpace> hs;
    for (int l = 0; l < nb; ++l) hs.push_back(hom_basis(cols[l], gamma));
    Rep out = zero_rep(lam);
    for (int l = 0; l < nb; ++l) out.dims[l] = hs[l].dim();
    for (std::size_t al = 0; al < lam->quiver().arrows.size(); ++al) {
        const auto& ar = lam->quiver().arrows[al];  // a: l -> l'
        // (a f)(x) = f(x a); right multiplication by a maps col(l') -> col(l)
        ModuleMap rho;
        for (int i = 0; i < x.left->vertices(); ++i) rho.comps.push_back(x.rep.action[ea.r[al][i]]);
        Mat m(F, out.dims[ar.tgt], out.dims[ar.src]);
        for (int c = 0; c < out.dims[ar.src]; ++c) {
            ModuleMap comp = map_compose(hs[ar.src].basis[c], rho);
            Mat coords = coords_in_basis(hs[ar.tgt], comp, F);
            for (int r = 0; r < out.dims[ar.tgt]; ++r) m.at(r, c) = coords.at(r, 0);
        }
        out.action[al] = std::move(m);
    }
    validate_rep(out);
    return out;
}

ProjDimResult projdim(const Rep& m, int cutoff) {
    ProjDimResult out;
    out.cutoff = cutoff;
    if (m.is_zero()) {
        out.kind = ProjDimResult::Kind::Finite;
        out.dim = 0;
        return out;
    }
    std::vector<Rep> syz{m};
    for (int i = 1; i <= cutoff + 1; ++i) {
        Rep next = syzygy(syz.back());
        if (next.is_zero()) {
            out.kind = ProjDimResult::Kind::Finite;
            out.dim = i - 1;
            return out;
        }
        for (int j = 0; j < static_cast<int>(syz.size()); ++j) {
            if (syz[j].dims != next.dims) continue;
            if (iso_verdict(syz[j], next, nullptr) == IsoVerdict::Iso) {
                out.kind = ProjDimResult::Kind::Infinite;
                out.period_start = j;
                out.period_end = i;
                return out;
            }
        }
        syz.push_back(std::move(next));
    }
    out.kind = ProjDimResult::Kind::Unknown;
    return out;
}

bool SingEquivReport::certified() const {
    return x_side_projective == Verdict::Yes && y_side_projective == Verdict::Yes &&
           xy_splits == Verdict::Yes && yx_splits == Verdict::Yes &&
           hom_x_finite == Verdict::Yes && hom_y_finite == Verdict::Yes;
}

namespace {

// splits off one copy of the identity bimodule; fills the complement
SingEquivReport::Verdict split_identity(const Bimodule& t,
                                        const std::shared_ptr<const Algebra>& gamma, int cutoff,
                                        std::optional<Bimodule>* complement,
                                        ProjDimResult* pdim) {
    Bimodule id = identity_bimodule(gamma);
    auto parts = decompose(t.rep);
    int id_at = -1;
    for (std::size_t p = 0; p < parts.size(); ++p)
        if (parts[p].first.dims == id.rep.dims &&
            iso_verdict(parts[p].first, id.rep, nullptr) == IsoVerdict::Iso) {
            id_at = static_cast<int>(p);
            break;
        }
    if (id_at < 0) return SingEquivReport::Verdict::No;
    std::vector<Rep> rest;
    for (std::size_t p = 0; p < parts.size(); ++p) {
        int mult = parts[p].second - (static_cast<int>(p) == id_at ? 1 : 0);
        for (int c = 0; c < mult; ++c) rest.push_back(parts[p].first);
    }
    Rep q = rest.empty() ? zero_rep(t.env) : direct_sum(rest).sum;
    Bimodule qb;
    qb.left = t.left;
    qb.right = t.right;
    qb.env = t.env;
    qb.rep = q;
    *complement = qb;
    *pdim = projdim(q, cutoff);
    if (pdim->kind == ProjDimResult::Kind::Finite) return SingEquivReport::Verdict::Yes;
    if (pdim->kind == ProjDimResult::Kind::Infinite) return SingEquivReport::Verdict::No;
    return SingEquivReport::Verdict::Unknown;
}

SingEquivReport::Verdict from_pd(const ProjDimResult& r) {
    if (r.kind == ProjDimResult::Kind::Finite) return SingEquivReport::Verdict::Yes;
    if (r.kind == ProjDimResult::Kind::Infinite) return SingEquivReport::Verdict::No;
    return SingEquivReport::Verdict::Unknown;
}

}  // namespace

SingEquivReport check_singular_equivalence(const Bimodule& x, const Bimodule& y, int cutoff) {
    if (x.right != y.left || y.right != x.left)
        throw MoritaError("bimodule sides do not match for a singular equivalence");
    SingEquivReport rep;
    rep.x_side_projective = (is_projective(left_restriction(x)) &&
                             is_projective(right_restriction(x)))
                                ? SingEquivReport::Verdict::Yes
                                : SingEquivReport::Verdict::No;
    rep.y_side_projective = (is_projective(left_restriction(y)) &&
                             is_projective(right_restriction(y)))
                                ? SingEquivReport::Verdict::Yes
                                : SingEquivReport::Verdict::No;
    Bimodule xy = bimodule_tensor(x, y);
    Bimodule yx = bimodule_tensor(y, x);
    rep.xy_splits = split_identity(xy, x.left, cutoff, &rep.q_complement, &rep.q_projdim);
    rep.yx_splits = split_identity(yx, x.right, cutoff, &rep.p_complement, &rep.p_projdim);
    rep.hom_x_projdim = projdim(hom_into_left_algebra(x), cutoff);
    rep.hom_y_projdim = projdim(hom_into_left_algebra(y), cutoff);
    rep.hom_x_finite = from_pd(rep.hom_x_projdim);
    rep.hom_y_finite = from_pd(rep.hom_y_projdim);
    return rep;
}

bool verify_p_tensor_projective(const Bimodule& p, const Rep& v) {
    if (p.rep.is_zero()) return true;
    Rep t = transport_module(p, v);
    return is_projective(t);
}

namespace {

bool presentations_match(const VersalPresentation& a, const VersalPresentation& b) {
    if (a.vars != b.vars || a.order != b.order) return false;
    const int r = a.vars;
    if (r == 0) return a.relations.empty() == b.relations.empty();
    const Field F = a.ring->field();
    auto ring = std::make_shared<PolyRing>(F, a.var_names, a.order);
    auto to_ring = [&](const std::vector<Poly>& rels, const std::vector<std::string>& names) {
        std::vector<Poly> out;
        for (const auto& rel : rels) {
            Poly q = zero_poly(ring);
            for (int j = 0; j < rel.ring->count(); ++j) q.c[ring->mono_index(rel.ring->monomials()[j])] = rel.c[j];
            out.push_back(std::move(q));
        }
        (void)names;
        return out;
    };
    std::vector<Poly> ra = to_ring(a.relations, a.var_names);
    std::vector<Poly> rb = to_ring(b.relations, b.var_names);
    ArtinAlgebra B = ArtinAlgebra::quotient(ring, rb);
    // substitute t_i -> sum_j T_{ji} t_j in the relations of a
    auto substituted = [&](const Mat& T) {
        std::vector<Poly> out;
        for (const auto& rel : ra) {
            Poly q = zero_poly(ring);
            for (int mi = 0; mi < ring->count(); ++mi) {
                if (F.is_zero(rel.c[mi])) continue;
                // expand the monomial under the substitution
                std::vector<std::pair<Monomial, Scalar>> terms{{Monomial{std::vector<int>(r, 0)}, rel.c[mi]}};
                const auto& exp = ring->monomials()[mi].exp;
                for (int v = 0; v < r; ++v)
                    for (int e = 0; e < exp[v]; ++e) {
                        std::vector<std::pair<Monomial, Scalar>> next;
                        for (const auto& [mono, coef] : terms)
                            for (int w = 0; w < r; ++w) {
                                if (F.is_zero(T.at(w, v))) continue;
                                Monomial m2 = mono;
                                m2.exp[w] += 1;
                                if (m2.degree() > ring->order()) continue;
                                next.emplace_back(m2, F.mul(coef, T.at(w, v)));
                            }
                        terms = std::move(next);
                    }
                for (const auto& [mono, coef] : terms) {
                    int id = ring->mono_index(mono);
                    if (id >= 0) q.c[id] = F.add(q.c[id], coef);
                }
            }
            out.push_back(std::move(q));
        }
        return out;
    };
    auto ideals_equal = [&](const ArtinAlgebra& u, const ArtinAlgebra& v) {
        if (u.dim() != v.dim() || u.qbasis() != v.qbasis()) return false;
        auto ru = u.ideal_rows(), rv = v.ideal_rows();
        if (ru.size() != rv.size()) return false;
        for (std::size_t i = 0; i < ru.size(); ++i)
            for (std::size_t j = 0; j < ru[i].c.size(); ++j)
                if (!F.eq(ru[i].c[j], rv[i].c[j])) return false;
        return true;
    };
    // search over invertible substitutions with small entries
    const std::uint32_t p = F.characteristic();
    std::vector<long> entries;
    if (p != 0)
        for (std::uint32_t v = 0; v < p; ++v) entries.push_back(static_cast<long>(v));
    else
        for (long v = -2; v <= 2; ++v) entries.push_back(v);
    const int cells = r * r;
    double total = 1;
    for (int i = 0; i < cells; ++i) total *= static_cast<double>(entries.size());
    if (total > 65536) total = 65536;  // cap the sweep deterministically
    std::vector<std::size_t> idx(cells, 0);
    long tried = 0;
    while (tried < static_cast<long>(total)) {
        Mat T(F, r, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) T.at(i, j) = F.from_long(entries[idx[i * r + j]]);
        if (invert(T)) {
            ArtinAlgebra A = ArtinAlgebra::quotient(ring, substituted(T));
            if (ideals_equal(A, B)) return true;
        }
        int k = 0;
        while (k < cells && ++idx[k] == entries.size()) idx[k++] = 0;
        if (k == cells) break;
        ++tried;
    }
    return false;
}

}  // namespace

bool verify_transport_invariance(const Bimodule& x, const Rep& v, int order) {
    VersalPresentation a = versal_presentation(v, order);
    Rep tv = transport_module(x, v);
    VersalPresentation b = versal_presentation(tv, order);
    return presentations_match(a, b);
}

bool verify_transport_invariance_complex(const Bimodule& x, const Complex& v, int order) {
    VersalPresentation a = versal_presentation_complex(v, order);
    Complex tv = transport_complex(x, v);
    VersalPresentation b = versal_presentation_complex(tv, order);
    return presentations_match(a, b);
}

}  // namespace gpd
