#include "gpd/algebra.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace gpd {

void Quiver::validate() const {
    if (vertices <= 0) throw AlgebraError("quiver needs at least one vertex");
    std::set<std::string> names;
    for (const auto& a : arrows) {
        if (a.name.empty()) throw AlgebraError("arrow with empty name");
        if (!names.insert(a.name).second) throw AlgebraError("duplicate arrow name: " + a.name);
        if (a.src < 0 || a.src >= vertices || a.tgt < 0 || a.tgt >= vertices)
            throw AlgebraError("arrow endpoint out of range: " + a.name);
    }
}

int Quiver::arrow_index(const std::string& name) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].name == name) return static_cast<int>(i);
    return -1;
}

namespace {

struct PathRec {
    int src, tgt;
    std::vector<int> arrows;
};

// Deterministic pseudo-random stream for sampled checks.
struct Mix {
    std::uint64_t s;
    std::uint64_t next() {
        s += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

constexpr std::size_t kPathLimit = 2000000;

}  // namespace

std::shared_ptr<const Algebra> Algebra::build(Field field, Quiver quiver,
                                              std::vector<Relation> relations, int loewy_bound) {
    quiver.validate();
    if (loewy_bound < 1) throw AlgebraError("loewy bound must be >= 1");
    const int L = loewy_bound;
    const int nv = quiver.vertices;

    for (const auto& rel : relations) {
        if (rel.empty()) throw AlgebraError("empty relation");
        const auto& first = rel.front();
        if (first.arrows.size() < 2)
            throw AlgebraError("relations must lie in the square of the arrow ideal");
        auto src_of = [&](const std::vector<int>& w) { return quiver.arrows.at(w.front()).src; };
        auto tgt_of = [&](const std::vector<int>& w) { return quiver.arrows.at(w.back()).tgt; };
        for (const auto& t : rel) {
            if (t.arrows.size() != first.arrows.size())
                throw AlgebraError("inhomogeneous relation (mixed path lengths) unsupported");
            for (std::size_t i = 0; i + 1 < t.arrows.size(); ++i)
                if (quiver.arrows.at(t.arrows[i]).tgt != quiver.arrows.at(t.arrows[i + 1]).src)
                    throw AlgebraError("non-composable path in relation");
            if (src_of(t.arrows) != src_of(first.arrows) || tgt_of(t.arrows) != tgt_of(first.arrows))
                throw AlgebraError("relation mixes paths with different endpoints");
        }
    }

    // Enumerate paths degree by degree.
    std::vector<std::vector<PathRec>> paths(L + 1);
    std::vector<std::map<std::vector<int>, int>> path_index(L + 1);
    for (int v = 0; v < nv; ++v) paths[0].push_back({v, v, {}});
    std::size_t total = nv;
    for (int d = 1; d <= L; ++d) {
        for (int pi = 0; pi < static_cast<int>(paths[d - 1].size()); ++pi) {
            const auto p = paths[d - 1][pi];
            for (int ai = 0; ai < static_cast<int>(quiver.arrows.size()); ++ai) {
                if (quiver.arrows[ai].src != p.tgt) continue;
                PathRec q{p.src, quiver.arrows[ai].tgt, p.arrows};
                q.arrows.push_back(ai);
                path_index[d][q.arrows] = static_cast<int>(paths[d].size());
                paths[d].push_back(std::move(q));
                if (++total > kPathLimit)
                    throw AlgebraError("path explosion; use a direct constructor for this algebra");
            }
        }
    }

    // Close the relation ideal degree by degree: span at degree d is spanned
    // by arrow * (span at d-1), (span at d-1) * arrow and the degree-d
    // generators. Kept as rref rows over the degree-d path space.
    std::vector<Mat> ideal_rref(L + 1, Mat(field, 0, 0));
    std::vector<std::vector<std::size_t>> ideal_pivots(L + 1);
    auto reduce_in_degree = [&](int d, std::vector<Scalar>& vec) {
        const Mat& R = ideal_rref[d];
        const auto& piv = ideal_pivots[d];
        for (std::size_t r = 0; r < piv.size(); ++r) {
            const Scalar c = vec[piv[r]];
            if (field.is_zero(c)) continue;
            for (std::size_t j = 0; j < vec.size(); ++j)
                vec[j] = field.sub(vec[j], field.mul(c, R.at(r, j)));
        }
    };

    for (int d = 2; d <= L; ++d) {
        std::vector<std::vector<Scalar>> rows;
        auto push_row = [&](std::vector<Scalar> v) {
            bool nz = false;
            for (const auto& x : v)
                if (!field.is_zero(x)) {
                    nz = true;
                    break;
                }
            if (nz) rows.push_back(std::move(v));
        };
        // extend previous degree's ideal rows on both sides
        const Mat& prev = ideal_rref[d - 1];
        for (std::size_t r = 0; r < ideal_pivots[d - 1].size(); ++r) {
            for (int ai = 0; ai < static_cast<int>(quiver.arrows.size()); ++ai) {
                std::vector<Scalar> left(paths[d].size(), field.zero());
                std::vector<Scalar> right(paths[d].size(), field.zero());
                bool any_l = false, any_r = false;
                for (std::size_t c = 0; c < paths[d - 1].size(); ++c) {
                    if (field.is_zero(prev.at(r, c))) continue;
                    const auto& p = paths[d - 1][c];
                    if (quiver.arrows[ai].src == p.tgt) {  // arrow after p
                        auto w = p.arrows;
                        w.push_back(ai);
                        left[path_index[d].at(w)] = field.add(left[path_index[d].at(w)], prev.at(r, c));
                        any_l = true;
                    }
                    if (quiver.arrows[ai].tgt == p.src) {  // arrow before p
                        std::vector<int> w{ai};
                        w.insert(w.end(), p.arrows.begin(), p.arrows.end());
                        right[path_index[d].at(w)] =
                            field.add(right[path_index[d].at(w)], prev.at(r, c));
                        any_r = true;
                    }
                }
                if (any_l) push_row(std::move(left));
                if (any_r) push_row(std::move(right));
            }
        }
        for (const auto& rel : relations) {
            if (static_cast<int>(rel.front().arrows.size()) != d) continue;
            std::vector<Scalar> v(paths[d].size(), field.zero());
            for (const auto& t : rel) {
                int idx = path_index[d].at(t.arrows);
                v[idx] = field.add(v[idx], t.coef);
            }
            push_row(std::move(v));
        }
        if (!rows.empty()) {
            Mat m(field, rows.size(), paths[d].size());
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
            auto rr = rref(m);
            // keep only the nonzero rows
            Mat rm(field, rr.pivots.size(), paths[d].size());
            for (std::size_t i = 0; i < rr.pivots.size(); ++i)
                for (std::size_t j = 0; j < paths[d].size(); ++j) rm.at(i, j) = rr.r.at(i, j);
            ideal_rref[d] = std::move(rm);
            ideal_pivots[d] = std::move(rr.pivots);
        } else {
            ideal_rref[d] = Mat(field, 0, paths[d].size());
        }
    }

    // Admissibility: every degree-L path must reduce to zero.
    if (!paths[L].empty() && ideal_pivots[L].size() != paths[L].size()) {
        std::vector<bool> is_piv(paths[L].size(), false);
        for (auto c : ideal_pivots[L]) is_piv[c] = true;
        for (std::size_t c = 0; c < paths[L].size(); ++c)
            if (!is_piv[c]) {
                std::ostringstream os;
                os << "ideal is not admissible at the loewy bound: path";
                for (auto it = paths[L][c].arrows.rbegin(); it != paths[L][c].arrows.rend(); ++it)
                    os << " " << quiver.arrows[*it].name;
                os << " survives";
                throw AlgebraError(os.str());
            }
    }

    auto alg = std::shared_ptr<Algebra>(new Algebra());
    alg->field_ = field;
    alg->quiver_ = std::move(quiver);
    alg->relations_ = std::move(relations);
    alg->loewy_bound_ = L;

    // Basis: non-pivot paths, degree ascending. Remember positions.
    std::vector<std::vector<int>> basis_pos(L);  // degree -> path idx -> basis idx or -1
    for (int d = 0; d < L; ++d) {
        basis_pos[d].assign(paths[d].size(), -1);
        std::vector<bool> is_piv(paths[d].size(), false);
        for (auto c : ideal_pivots[d]) is_piv[c] = true;
        for (std::size_t c = 0; c < paths[d].size(); ++c) {
            if (is_piv[c]) continue;
            basis_pos[d][c] = static_cast<int>(alg->basis_.size());
            alg->basis_.push_back({paths[d][c].src, paths[d][c].tgt, paths[d][c].arrows});
        }
    }

    // Normal form of a degree-d path as a sparse combination of basis paths.
    auto nf_of_path = [&](int d, int idx) {
        SparseElt out;
        std::vector<Scalar> v(paths[d].size(), field.zero());
        v[idx] = field.one();
        reduce_in_degree(d, v);
        for (std::size_t c = 0; c < v.size(); ++c)
            if (!field.is_zero(v[c])) out.emplace_back(basis_pos[d][c], v[c]);
        return out;
    };

    // Multiplication table.
    const int dim = alg->dim();
    alg->table_.assign(static_cast<std::size_t>(dim) * dim, SparseElt{});
    for (int i = 0; i < dim; ++i) {
        const auto& p = alg->basis_[i];
        for (int j = 0; j < dim; ++j) {
            const auto& q = alg->basis_[j];
            if (q.tgt != p.src) continue;  // p*q applies q first
            int d = static_cast<int>(p.arrows.size() + q.arrows.size());
            if (d >= L) continue;
            std::vector<int> w = q.arrows;
            w.insert(w.end(), p.arrows.begin(), p.arrows.end());
            int idx = d == 0 ? p.src : path_index[d].at(w);
            alg->table_[static_cast<std::size_t>(i) * dim + j] = nf_of_path(d, idx);
        }
    }

    alg->index_basis();
    return alg;
}

void Algebra::index_basis() {
    const int nv = vertices();
    paths_.assign(static_cast<std::size_t>(nv) * nv, {});
    paths_from_.assign(nv, {});
    for (int b = 0; b < dim(); ++b) {
        paths_[basis_[b].src * nv + basis_[b].tgt].push_back(b);
        paths_from_[basis_[b].src].push_back(b);
    }
    arrow_basis_.assign(quiver_.arrows.size(), -1);
    idem_basis_.assign(nv, -1);
    for (int b = 0; b < dim(); ++b) {
        if (basis_[b].arrows.size() == 1) arrow_basis_[basis_[b].arrows[0]] = b;
        if (basis_[b].arrows.empty()) idem_basis_[basis_[b].src] = b;
    }
    for (std::size_t a = 0; a < quiver_.arrows.size(); ++a)
        if (arrow_basis_[a] < 0) throw AlgebraError("arrow vanishes in the quotient: " + quiver_.arrows[a].name);
    for (int v = 0; v < nv; ++v)
        if (idem_basis_[v] < 0) throw AlgebraError("missing vertex idempotent in basis");
}

std::shared_ptr<const Algebra> Algebra::nakayama(Field field, int n, const std::vector<int>& c) {
    if (n < 1 || static_cast<int>(c.size()) != n)
        throw AlgebraError("admissible sequence length must equal the number of vertices");
    for (int i = 0; i < n; ++i) {
        if (c[i] < 2) throw AlgebraError("admissible sequence entries must be >= 2");
        if (c[(i + 1) % n] < c[i] - 1)
            throw AlgebraError("not an admissible sequence: c[i+1] >= c[i]-1 fails");
    }
    Quiver q;
    q.vertices = n;
    for (int i = 0; i < n; ++i) q.arrows.push_back({"g" + std::to_string(i + 1), i, (i + 1) % n});
    std::vector<Relation> rels;
    int L = *std::max_element(c.begin(), c.end());
    for (int v = 0; v < n; ++v) {
        RelTerm t;
        t.coef = field.one();
        for (int k = 0; k < c[v]; ++k) t.arrows.push_back((v + k) % n);
        rels.push_back({std::move(t)});
    }
    return build(field, std::move(q), std::move(rels), L);
}

const SparseElt& Algebra::mul_basis(int p, int q) const {
    return table_[static_cast<std::size_t>(p) * dim() + q];
}

SparseElt Algebra::mul_sparse(const SparseElt& x, const SparseElt& y) const {
    std::map<int, Scalar> acc;
    for (const auto& [i, xi] : x)
        for (const auto& [j, yj] : y) {
            const auto& cell = mul_basis(i, j);
            if (cell.empty()) continue;
            Scalar c = field_.mul(xi, yj);
            for (const auto& [k, v] : cell) {
                auto it = acc.find(k);
                if (it == acc.end())
                    acc.emplace(k, field_.mul(c, v));
                else
                    it->second = field_.add(it->second, field_.mul(c, v));
            }
        }
    SparseElt out;
    for (auto& [k, v] : acc)
        if (!field_.is_zero(v)) out.emplace_back(k, v);
    return out;
}

AlgElt Algebra::mul(const AlgElt& x, const AlgElt& y) const {
    AlgElt out = zero_elt();
    std::vector<int> xs, ys;
    for (int i = 0; i < dim(); ++i) {
        if (!field_.is_zero(x[i])) xs.push_back(i);
        if (!field_.is_zero(y[i])) ys.push_back(i);
    }
    for (int i : xs)
        for (int j : ys) {
            const auto& cell = mul_basis(i, j);
            if (cell.empty()) continue;
            Scalar c = field_.mul(x[i], y[j]);
            for (const auto& [k, v] : cell) out[k] = field_.add(out[k], field_.mul(c, v));
        }
    return out;
}

AlgElt Algebra::add(const AlgElt& x, const AlgElt& y) const {
    AlgElt out(x);
    for (int i = 0; i < dim(); ++i) out[i] = field_.add(out[i], y[i]);
    return out;
}

AlgElt Algebra::scaled(const AlgElt& x, const Scalar& c) const {
    AlgElt out(x);
    for (auto& v : out) v = field_.mul(v, c);
    return out;
}

AlgElt Algebra::unit() const {
    AlgElt e = zero_elt();
    for (int v = 0; v < vertices(); ++v) e[idem_basis_[v]] = field_.one();
    return e;
}

AlgElt Algebra::idempotent(int v) const {
    AlgElt e = zero_elt();
    e[idem_basis_[v]] = field_.one();
    return e;
}

bool Algebra::is_zero_elt(const AlgElt& x) const {
    for (const auto& v : x)
        if (!field_.is_zero(v)) return false;
    return true;
}

std::string Algebra::path_name(int b) const {
    const auto& p = basis_[b];
    if (p.arrows.empty()) return "e" + std::to_string(p.src);
    std::string s;
    for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
        if (!s.empty()) s += "*";
        s += quiver_.arrows[*it].name;
    }
    return s;
}

std::string Algebra::elt_to_string(const AlgElt& x) const {
    std::string s;
    for (int i = 0; i < dim(); ++i) {
        if (field_.is_zero(x[i])) continue;
        if (!s.empty()) s += " + ";
        if (!field_.is_one(x[i])) s += field_.to_string(x[i]) + "*";
        s += path_name(i);
    }
    return s.empty() ? "0" : s;
}

AlgElt Algebra::word_nf(const std::vector<int>& w) const {
    if (w.empty()) throw AlgebraError("word_nf needs a nonempty word");
    SparseElt acc{{arrow_basis_[w[0]], field_.one()}};
    for (std::size_t i = 1; i < w.size() && !acc.empty(); ++i) {
        SparseElt a{{arrow_basis_[w[i]], field_.one()}};
        acc = mul_sparse(a, acc);  // next arrow applied after the accumulated word
    }
    AlgElt out = zero_elt();
    for (const auto& [k, v] : acc) out[k] = v;
    return out;
}

AlgElt Algebra::corner(const AlgElt& x, int i, int j) const {
    AlgElt out = zero_elt();
    for (int b : paths(j, i)) out[b] = x[b];
    return out;
}

Scalar Algebra::corner_unit_part(const AlgElt& x, int v) const { return x[idempotent_index(v)]; }

std::optional<AlgElt> Algebra::corner_inverse(const AlgElt& x, int v) const {
    Scalar c = corner_unit_part(x, v);
    if (field_.is_zero(c)) return std::nullopt;
    Scalar cinv = field_.inv(c);
    // x = c (e_v + s) with s nilpotent; invert by the finite Neumann series.
    AlgElt s = scaled(x, cinv);
    s[idempotent_index(v)] = field_.zero();
    AlgElt acc = idempotent(v);
    AlgElt pw = idempotent(v);
    for (int k = 1; k < loewy_bound_; ++k) {
        pw = mul(pw, s);
        if (is_zero_elt(pw)) break;
        acc = add(acc, scaled(pw, field_.from_long(k % 2 ? -1 : 1)));
    }
    return scaled(acc, cinv);
}

void Algebra::check() const {
    SparseElt e;
    for (int v = 0; v < vertices(); ++v) e.emplace_back(idem_basis_[v], field_.one());
    std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (int b = 0; b < dim(); ++b) {
        SparseElt x{{b, field_.one()}};
        if (mul_sparse(e, x) != x || mul_sparse(x, e) != x)
            throw AlgebraError("identity fails on basis");
    }
    // typing of the table
    for (int i = 0; i < dim(); ++i)
        for (int j = 0; j < dim(); ++j) {
            if (basis_[j].tgt != basis_[i].src && !mul_basis(i, j).empty())
                throw AlgebraError("table entry for non-composable pair");
            for (const auto& [k, v] : mul_basis(i, j)) {
                (void)v;
                if (basis_[k].src != basis_[j].src || basis_[k].tgt != basis_[i].tgt)
                    throw AlgebraError("table entry with wrong endpoints");
            }
        }
    // associativity
    auto basis_elt = [&](int b) { return SparseElt{{b, field_.one()}}; };
    auto test_triple = [&](int i, int j, int k) {
        SparseElt l = mul_sparse(mul_sparse(basis_elt(i), basis_elt(j)), basis_elt(k));
        SparseElt r = mul_sparse(basis_elt(i), mul_sparse(basis_elt(j), basis_elt(k)));
        if (l != r) throw AlgebraError("associativity fails on basis triple");
    };
    if (dim() <= 30) {
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < dim(); ++j)
                for (int k = 0; k < dim(); ++k) test_triple(i, j, k);
    } else {
        Mix rng{static_cast<std::uint64_t>(dim())};
        for (int t = 0; t < 20000; ++t)
            test_triple(rng.next() % dim(), rng.next() % dim(), rng.next() % dim());
    }
    // nilpotency of words at the loewy bound
    const std::size_t na = quiver_.arrows.size();
    if (na > 0) {
        double words = 1;
        for (int i = 0; i < loewy_bound_; ++i) words *= static_cast<double>(na);
        if (words <= 20000) {
            std::vector<int> w(loewy_bound_, 0);
            while (true) {
                bool composable = true;
                for (int i = 0; i + 1 < loewy_bound_ && composable; ++i)
                    composable = quiver_.arrows[w[i]].tgt == quiver_.arrows[w[i + 1]].src;
                if (composable && !is_zero_elt(word_nf(w)))
                    throw AlgebraError("loewy-bound word survives");
                std::size_t k = 0;
                while (k < w.size() && ++w[k] == static_cast<int>(na)) w[k++] = 0;
                if (k == w.size()) break;
            }
        } else {
            Mix rng{0xabcdef};
            for (int t = 0; t < 2000; ++t) {
                // random composable word
                std::vector<int> w;
                int a = static_cast<int>(rng.next() % na);
                w.push_back(a);
                bool ok = true;
                for (int i = 1; i < loewy_bound_; ++i) {
                    std::vector<int> nexts;
                    for (int b = 0; b < static_cast<int>(na); ++b)
                        if (quiver_.arrows[b].src == quiver_.arrows[w.back()].tgt) nexts.push_back(b);
                    if (nexts.empty()) {
                        ok = false;
                        break;
                    }
                    w.push_back(nexts[rng.next() % nexts.size()]);
                }
                if (ok && !is_zero_elt(word_nf(w))) throw AlgebraError("loewy-bound word survives");
            }
        }
    }
}

std::shared_ptr<Algebra> Algebra::make_opposite(const Algebra& a) {
    auto op = std::shared_ptr<Algebra>(new Algebra());
    op->field_ = a.field_;
    op->quiver_.vertices = a.quiver_.vertices;
    for (const auto& ar : a.quiver_.arrows) op->quiver_.arrows.push_back({ar.name, ar.tgt, ar.src});
    for (const auto& rel : a.relations_) {
        Relation r;
        for (const auto& t : rel) {
            RelTerm nt;
            nt.coef = t.coef;
            nt.arrows.assign(t.arrows.rbegin(), t.arrows.rend());
            r.push_back(std::move(nt));
        }
        op->relations_.push_back(std::move(r));
    }
    op->loewy_bound_ = a.loewy_bound_;
    for (const auto& p : a.basis_)
        op->basis_.push_back({p.tgt, p.src, std::vector<int>(p.arrows.rbegin(), p.arrows.rend())});
    const int dim = a.dim();
    op->table_.assign(static_cast<std::size_t>(dim) * dim, SparseElt{});
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            op->table_[static_cast<std::size_t>(i) * dim + j] =
                a.table_[static_cast<std::size_t>(j) * dim + i];
    op->index_basis();
    return op;
}

std::shared_ptr<const Algebra> Algebra::opposite() const {
    if (auto c = opposite_cache_.lock()) return c;
    auto self = shared_from_this();
    auto op = make_opposite(*this);
    op->opposite_cache_ = self;
    opposite_cache_ = op;
    return op;
}

int Algebra::pair_vertex(int i, int j) const {
    if (!product_) throw AlgebraError("not an enveloping algebra");
    return i * product_->right_op->vertices() + j;
}

std::pair<int, int> Algebra::vertex_pair(int v) const {
    if (!product_) throw AlgebraError("not an enveloping algebra");
    int nb = product_->right_op->vertices();
    return {v / nb, v % nb};
}

int Algebra::pair_basis(int p, int q) const {
    if (!product_) throw AlgebraError("not an enveloping algebra");
    return p * product_->right_op->dim() + q;
}

std::shared_ptr<const Algebra> Algebra::enveloping(const std::shared_ptr<const Algebra>& a,
                                                   const std::shared_ptr<const Algebra>& b) {
    if (a->field() != b->field()) throw AlgebraError("enveloping algebra needs a common field");
    if (auto it = a->env_cache_.find(b.get()); it != a->env_cache_.end())
        if (auto cached = it->second.lock()) return cached;
    auto bop = b->opposite();
    const Field F = a->field();
    const int na = a->vertices(), nb = bop->vertices();

    auto env = std::shared_ptr<Algebra>(new Algebra());
    env->field_ = F;
    env->quiver_.vertices = na * nb;
    // left arrows at each column, then right arrows at each row
    std::vector<std::vector<int>> larrow(a->quiver().arrows.size(), std::vector<int>(nb));
    std::vector<std::vector<int>> rarrow(bop->quiver().arrows.size(), std::vector<int>(na));
    for (std::size_t ai = 0; ai < a->quiver().arrows.size(); ++ai) {
        const auto& ar = a->quiver().arrows[ai];
        for (int j = 0; j < nb; ++j) {
            larrow[ai][j] = static_cast<int>(env->quiver_.arrows.size());
            env->quiver_.arrows.push_back(
                {"l:" + ar.name + ":" + std::to_string(j), ar.src * nb + j, ar.tgt * nb + j});
        }
    }
    for (std::size_t bi = 0; bi < bop->quiver().arrows.size(); ++bi) {
        const auto& br = bop->quiver().arrows[bi];
        for (int i = 0; i < na; ++i) {
            rarrow[bi][i] = static_cast<int>(env->quiver_.arrows.size());
            env->quiver_.arrows.push_back(
                {"r:" + br.name + ":" + std::to_string(i), i * nb + br.src, i * nb + br.tgt});
        }
    }

    // relations: lifted from both factors plus commutativity squares
    for (const auto& rel : a->relations()) {
        for (int j = 0; j < nb; ++j) {
            Relation r;
            for (const auto& t : rel) {
                RelTerm nt;
                nt.coef = t.coef;
                for (int ar : t.arrows) nt.arrows.push_back(larrow[ar][j]);
                r.push_back(std::move(nt));
            }
            env->relations_.push_back(std::move(r));
        }
    }
    for (const auto& rel : bop->relations()) {
        for (int i = 0; i < na; ++i) {
            Relation r;
            for (const auto& t : rel) {
                RelTerm nt;
                nt.coef = t.coef;
                for (int br : t.arrows) nt.arrows.push_back(rarrow[br][i]);
                r.push_back(std::move(nt));
            }
            env->relations_.push_back(std::move(r));
        }
    }
    for (std::size_t ai = 0; ai < a->quiver().arrows.size(); ++ai)
        for (std::size_t bi = 0; bi < bop->quiver().arrows.size(); ++bi) {
            const auto& ar = a->quiver().arrows[ai];
            const auto& br = bop->quiver().arrows[bi];
            RelTerm t1, t2;
            t1.coef = F.one();
            t1.arrows = {rarrow[bi][ar.src], larrow[ai][br.tgt]};
            t2.coef = F.neg(F.one());
            t2.arrows = {larrow[ai][br.src], rarrow[bi][ar.tgt]};
            env->relations_.push_back({std::move(t1), std::move(t2)});
        }

    env->loewy_bound_ = a->loewy_bound() + bop->loewy_bound() - 1;

    // basis: pairs (p, q), flat index p * dim(bop) + q
    const int da = a->dim(), db = bop->dim();
    for (int p = 0; p < da; ++p)
        for (int q = 0; q < db; ++q) {
            const auto& bp = a->basis()[p];
            const auto& bq = bop->basis()[q];
            Algebra::BasisPath path;
            path.src = bp.src * nb + bq.src;
            path.tgt = bp.tgt * nb + bq.tgt;
            for (int br : bq.arrows) path.arrows.push_back(rarrow[br][bp.src]);
            for (int ar : bp.arrows) path.arrows.push_back(larrow[ar][bq.tgt]);
            env->basis_.push_back(std::move(path));
        }

    const int dim = da * db;
    env->table_.assign(static_cast<std::size_t>(dim) * dim, SparseElt{});
    for (int p = 0; p < da; ++p)
        for (int q = 0; q < db; ++q)
            for (int p2 = 0; p2 < da; ++p2)
                for (int q2 = 0; q2 < db; ++q2) {
                    const auto& mp = a->mul_basis(p, p2);
                    if (mp.empty()) continue;
                    const auto& mq = bop->mul_basis(q, q2);
                    if (mq.empty()) continue;
                    SparseElt out;
                    for (const auto& [k1, v1] : mp)
                        for (const auto& [k2, v2] : mq)
                            out.emplace_back(k1 * db + k2, F.mul(v1, v2));
                    env->table_[static_cast<std::size_t>(p * db + q) * dim + (p2 * db + q2)] =
                        std::move(out);
                }

    env->product_ = ProductInfo{a, bop};
    env->index_basis();
    a->env_cache_[b.get()] = env;
    return env;
}

}  // namespace gpd
