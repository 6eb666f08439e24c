#include "gpd/deform.hpp"
#include <cctype>

#include <algorithm>
#include <functional>
#include <sstream>

namespace gpd {

namespace {

bool grlex_less(const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.exp > b.exp;  // within a degree: lexicographically larger exponent first... reversed
}

}  // namespace

PolyRing::PolyRing(Field f, std::vector<std::string> vars, int order)
    : field_(f), vars_(std::move(vars)), order_(order) {
    if (order_ < 0) throw DeformError("truncation order must be >= 0");
    // enumerate exponent vectors of total degree <= order
    std::vector<int> exp(vars_.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i == vars_.size()) {
            monos_.push_back({exp});
            return;
        }
        for (int e = 0; e <= left; ++e) {
            exp[i] = e;
            rec(i + 1, left - e);
        }
        exp[i] = 0;
    };
    rec(0, order_);
    std::sort(monos_.begin(), monos_.end(), grlex_less);
    for (std::size_t i = 0; i < monos_.size(); ++i) index_[monos_[i].exp] = static_cast<int>(i);
}

int PolyRing::mono_index(const Monomial& m) const {
    auto it = index_.find(m.exp);
    return it == index_.end() ? -1 : it->second;
}

int PolyRing::mono_mul(int i, int j) const {
    Monomial m;
    m.exp.resize(vars_.size());
    for (std::size_t k = 0; k < vars_.size(); ++k)
        m.exp[k] = monos_[i].exp[k] + monos_[j].exp[k];
    return mono_index(m);
}

std::string PolyRing::mono_string(int i) const {
    const auto& m = monos_[i];
    std::string s;
    for (std::size_t k = 0; k < vars_.size(); ++k) {
        if (m.exp[k] == 0) continue;
        if (!s.empty()) s += "*";
        s += vars_[k];
        if (m.exp[k] > 1) s += "^" + std::to_string(m.exp[k]);
    }
    return s.empty() ? "1" : s;
}

bool Poly::is_zero() const {
    const Field& F = ring->field();
    for (const auto& x : c)
        if (!F.is_zero(x)) return false;
    return true;
}

Poly zero_poly(std::shared_ptr<const PolyRing> ring) {
    Poly p;
    p.c.assign(ring->count(), ring->field().zero());
    p.ring = std::move(ring);
    return p;
}

Poly parse_poly(std::shared_ptr<const PolyRing> ring, const std::string& text) {
    // grammar: term (('+'|'-') term)*, term: coef? ('*'? var ('^' int)?)*
    Poly p = zero_poly(ring);
    const Field& F = ring->field();
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    bool first = true;
    while (i < text.size()) {
        Scalar sign = F.one();
        skip();
        if (text[i] == '+' || text[i] == '-') {
            if (text[i] == '-') sign = F.from_long(-1);
            ++i;
        } else if (!first) {
            throw DeformError("expected + or - in polynomial: " + text);
        }
        first = false;
        skip();
        Scalar coef = F.one();
        bool saw_num = false;
        if (i < text.size() && (isdigit(static_cast<unsigned char>(text[i])))) {
            std::size_t j = i;
            while (j < text.size() &&
                   (isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/'))
                ++j;
            coef = F.from_string(text.substr(i, j - i));
            i = j;
            saw_num = true;
        }
        Monomial m;
        m.exp.assign(ring->nvars(), 0);
        bool saw_var = false;
        while (true) {
            skip();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip();
            }
            // find the longest variable name matching here
            int best = -1;
            std::size_t best_len = 0;
            for (int v = 0; v < ring->nvars(); ++v) {
                const std::string& name = ring->vars()[v];
                if (text.compare(i, name.size(), name) == 0 && name.size() > best_len) {
                    best = v;
                    best_len = name.size();
                }
            }
            if (best < 0) break;
            i += best_len;
            int e = 1;
            skip();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip();
                std::size_t j = i;
                while (j < text.size() && isdigit(static_cast<unsigned char>(text[j]))) ++j;
                e = std::stoi(text.substr(i, j - i));
                i = j;
            }
            m.exp[best] += e;
            saw_var = true;
        }
        if (!saw_num && !saw_var) throw DeformError("empty term in polynomial: " + text);
        int idx = ring->mono_index(m);
        if (idx < 0) throw DeformError("monomial exceeds the truncation order in: " + text);
        p.c[idx] = F.add(p.c[idx], F.mul(sign, coef));
        skip();
    }
    return p;
}

std::string poly_string(const Poly& p) {
    const Field& F = p.ring->field();
    std::string s;
    for (int i = 0; i < p.ring->count(); ++i) {
        if (F.is_zero(p.c[i])) continue;
        std::string coef = F.to_string(p.c[i]);
        bool negative = !coef.empty() && coef[0] == '-';
        if (negative) coef = coef.substr(1);
        if (!s.empty())
            s += negative ? " - " : " + ";
        else if (negative)
            s += "-";
        std::string mono = p.ring->mono_string(i);
        if (coef == "1" && mono != "1")
            s += mono;
        else if (mono == "1")
            s += coef;
        else
            s += coef + "*" + mono;
    }
    return s.empty() ? "0" : s;
}

ArtinAlgebra ArtinAlgebra::quotient(std::shared_ptr<const PolyRing> ring, std::vector<Poly> gens) {
    const Field F = ring->field();
    std::vector<Poly> span;
    for (const auto& g : gens) {
        if (static_cast<int>(g.c.size()) != ring->count())
            throw DeformError("relation is over a different ring");
        if (!F.is_zero(g.c[0])) throw DeformError("quotient is not local: relation has a constant term");
        for (int u = 0; u < ring->count(); ++u) {
            Poly p = zero_poly(ring);
            bool nz = false;
            for (int i = 0; i < ring->count(); ++i) {
                if (F.is_zero(g.c[i])) continue;
                int k = ring->mono_mul(u, i);
                if (k < 0) continue;
                p.c[k] = F.add(p.c[k], g.c[i]);
                nz = true;
            }
            if (nz) span.push_back(std::move(p));
        }
    }
    return from_subspace(std::move(ring), span);
}

ArtinAlgebra ArtinAlgebra::from_subspace(std::shared_ptr<const PolyRing> ring,
                                         const std::vector<Poly>& span) {
    const Field F = ring->field();
    ArtinAlgebra a;
    a.ring_ = std::move(ring);
    Mat m(F, span.size(), a.ring_->count());
    for (std::size_t i = 0; i < span.size(); ++i)
        for (int j = 0; j < a.ring_->count(); ++j) m.at(i, j) = span[i].c[j];
    auto rr = rref(m);
    Mat rows(F, rr.pivots.size(), a.ring_->count());
    for (std::size_t i = 0; i < rr.pivots.size(); ++i)
        for (int j = 0; j < a.ring_->count(); ++j) rows.at(i, j) = rr.r.at(i, j);
    a.ideal_ = std::move(rows);
    a.pivots_ = rr.pivots;
    a.finalize();
    return a;
}

void ArtinAlgebra::finalize() {
    const Field F = field();
    std::vector<bool> piv(ring_->count(), false);
    for (auto c : pivots_) {
        if (c == 0) throw DeformError("ideal contains a unit");
        piv[c] = true;
    }
    qpos_.assign(ring_->count(), -1);
    for (int i = 0; i < ring_->count(); ++i) {
        if (piv[i]) continue;
        qpos_[i] = static_cast<int>(qbasis_.size());
        qbasis_.push_back(i);
    }
    // ideal closedness under multiplication by the variables
    for (std::size_t r = 0; r < ideal_.rows(); ++r) {
        for (int v = 0; v < ring_->nvars(); ++v) {
            Monomial tv;
            tv.exp.assign(ring_->nvars(), 0);
            tv.exp[v] = 1;
            int tvi = ring_->mono_index(tv);
            if (tvi < 0) continue;
            std::vector<Scalar> prod(ring_->count(), F.zero());
            for (int j = 0; j < ring_->count(); ++j) {
                if (F.is_zero(ideal_.at(r, j))) continue;
                int k = ring_->mono_mul(tvi, j);
                if (k >= 0) prod[k] = F.add(prod[k], ideal_.at(r, j));
            }
            // reduce against the ideal; must vanish
            for (std::size_t rr2 = 0; rr2 < ideal_.rows(); ++rr2) {
                const Scalar c = prod[pivots_[rr2]];
                if (F.is_zero(c)) continue;
                for (int j = 0; j < ring_->count(); ++j)
                    prod[j] = F.sub(prod[j], F.mul(c, ideal_.at(rr2, j)));
            }
            for (const auto& x : prod)
                if (!F.is_zero(x)) throw DeformError("subspace is not an ideal");
        }
    }
    // structure constants
    const int d = dim();
    table_.assign(static_cast<std::size_t>(d) * d, {});
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            int k = ring_->mono_mul(qbasis_[i], qbasis_[j]);
            if (k < 0) continue;
            Poly p = zero_poly(ring_);
            p.c[k] = F.one();
            RElt red = reduce(p);
            std::vector<std::pair<int, Scalar>> cell;
            for (int u = 0; u < d; ++u)
                if (!F.is_zero(red[u])) cell.emplace_back(u, red[u]);
            table_[static_cast<std::size_t>(i) * d + j] = std::move(cell);
        }
}

int ArtinAlgebra::qbasis_pos(int mono_id) const { return qpos_[mono_id]; }

ArtinAlgebra::RElt ArtinAlgebra::reduce(const Poly& p) const {
    const Field F = field();
    std::vector<Scalar> v = p.c;
    for (std::size_t r = 0; r < ideal_.rows(); ++r) {
        const Scalar c = v[pivots_[r]];
        if (F.is_zero(c)) continue;
        for (int j = 0; j < ring_->count(); ++j) v[j] = F.sub(v[j], F.mul(c, ideal_.at(r, j)));
    }
    RElt out(dim(), F.zero());
    for (int i = 0; i < dim(); ++i) out[i] = v[qbasis_[i]];
    return out;
}

Poly ArtinAlgebra::lift(const RElt& x) const {
    Poly p = zero_poly(ring_);
    for (int i = 0; i < dim(); ++i) p.c[qbasis_[i]] = x[i];
    return p;
}

ArtinAlgebra::RElt ArtinAlgebra::one() const {
    RElt x = zero();
    x[0] = field().one();
    return x;
}

ArtinAlgebra::RElt ArtinAlgebra::mul(const RElt& x, const RElt& y) const {
    const Field F = field();
    RElt out = zero();
    const int d = dim();
    for (int i = 0; i < d; ++i) {
        if (F.is_zero(x[i])) continue;
        for (int j = 0; j < d; ++j) {
            if (F.is_zero(y[j])) continue;
            Scalar c = F.mul(x[i], y[j]);
            for (const auto& [k, w] : table(i, j)) out[k] = F.add(out[k], F.mul(c, w));
        }
    }
    return out;
}

ArtinAlgebra::RElt ArtinAlgebra::add(const RElt& x, const RElt& y) const {
    const Field F = field();
    RElt out = x;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.add(out[i], y[i]);
    return out;
}

bool ArtinAlgebra::is_zero(const RElt& x) const {
    const Field& F = field();
    for (const auto& v : x)
        if (!F.is_zero(v)) return false;
    return true;
}

const std::vector<std::pair<int, Scalar>>& ArtinAlgebra::table(int i, int j) const {
    return table_[static_cast<std::size_t>(i) * dim() + j];
}

int ArtinAlgebra::nilpotency_degree() const {
    const Field F = field();
    for (int d = 1; d <= ring_->order(); ++d) {
        bool all_dead = true;
        for (int i = 0; i < ring_->count() && all_dead; ++i) {
            if (ring_->monomials()[i].degree() < d) continue;
            Poly p = zero_poly(ring_);
            p.c[i] = F.one();
            if (!is_zero(reduce(p))) all_dead = false;
        }
        if (all_dead) return d;
    }
    return ring_->order() + 1;
}

ArtinAlgebra ArtinAlgebra::rebase(std::shared_ptr<const PolyRing> bigger) const {
    if (bigger->vars() != ring_->vars()) throw DeformError("rebase needs identical variables");
    if (bigger->order() < ring_->order()) throw DeformError("rebase cannot lower the order");
    const Field F = field();
    std::vector<Poly> span;
    for (std::size_t r = 0; r < ideal_.rows(); ++r) {
        Poly p = zero_poly(bigger);
        for (int j = 0; j < ring_->count(); ++j) {
            int k = bigger->mono_index(ring_->monomials()[j]);
            p.c[k] = ideal_.at(r, j);
        }
        span.push_back(std::move(p));
    }
    // the old truncation layer becomes explicit ideal content
    for (int i = 0; i < bigger->count(); ++i)
        if (bigger->monomials()[i].degree() > ring_->order()) {
            Poly p = zero_poly(bigger);
            p.c[i] = F.one();
            span.push_back(std::move(p));
        }
    return from_subspace(std::move(bigger), span);
}

std::vector<Poly> ArtinAlgebra::ideal_rows() const {
    std::vector<Poly> out;
    for (std::size_t r = 0; r < ideal_.rows(); ++r) {
        Poly p = zero_poly(ring_);
        for (int j = 0; j < ring_->count(); ++j) p.c[j] = ideal_.at(r, j);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<Poly> ArtinAlgebra::minimal_generators() const {
    const Field F = field();
    // m * I
    std::vector<std::vector<Scalar>> mi;
    for (std::size_t r = 0; r < ideal_.rows(); ++r)
        for (int v = 0; v < ring_->nvars(); ++v) {
            Monomial tv;
            tv.exp.assign(ring_->nvars(), 0);
            tv.exp[v] = 1;
            int tvi = ring_->mono_index(tv);
            if (tvi < 0) continue;
            std::vector<Scalar> prod(ring_->count(), F.zero());
            bool nz = false;
            for (int j = 0; j < ring_->count(); ++j) {
                if (F.is_zero(ideal_.at(r, j))) continue;
                int k = ring_->mono_mul(tvi, j);
                if (k >= 0) {
                    prod[k] = F.add(prod[k], ideal_.at(r, j));
                    nz = true;
                }
            }
            if (nz) mi.push_back(std::move(prod));
        }
    Mat mim(F, mi.size(), ring_->count());
    for (std::size_t i = 0; i < mi.size(); ++i)
        for (int j = 0; j < ring_->count(); ++j) mim.at(i, j) = mi[i][j];
    // choose ideal rows extending the span of m*I
    std::vector<Poly> gens;
    std::vector<Mat> stack;
    if (mim.rows() > 0) stack.push_back(mim.transpose());
    std::size_t current_rank = mim.rows() > 0 ? rank(mim) : 0;
    for (std::size_t r = 0; r < ideal_.rows(); ++r) {
        Mat col(F, ring_->count(), 1);
        for (int j = 0; j < ring_->count(); ++j) col.at(j, 0) = ideal_.at(r, j);
        std::vector<Mat> test = stack;
        test.push_back(col);
        Mat combined = Mat::hstack(test);
        if (rank(combined) > current_rank) {
            current_rank = rank(combined);
            stack.push_back(col);
            Poly p = zero_poly(ring_);
            for (int j = 0; j < ring_->count(); ++j) p.c[j] = ideal_.at(r, j);
            gens.push_back(std::move(p));
        }
    }
    return gens;
}

// ---------------------------------------------------------------------------

namespace {

bool artin_equal(const ArtinAlgebra& a, const ArtinAlgebra& b) {
    if (a.ring()->vars() != b.ring()->vars() || a.ring()->order() != b.ring()->order())
        return false;
    if (a.dim() != b.dim() || a.qbasis() != b.qbasis()) return false;
    auto ra = a.ideal_rows(), rb = b.ideal_rows();
    if (ra.size() != rb.size()) return false;
    const Field& F = a.field();
    for (std::size_t i = 0; i < ra.size(); ++i)
        for (std::size_t j = 0; j < ra[i].c.size(); ++j)
            if (!F.eq(ra[i].c[j], rb[i].c[j])) return false;
    return true;
}

using State = std::vector<std::vector<Mat>>;  // [slot][qbasis position]

// Generic deformation problem: slot shapes, base values and a defect
// evaluator (relation values, differential squares, chain conditions ...)
// whose linearization at the base is the constant obstruction-side map.
struct LiftShape {
    Field F;
    std::vector<std::pair<int, int>> shapes;
    std::vector<Mat> base;
    std::function<Mat(const ArtinAlgebra&, const State&)> defect;  // rows x dim(R)
    std::vector<Mat> conj_cols;  // first-order conjugation directions (flattened)
    int unknowns() const {
        int u = 0;
        for (auto [r, c] : shapes) u += r * c;
        return u;
    }
};

State base_state(const LiftShape& ls, const ArtinAlgebra& R) {
    State st(ls.shapes.size());
    for (std::size_t s = 0; s < ls.shapes.size(); ++s) {
        st[s].assign(R.dim(), Mat(ls.F, ls.shapes[s].first, ls.shapes[s].second));
        st[s][0] = ls.base[s];
    }
    return st;
}

Mat flatten_state_direction(const LiftShape& ls, const std::vector<Mat>& dir) {
    Mat col(ls.F, ls.unknowns(), 1);
    int k = 0;
    for (std::size_t s = 0; s < dir.size(); ++s)
        for (std::size_t i = 0; i < dir[s].rows(); ++i)
            for (std::size_t j = 0; j < dir[s].cols(); ++j) col.at(k++, 0) = dir[s].at(i, j);
    return col;
}

std::vector<Mat> unflatten_direction(const LiftShape& ls, const Mat& col) {
    std::vector<Mat> out;
    int k = 0;
    for (auto [r, c] : ls.shapes) {
        Mat m(ls.F, r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.at(i, j) = col.at(k++, 0);
        out.push_back(std::move(m));
    }
    return out;
}

// first-order linearization of the defect at the base (columns per unknown)
Mat derivative_matrix(const LiftShape& ls) {
    auto ring = std::make_shared<PolyRing>(ls.F, std::vector<std::string>{"_e"}, 1);
    ArtinAlgebra E = ArtinAlgebra::quotient(ring, {});
    State st = base_state(ls, E);
    Mat probe = ls.defect(E, st);
    const int rows = static_cast<int>(probe.rows());
    Mat D(ls.F, rows, ls.unknowns());
    int u = 0;
    for (std::size_t s = 0; s < ls.shapes.size(); ++s)
        for (int i = 0; i < ls.shapes[s].first; ++i)
            for (int j = 0; j < ls.shapes[s].second; ++j) {
                State st2 = base_state(ls, E);
                st2[s][1].at(i, j) = ls.F.one();
                Mat d = ls.defect(E, st2);
                for (int r = 0; r < rows; ++r) D.at(r, u) = d.at(r, 1);
                ++u;
            }
    return D;
}

// transports a state along a quotient map (the target ideal contains the
// source ideal; rings agree on a common prefix of monomials)
State transport_state(const LiftShape& ls, const State& st, const ArtinAlgebra& from,
                      const ArtinAlgebra& to) {
    State out(st.size());
    for (std::size_t s = 0; s < st.size(); ++s)
        out[s].assign(to.dim(), Mat(ls.F, ls.shapes[s].first, ls.shapes[s].second));
    for (int w = 0; w < from.dim(); ++w) {
        int mono = from.qbasis()[w];
        const Monomial& mexp = from.ring()->monomials()[mono];
        int tm = to.ring()->mono_index(mexp);
        if (tm < 0) throw DeformError("transport: monomial outside the target ring");
        Poly p = zero_poly(to.ring());
        p.c[tm] = ls.F.one();
        ArtinAlgebra::RElt cls = to.reduce(p);
        for (std::size_t s = 0; s < st.size(); ++s) {
            if (st[s][w].is_zero()) continue;
            for (int u = 0; u < to.dim(); ++u)
                if (!ls.F.is_zero(cls[u])) out[s][u] = out[s][u].add(st[s][w].scaled(cls[u]));
        }
    }
    return out;
}

// kernel of the quotient map big -> small on basis classes (columns in
// big-coordinates)
Mat quotient_kernel(const ArtinAlgebra& big, const ArtinAlgebra& small) {
    const Field F = big.field();
    Mat m(F, small.dim(), big.dim());
    for (int w = 0; w < big.dim(); ++w) {
        const Monomial& mexp = big.ring()->monomials()[big.qbasis()[w]];
        int tm = small.ring()->mono_index(mexp);
        if (tm < 0) continue;  // dies in the lower truncation
        Poly p = zero_poly(small.ring());
        p.c[tm] = F.one();
        auto cls = small.reduce(p);
        for (int i = 0; i < small.dim(); ++i) m.at(i, w) = cls[i];
    }
    return kernel_basis(m);
}

// canonical residual of b against the column space of D (empty when solvable)
Mat colspace_residual(const Mat& rrefT, const std::vector<std::size_t>& pivots, const Mat& b) {
    const Field& F = b.field();
    Mat v = b;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        const Scalar c = v.at(pivots[r], 0);
        if (F.is_zero(c)) continue;
        for (std::size_t j = 0; j < v.rows(); ++j)
            v.at(j, 0) = F.sub(v.at(j, 0), F.mul(c, rrefT.at(r, j)));
    }
    return v;
}

// extends a state from Rsmall to Rbig (vector-space kernel killed by m);
// returns false when an obstruction survives
bool try_extend(const LiftShape& ls, const Mat& D, State& st, const ArtinAlgebra& from,
                const ArtinAlgebra& to) {
    const Field F = ls.F;
    State big = transport_state(ls, st, from, to);
    Mat K = quotient_kernel(to, from);
    if (K.cols() == 0) {
        st = std::move(big);
        return true;
    }
    Mat defect = ls.defect(to, big);
    // defect must vanish in the small quotient; express it over the kernel
    Mat coords;
    {
        auto sol = solve(K, defect.transpose());
        if (!sol) throw DeformError("defect does not vanish in the quotient (internal)");
        coords = sol->transpose();  // rows x kdim
    }
    for (std::size_t k = 0; k < K.cols(); ++k) {
        Mat rhs(F, defect.rows(), 1);
        for (std::size_t r = 0; r < defect.rows(); ++r)
            rhs.at(r, 0) = F.neg(coords.at(r, k));
        auto c = solve(D, rhs);
        if (!c) return false;
        std::vector<Mat> corr = unflatten_direction(ls, *c);
        for (std::size_t s = 0; s < big.size(); ++s)
            for (int u = 0; u < to.dim(); ++u)
                if (!F.is_zero(K.at(u, k))) big[s][u] = big[s][u].add(corr[s].scaled(K.at(u, k)));
    }
    if (!ls.defect(to, big).is_zero()) throw DeformError("extension left a defect (internal)");
    st = std::move(big);
    return true;
}

struct VersalCore {
    ArtinAlgebra ring;
    State state;
    bool exact = false;
};

VersalCore run_versal(const LiftShape& ls, const std::vector<std::string>& names, int order,
                      const std::vector<Mat>& tangent_cols) {
    const Field F = ls.F;
    Mat D = derivative_matrix(ls);
    auto rrT = rref(D.transpose());  // rows: column-space basis of D

    // order 1: the universal first-order structure over k[t]/m^2
    auto ring1 = std::make_shared<PolyRing>(F, names, 1);
    ArtinAlgebra R = ArtinAlgebra::quotient(ring1, {});
    State st = base_state(ls, R);
    for (std::size_t j = 0; j < tangent_cols.size(); ++j) {
        std::vector<Mat> dir = unflatten_direction(ls, tangent_cols[j]);
        Monomial tm;
        tm.exp.assign(names.size(), 0);
        tm.exp[j] = 1;
        int pos = R.qbasis_pos(ring1->mono_index(tm));
        for (std::size_t s = 0; s < st.size(); ++s) st[s][pos] = dir[s];
    }
    if (!ls.defect(R, st).is_zero())
        throw DeformError("tangent directions fail at first order (internal)");

    std::vector<Poly> ideal = {};  // over R's ring (degree <= current order)
    VersalCore out{R, st, false};
    int stable_dim = -1;

    for (int n = 2; n <= order + 1; ++n) {
        auto S = std::make_shared<PolyRing>(F, names, n);
        // previous ideal and the full degree-n layer
        std::vector<Poly> iprime;
        for (const auto& p : ideal) {
            Poly q = zero_poly(S);
            for (int j = 0; j < p.ring->count(); ++j)
                q.c[S->mono_index(p.ring->monomials()[j])] = p.c[j];
            iprime.push_back(std::move(q));
        }
        std::size_t prev_rows = iprime.size();
        for (int i = 0; i < S->count(); ++i)
            if (S->monomials()[i].degree() == n) {
                Poly q = zero_poly(S);
                q.c[i] = F.one();
                iprime.push_back(std::move(q));
            }
        // m * I'
        std::vector<Poly> mip;
        for (const auto& p : iprime)
            for (int v = 0; v < S->nvars(); ++v) {
                Monomial tv;
                tv.exp.assign(S->nvars(), 0);
                tv.exp[v] = 1;
                int tvi = S->mono_index(tv);
                Poly q = zero_poly(S);
                bool nz = false;
                for (int j = 0; j < S->count(); ++j) {
                    if (F.is_zero(p.c[j])) continue;
                    int k = S->mono_mul(tvi, j);
                    if (k >= 0) {
                        q.c[k] = F.add(q.c[k], p.c[j]);
                        nz = true;
                    }
                }
                if (nz) mip.push_back(std::move(q));
            }
        ArtinAlgebra B = ArtinAlgebra::from_subspace(S, mip);
        ArtinAlgebra An = ArtinAlgebra::from_subspace(S, iprime);
        (void)prev_rows;

        State stB = transport_state(ls, st, R, B);
        Mat K = quotient_kernel(B, An);
        std::vector<Poly> new_ideal = mip;
        if (K.cols() > 0) {
            Mat defect = ls.defect(B, stB);
            Mat coords;
            {
                auto sol = solve(K, defect.transpose());
                if (!sol) throw DeformError("defect escapes the extension kernel (internal)");
                coords = sol->transpose();
            }
            // residual matrix: rows = defect coords, cols = kernel elements
            std::vector<Mat> residuals;
            for (std::size_t k = 0; k < K.cols(); ++k) {
                Mat b(F, defect.rows(), 1);
                for (std::size_t r = 0; r < defect.rows(); ++r) b.at(r, 0) = coords.at(r, k);
                residuals.push_back(colspace_residual(rrT.r, rrT.pivots, b));
            }
            // minimal obstruction span: row space over the kernel index
            Mat res(F, defect.rows(), K.cols());
            for (std::size_t k = 0; k < K.cols(); ++k)
                for (std::size_t r = 0; r < defect.rows(); ++r)
                    res.at(r, k) = residuals[k].at(r, 0);
            auto rr2 = rref(res);
            for (std::size_t r = 0; r < rr2.pivots.size(); ++r) {
                // the r-th row is a combination of kernel basis classes
                Poly p = zero_poly(S);
                for (std::size_t k = 0; k < K.cols(); ++k) {
                    if (F.is_zero(rr2.r.at(r, k))) continue;
                    // kernel column k as a polynomial
                    for (int u = 0; u < B.dim(); ++u)
                        if (!F.is_zero(K.at(u, k)))
                            p.c[B.qbasis()[u]] =
                                F.add(p.c[B.qbasis()[u]], F.mul(rr2.r.at(r, k), K.at(u, k)));
                }
                new_ideal.push_back(std::move(p));
            }
        }
        ArtinAlgebra Rn = ArtinAlgebra::from_subspace(S, new_ideal);
        State stn = st;
        if (!try_extend(ls, D, stn, R, Rn))
            throw DeformError("obstruction survives its own quotient (internal)");

        if (n == order + 1) {
            // probe step: exactness requires genuine nilpotency within the
            // reported order and a stable quotient
            out.exact = (out.ring.nilpotency_degree() <= order) && (Rn.dim() == out.ring.dim());
            break;
        }
        R = Rn;
        st = std::move(stn);
        ideal = R.ideal_rows();
        out.ring = R;
        out.state = st;
        stable_dim = R.dim();
    }
    (void)stable_dim;
    return out;
}

// --- module-specific shape ---

Mat pm_flatten(const Field& F, const std::vector<std::vector<Mat>>& rows_of_polymats, int rdim) {
    // stack of poly-matrices: each contributes rows*cols rows, columns = rdim
    std::size_t total = 0;
    for (const auto& pm : rows_of_polymats)
        if (!pm.empty()) total += pm[0].rows() * pm[0].cols();
    Mat out(F, total, rdim);
    std::size_t r0 = 0;
    for (const auto& pm : rows_of_polymats) {
        if (pm.empty()) continue;
        std::size_t rr = pm[0].rows(), cc = pm[0].cols();
        for (int w = 0; w < rdim; ++w)
            for (std::size_t i = 0; i < rr; ++i)
                for (std::size_t j = 0; j < cc; ++j) out.at(r0 + i * cc + j, w) = pm[w].at(i, j);
        r0 += rr * cc;
    }
    return out;
}

std::vector<Mat> pm_mul(const ArtinAlgebra& R, const std::vector<Mat>& A,
                        const std::vector<Mat>& B) {
    const Field F = R.field();
    std::vector<Mat> out(R.dim(), Mat(F, A[0].rows(), B[0].cols()));
    for (int i = 0; i < R.dim(); ++i) {
        if (A[i].is_zero()) continue;
        for (int j = 0; j < R.dim(); ++j) {
            if (B[j].is_zero()) continue;
            Mat prod = A[i].mul(B[j]);
            for (const auto& [k, c] : R.table(i, j)) out[k] = out[k].add(prod.scaled(c));
        }
    }
    return out;
}

LiftShape module_shape(const Rep& v) {
    LiftShape ls;
    ls.F = v.field();
    const auto alg = v.alg;
    for (std::size_t a = 0; a < v.action.size(); ++a) {
        const auto& ar = alg->quiver().arrows[a];
        ls.shapes.emplace_back(v.dims[ar.tgt], v.dims[ar.src]);
        ls.base.push_back(v.action[a]);
    }
    ls.defect = [v, alg](const ArtinAlgebra& R, const State& st) {
        const Field F = R.field();
        std::vector<std::vector<Mat>> vals;
        for (const auto& rel : alg->relations()) {
            const auto& t0 = rel.front();
            int s = alg->quiver().arrows[t0.arrows.front()].src;
            int t = alg->quiver().arrows[t0.arrows.back()].tgt;
            std::vector<Mat> acc(R.dim(), Mat(F, v.dims[t], v.dims[s]));
            for (const auto& term : rel) {
                std::vector<Mat> p = st[term.arrows[0]];
                for (std::size_t i = 1; i < term.arrows.size(); ++i)
                    p = pm_mul(R, st[term.arrows[i]], p);
                for (int w = 0; w < R.dim(); ++w) acc[w] = acc[w].add(p[w].scaled(term.coef));
            }
            vals.push_back(std::move(acc));
        }
        return pm_flatten(F, vals, R.dim());
    };
    // conjugation directions: C(a) = xi_t A(a) - A(a) xi_s
    const Field F = ls.F;
    for (int vtx = 0; vtx < alg->vertices(); ++vtx)
        for (int i = 0; i < v.dims[vtx]; ++i)
            for (int j = 0; j < v.dims[vtx]; ++j) {
                std::vector<Mat> dir;
                for (std::size_t a = 0; a < v.action.size(); ++a) {
                    const auto& ar = alg->quiver().arrows[a];
                    Mat m(F, v.dims[ar.tgt], v.dims[ar.src]);
                    if (ar.tgt == vtx)
                        for (int c = 0; c < v.dims[ar.src]; ++c)
                            m.at(i, c) = F.add(m.at(i, c), v.action[a].at(j, c));
                    if (ar.src == vtx)
                        for (int r = 0; r < v.dims[ar.tgt]; ++r)
                            m.at(r, j) = F.sub(m.at(r, j), v.action[a].at(r, i));
                    dir.push_back(std::move(m));
                }
                ls.conj_cols.push_back(flatten_state_direction(ls, dir));
            }
    return ls;
}

std::vector<Mat> tangent_columns(const LiftShape& ls) {
    Mat D = derivative_matrix(ls);
    Mat Z = kernel_basis(D);
    std::vector<Mat> cols;
    if (!ls.conj_cols.empty()) cols.push_back(Mat::hstack(ls.conj_cols));
    std::size_t brank = cols.empty() ? 0 : rank(cols[0]);
    Mat combined = cols.empty() ? Z : Mat::hstack({cols[0], Z});
    auto rr = rref(combined);
    std::vector<Mat> out;
    std::size_t bcols = cols.empty() ? 0 : cols[0].cols();
    for (auto c : rr.pivots)
        if (c >= bcols) out.push_back(Z.col(c - bcols));
    (void)brank;
    return out;
}

LiftShape complex_shape(const Complex& x);

}  // namespace

// ---------------------------------------------------------------------------

ModuleLift trivial_lift(Rep v, ArtinAlgebra R) {
    ModuleLift l{std::move(v), std::move(R), {}};
    for (std::size_t a = 0; a < l.base.action.size(); ++a) {
        std::vector<Mat> coeffs(l.R.dim(),
                                Mat(l.base.field(), l.base.action[a].rows(), l.base.action[a].cols()));
        coeffs[0] = l.base.action[a];
        l.action.push_back(std::move(coeffs));
    }
    return l;
}

void validate_lift(const ModuleLift& l) {
    const Field F = l.base.field();
    if (l.action.size() != l.base.action.size()) throw DeformError("lift: one entry per arrow");
    for (std::size_t a = 0; a < l.action.size(); ++a) {
        if (static_cast<int>(l.action[a].size()) != l.R.dim())
            throw DeformError("lift: one coefficient per basis monomial");
        if (!(l.action[a][0] == l.base.action[a]))
            throw DeformError("lift does not reduce to the base module");
    }
    LiftShape ls = module_shape(l.base);
    if (!ls.defect(l.R, l.action).is_zero()) throw DeformError("lift violates the relations");
    (void)F;
}

Rep lift_as_module(const ModuleLift& l) {
    const Field F = l.base.field();
    const auto alg = l.base.alg;
    const int d = l.R.dim();
    Rep out = zero_rep(alg);
    for (int v = 0; v < alg->vertices(); ++v) out.dims[v] = d * l.base.dims[v];
    for (std::size_t a = 0; a < l.action.size(); ++a) {
        const auto& ar = alg->quiver().arrows[a];
        Mat big(F, out.dims[ar.tgt], out.dims[ar.src]);
        // basis: (v_i ⊗ w) ordered w-major; action: x ⊗ w -> Σ_u A_u x ⊗ u w
        for (int w = 0; w < d; ++w)
            for (int u = 0; u < d; ++u) {
                if (l.action[a][u].is_zero()) continue;
                for (const auto& [k, c] : l.R.table(u, w)) {
                    for (int i = 0; i < l.base.dims[ar.tgt]; ++i)
                        for (int j = 0; j < l.base.dims[ar.src]; ++j)
                            big.at(k * l.base.dims[ar.tgt] + i, w * l.base.dims[ar.src] + j) =
                                F.add(big.at(k * l.base.dims[ar.tgt] + i,
                                             w * l.base.dims[ar.src] + j),
                                      F.mul(c, l.action[a][u].at(i, j)));
                }
            }
        out.action[a] = std::move(big);
    }
    validate_rep(out);
    return out;
}

TangentData tangent_data(const Rep& v) {
    LiftShape ls = module_shape(v);
    auto cols = tangent_columns(ls);
    TangentData td;
    td.dim = static_cast<int>(cols.size());
    for (const auto& c : cols) td.cocycles.push_back(unflatten_direction(ls, c));
    return td;
}

int tangent_dim(const Rep& v) { return tangent_data(v).dim; }

SmallExtension make_small_extension(const ArtinAlgebra& big0, const ArtinAlgebra& small0) {
    if (big0.ring()->vars() != small0.ring()->vars())
        throw DeformError("small extension needs identical variables");
    int order = std::max(big0.ring()->order(), small0.ring()->order());
    auto ring = std::make_shared<PolyRing>(big0.field(), big0.ring()->vars(), order);
    ArtinAlgebra big = big0.rebase(ring);
    ArtinAlgebra small = small0.rebase(ring);
    // ideal containment: every big-ideal row reduces to zero in small
    for (const auto& p : big.ideal_rows())
        if (!small.is_zero(small.reduce(p))) throw DeformError("not a quotient: ideals do not nest");
    Mat K = quotient_kernel(big, small);
    if (K.cols() != 1) throw DeformError("small extension needs a one-dimensional kernel");
    ArtinAlgebra::RElt socle = big.zero();
    for (int i = 0; i < big.dim(); ++i) socle[i] = K.at(i, 0);
    // the maximal ideal kills the kernel
    for (int v = 0; v < ring->nvars(); ++v) {
        Monomial tv;
        tv.exp.assign(ring->nvars(), 0);
        tv.exp[v] = 1;
        Poly p = zero_poly(ring);
        p.c[ring->mono_index(tv)] = big.field().one();
        auto tcls = big.reduce(p);
        if (!big.is_zero(big.mul(tcls, socle)))
            throw DeformError("kernel is not annihilated by the maximal ideal");
    }
    return SmallExtension{big, small, socle};
}

std::optional<ModuleLift> extend_lift(const ModuleLift& l, const SmallExtension& e) {
    // rebase the lift onto the extension's common ring
    ModuleLift lr = l;
    if (l.R.ring()->order() != e.small.ring()->order()) {
        LiftShape ls = module_shape(l.base);
        ArtinAlgebra reb = l.R.rebase(
            std::make_shared<PolyRing>(l.R.field(), l.R.ring()->vars(), e.small.ring()->order()));
        lr.action = transport_state(ls, l.action, l.R, reb);
        lr.R = reb;
    }
    if (!artin_equal(lr.R, e.small)) throw DeformError("lift ring differs from the extension target");
    LiftShape ls = module_shape(l.base);
    Mat D = derivative_matrix(ls);
    State st = lr.action;
    if (!try_extend(ls, D, st, lr.R, e.big)) return std::nullopt;
    ModuleLift out{l.base, e.big, std::move(st)};
    return out;
}

bool lifts_isomorphic(const ModuleLift& a, const ModuleLift& b) {
    if (a.base.alg != b.base.alg || a.base.dims != b.base.dims)
        throw DeformError("lifts of different modules");
    if (!artin_equal(a.R, b.R)) throw DeformError("lifts over different rings");
    const Field F = a.base.field();
    const auto alg = a.base.alg;
    const ArtinAlgebra& R = a.R;
    const int nv = alg->vertices();
    // unknowns: f_v coefficients at monomials w != 1; f at 1 is the identity
    std::vector<int> base(nv + 1, 0);
    for (int v = 0; v < nv; ++v) base[v + 1] = base[v] + a.base.dims[v] * a.base.dims[v];
    const int per_mono = base[nv];
    const int unknowns = per_mono * (R.dim() - 1);
    if (unknowns == 0) {
        // f = id must already intertwine
        for (std::size_t ar = 0; ar < a.action.size(); ++ar)
            for (int w = 0; w < R.dim(); ++w)
                if (!(a.action[ar][w] == b.action[ar][w])) return false;
        return true;
    }
    auto f_polymat = [&](int v, const Mat* unit, int unit_w) {
        std::vector<Mat> f(R.dim(), Mat(F, a.base.dims[v], a.base.dims[v]));
        if (unit == nullptr)
            f[0] = Mat::identity(F, a.base.dims[v]);
        else
            f[unit_w] = *unit;
        return f;
    };
    // condition: f_tgt * A(a) - B(a) * f_src = 0 over R, linear in f
    auto condition = [&](const std::vector<std::vector<Mat>>& f) {
        std::vector<std::vector<Mat>> vals;
        for (std::size_t ar = 0; ar < a.action.size(); ++ar) {
            const auto& arrow = alg->quiver().arrows[ar];
            auto lhs = pm_mul(R, f[arrow.tgt], a.action[ar]);
            auto rhs = pm_mul(R, b.action[ar], f[arrow.src]);
            std::vector<Mat> diff(R.dim(), Mat(F, a.base.dims[arrow.tgt], a.base.dims[arrow.src]));
            for (int w = 0; w < R.dim(); ++w) diff[w] = lhs[w].sub(rhs[w]);
            vals.push_back(std::move(diff));
        }
        return pm_flatten(F, vals, R.dim());
    };
    std::vector<std::vector<Mat>> fid;
    for (int v = 0; v < nv; ++v) fid.push_back(f_polymat(v, nullptr, 0));
    Mat c0 = condition(fid);
    // rhs = -c0 flattened; columns: unit perturbations
    Mat rhs(F, c0.rows() * c0.cols(), 1);
    {
        std::size_t k = 0;
        for (std::size_t i = 0; i < c0.rows(); ++i)
            for (std::size_t j = 0; j < c0.cols(); ++j) rhs.at(k++, 0) = F.neg(c0.at(i, j));
    }
    Mat sys(F, c0.rows() * c0.cols(), unknowns);
    int u = 0;
    for (int w = 1; w < R.dim(); ++w)
        for (int v = 0; v < nv; ++v)
            for (int i = 0; i < a.base.dims[v]; ++i)
                for (int j = 0; j < a.base.dims[v]; ++j) {
                    Mat unit(F, a.base.dims[v], a.base.dims[v]);
                    unit.at(i, j) = F.one();
                    std::vector<std::vector<Mat>> f;
                    for (int vv = 0; vv < nv; ++vv)
                        f.push_back(vv == v ? f_polymat(vv, &unit, w)
                                            : std::vector<Mat>(R.dim(),
                                                               Mat(F, a.base.dims[vv],
                                                                   a.base.dims[vv])));
                    Mat cu = condition(f);
                    std::size_t k = 0;
                    for (std::size_t r = 0; r < cu.rows(); ++r)
                        for (std::size_t cc = 0; cc < cu.cols(); ++cc)
                            sys.at(k++, u) = cu.at(r, cc);
                    ++u;
                }
    return solve(sys, rhs).has_value();
}

VersalPresentation versal_presentation(const Rep& v, int order) {
    if (order < 1) throw DeformError("order must be >= 1");
    LiftShape ls = module_shape(v);
    auto cols = tangent_columns(ls);
    int r = static_cast<int>(cols.size());
    std::vector<std::string> names;
    if (r == 1)
        names = {"t"};
    else
        for (int i = 1; i <= r; ++i) names.push_back("t" + std::to_string(i));
    VersalCore core = run_versal(ls, names, order, cols);
    VersalPresentation out;
    out.vars = r;
    out.var_names = names;
    out.relations = core.ring.minimal_generators();
    out.order = order;
    out.exact = core.exact;
    out.universal_claimed = stable_hom(v, v).dim == 1;
    out.ring = core.ring;
    out.lift = ModuleLift{v, core.ring, core.state};
    return out;
}

std::vector<ModuleLift> enumerate_deformations(const Rep& v, const ArtinAlgebra& R) {
    const Field F = v.field();
    const std::uint32_t p = F.characteristic();
    if (p != 2 && p != 3) throw DeformError("enumeration oracle needs F_2 or F_3");
    if (R.dim() * v.total_dim() > 12) throw DeformError("enumeration size guard exceeded");
    LiftShape ls = module_shape(v);
    int entries = ls.unknowns() * (R.dim() - 1);
    double total = 1;
    for (int i = 0; i < entries; ++i) total *= p;
    if (total > (1 << 22)) throw DeformError("enumeration size guard exceeded");
    std::vector<ModuleLift> classes;
    std::vector<std::uint64_t> coef(std::max(entries, 1), 0);
    while (true) {
        State st = base_state(ls, R);
        int k = 0;
        for (int w = 1; w < R.dim(); ++w)
            for (std::size_t s = 0; s < ls.shapes.size(); ++s)
                for (int i = 0; i < ls.shapes[s].first; ++i)
                    for (int j = 0; j < ls.shapes[s].second; ++j)
                        st[s][w].at(i, j) = F.from_long(static_cast<long>(coef[k++]));
        if (ls.defect(R, st).is_zero()) {
            ModuleLift cand{v, R, st};
            bool known = false;
            for (const auto& c : classes)
                if (lifts_isomorphic(c, cand)) {
                    known = true;
                    break;
                }
            if (!known) classes.push_back(std::move(cand));
        }
        if (entries == 0) break;
        int k2 = 0;
        while (k2 < entries && ++coef[k2] == p) coef[k2++] = 0;
        if (k2 == entries) break;
    }
    return classes;
}

// ---------------------------------------------------------------------------
// complexes

namespace {

LiftShape complex_shape(const Complex& x) {
    LiftShape ls;
    ls.F = x.alg->field();
    const auto alg = x.alg;
    struct SlotIndex {
        std::vector<std::pair<int, int>> term_arrow;  // (degree, arrow) slots first
        std::vector<std::pair<int, int>> diff_vertex;
    };
    auto idx = std::make_shared<SlotIndex>();
    for (const auto& [n, t] : x.terms)
        for (std::size_t a = 0; a < t.action.size(); ++a) {
            const auto& ar = alg->quiver().arrows[a];
            idx->term_arrow.emplace_back(n, static_cast<int>(a));
            ls.shapes.emplace_back(t.dims[ar.tgt], t.dims[ar.src]);
            ls.base.push_back(t.action[a]);
        }
    for (const auto& [n, t] : x.terms) {
        if (!x.term(n + 1)) continue;
        ModuleMap d = x.diff_or_zero(n);
        for (int v = 0; v < alg->vertices(); ++v) {
            idx->diff_vertex.emplace_back(n, v);
            ls.shapes.emplace_back(x.term(n + 1)->dims[v], t.dims[v]);
            ls.base.push_back(d.comps[v]);
        }
    }
    Complex xc = x;
    ls.defect = [xc, alg, idx](const ArtinAlgebra& R, const State& st) {
        const Field F = R.field();
        const int nv = alg->vertices();
        // locate slots
        auto term_slot = [&](int n, int a) {
            for (std::size_t s = 0; s < idx->term_arrow.size(); ++s)
                if (idx->term_arrow[s] == std::make_pair(n, a)) return static_cast<int>(s);
            return -1;
        };
        auto diff_slot = [&](int n, int v) {
            for (std::size_t s = 0; s < idx->diff_vertex.size(); ++s)
                if (idx->diff_vertex[s] == std::make_pair(n, v))
                    return static_cast<int>(s + idx->term_arrow.size());
            return -1;
        };
        std::vector<std::vector<Mat>> vals;
        // per-term relations
        for (const auto& [n, t] : xc.terms) {
            for (const auto& rel : alg->relations()) {
                const auto& t0 = rel.front();
                int s = alg->quiver().arrows[t0.arrows.front()].src;
                int tt = alg->quiver().arrows[t0.arrows.back()].tgt;
                std::vector<Mat> acc(R.dim(), Mat(F, t.dims[tt], t.dims[s]));
                for (const auto& term : rel) {
                    std::vector<Mat> p = st[term_slot(n, term.arrows[0])];
                    for (std::size_t i = 1; i < term.arrows.size(); ++i)
                        p = pm_mul(R, st[term_slot(n, term.arrows[i])], p);
                    for (int w = 0; w < R.dim(); ++w) acc[w] = acc[w].add(p[w].scaled(term.coef));
                }
                vals.push_back(std::move(acc));
            }
        }
        // chain conditions: delta_t(a-target) A^n(a) - A^{n+1}(a) delta_s
        for (const auto& [n, t] : xc.terms) {
            if (!xc.term(n + 1)) continue;
            for (std::size_t a = 0; a < t.action.size(); ++a) {
                const auto& ar = alg->quiver().arrows[a];
                auto lhs = pm_mul(R, st[diff_slot(n, ar.tgt)], st[term_slot(n, static_cast<int>(a))]);
                auto rhs = pm_mul(R, st[term_slot(n + 1, static_cast<int>(a))],
                                  st[diff_slot(n, ar.src)]);
                std::vector<Mat> diffv(R.dim(), Mat(F, 0, 0));
                for (int w = 0; w < R.dim(); ++w) diffv[w] = lhs[w].sub(rhs[w]);
                vals.push_back(std::move(diffv));
            }
        }
        // delta squared
        for (const auto& [n, t] : xc.terms) {
            (void)t;
            if (!xc.term(n + 1) || !xc.term(n + 2)) continue;
            for (int v = 0; v < nv; ++v) {
                auto sq = pm_mul(R, st[diff_slot(n + 1, v)], st[diff_slot(n, v)]);
                vals.push_back(std::move(sq));
            }
        }
        return pm_flatten(F, vals, R.dim());
    };
    // conjugation: xi per (term, vertex)
    const Field F = ls.F;
    for (const auto& [n, t] : x.terms)
        for (int vtx = 0; vtx < alg->vertices(); ++vtx)
            for (int i = 0; i < t.dims[vtx]; ++i)
                for (int j = 0; j < t.dims[vtx]; ++j) {
                    std::vector<Mat> dir;
                    for (auto [rr, cc] : ls.shapes) dir.emplace_back(F, rr, cc);
                    std::size_t slot = 0;
                    for (const auto& [m, tm] : x.terms) {
                        for (std::size_t a = 0; a < tm.action.size(); ++a, ++slot) {
                            if (m != n) continue;
                            const auto& ar = alg->quiver().arrows[a];
                            if (ar.tgt == vtx)
                                for (int c = 0; c < tm.dims[ar.src]; ++c)
                                    dir[slot].at(i, c) =
                                        F.add(dir[slot].at(i, c), tm.action[a].at(j, c));
                            if (ar.src == vtx)
                                for (int r = 0; r < tm.dims[ar.tgt]; ++r)
                                    dir[slot].at(r, j) =
                                        F.sub(dir[slot].at(r, j), tm.action[a].at(r, i));
                        }
                    }
                    for (const auto& [m, tm] : x.terms) {
                        (void)tm;
                        if (!x.term(m + 1)) continue;
                        ModuleMap d0 = x.diff_or_zero(m);
                        for (int v = 0; v < alg->vertices(); ++v, ++slot) {
                            // effect on delta^m at vertex v: xi^{m+1} d - d xi^m
                            if (v != vtx) continue;
                            if (m + 1 == n)
                                for (int c = 0; c < static_cast<int>(d0.comps[v].cols()); ++c)
                                    dir[slot].at(i, c) =
                                        F.add(dir[slot].at(i, c), d0.comps[v].at(j, c));
                            if (m == n)
                                for (int r = 0; r < static_cast<int>(d0.comps[v].rows()); ++r)
                                    dir[slot].at(r, j) =
                                        F.sub(dir[slot].at(r, j), d0.comps[v].at(r, i));
                        }
                    }
                    ls.conj_cols.push_back(flatten_state_direction(ls, dir));
                }
    return ls;
}

State complex_state(const ComplexLift& l, const LiftShape& ls) {
    State st;
    st.reserve(ls.shapes.size());
    for (const auto& [n, t] : l.base.terms)
        for (std::size_t a = 0; a < t.action.size(); ++a) st.push_back(l.action.at(n)[a]);
    for (const auto& [n, t] : l.base.terms) {
        (void)t;
        if (!l.base.term(n + 1)) continue;
        for (int v = 0; v < l.base.alg->vertices(); ++v) st.push_back(l.diff.at(n)[v]);
    }
    return st;
}

ComplexLift state_to_complex_lift(const Complex& x, const ArtinAlgebra& R, const State& st) {
    ComplexLift l{x, R, {}, {}};
    std::size_t slot = 0;
    for (const auto& [n, t] : x.terms) {
        std::vector<std::vector<Mat>> per_arrow;
        for (std::size_t a = 0; a < t.action.size(); ++a) per_arrow.push_back(st[slot++]);
        l.action.emplace(n, std::move(per_arrow));
    }
    for (const auto& [n, t] : x.terms) {
        (void)t;
        if (!x.term(n + 1)) continue;
        std::vector<std::vector<Mat>> per_vertex;
        for (int v = 0; v < x.alg->vertices(); ++v) per_vertex.push_back(st[slot++]);
        l.diff.emplace(n, std::move(per_vertex));
    }
    return l;
}

}  // namespace

ComplexLift trivial_complex_lift(Complex x, ArtinAlgebra R) {
    x.normalize();
    LiftShape ls = complex_shape(x);
    return state_to_complex_lift(x, R, base_state(ls, R));
}

void validate_complex_lift(const ComplexLift& l) {
    LiftShape ls = complex_shape(l.base);
    if (!ls.defect(l.R, complex_state(l, ls)).is_zero())
        throw DeformError("complex lift violates relations or differential identities");
}

std::optional<ComplexLift> extend_complex_lift(const ComplexLift& l, const SmallExtension& e) {
    LiftShape ls = complex_shape(l.base);
    State st = complex_state(l, ls);
    ArtinAlgebra from = l.R;
    if (l.R.ring()->order() != e.small.ring()->order()) {
        ArtinAlgebra reb = l.R.rebase(
            std::make_shared<PolyRing>(l.R.field(), l.R.ring()->vars(), e.small.ring()->order()));
        st = transport_state(ls, st, l.R, reb);
        from = reb;
    }
    if (!artin_equal(from, e.small)) throw DeformError("lift ring differs from the extension target");
    Mat D = derivative_matrix(ls);
    if (!try_extend(ls, D, st, from, e.big)) return std::nullopt;
    return state_to_complex_lift(l.base, e.big, st);
}

bool complex_lifts_isomorphic(const ComplexLift& a, const ComplexLift& b) {
    // strict model: termwise R-isomorphisms commuting with the lifted
    // differentials and reducing to the identity
    if (a.base.alg != b.base.alg) throw DeformError("lifts over different algebras");
    if (!artin_equal(a.R, b.R)) throw DeformError("lifts over different rings");
    LiftShape ls = complex_shape(a.base);
    State sa = complex_state(a, ls), sb = complex_state(b, ls);
    const Field F = a.base.alg->field();
    const ArtinAlgebra& R = a.R;
    // unknowns: per (term, vertex) matrices at monomials != 1
    struct Unk {
        int n, v, i, j, w;
    };
    std::vector<Unk> unks;
    for (const auto& [n, t] : a.base.terms)
        for (int v = 0; v < a.base.alg->vertices(); ++v)
            for (int i = 0; i < t.dims[v]; ++i)
                for (int j = 0; j < t.dims[v]; ++j)
                    for (int w = 1; w < R.dim(); ++w) unks.push_back({n, v, i, j, w});
    auto condition = [&](const std::map<int, std::vector<std::vector<Mat>>>& f) {
        // per term: f^n_tgt A - B f^n_src; per diff: f^{n+1} dA - dB f^n
        std::vector<std::vector<Mat>> vals;
        std::size_t slot = 0;
        std::map<int, std::size_t> term_slot0;
        for (const auto& [n, t] : a.base.terms) {
            term_slot0[n] = slot;
            slot += t.action.size();
        }
        std::map<int, std::size_t> diff_slot0;
        for (const auto& [n, t] : a.base.terms) {
            (void)t;
            if (!a.base.term(n + 1)) continue;
            diff_slot0[n] = slot;
            slot += a.base.alg->vertices();
        }
        for (const auto& [n, t] : a.base.terms) {
            for (std::size_t ar = 0; ar < t.action.size(); ++ar) {
                const auto& arrow = a.base.alg->quiver().arrows[ar];
                auto lhs = pm_mul(R, f.at(n)[arrow.tgt], sa[term_slot0[n] + ar]);
                auto rhs = pm_mul(R, sb[term_slot0[n] + ar], f.at(n)[arrow.src]);
                std::vector<Mat> d(R.dim(), Mat(F, 0, 0));
                for (int w = 0; w < R.dim(); ++w) d[w] = lhs[w].sub(rhs[w]);
                vals.push_back(std::move(d));
            }
        }
        for (const auto& [n, t] : a.base.terms) {
            (void)t;
            if (!a.base.term(n + 1)) continue;
            for (int v = 0; v < a.base.alg->vertices(); ++v) {
                auto lhs = pm_mul(R, f.at(n + 1)[v], sa[diff_slot0[n] + v]);
                auto rhs = pm_mul(R, sb[diff_slot0[n] + v], f.at(n)[v]);
                std::vector<Mat> d(R.dim(), Mat(F, 0, 0));
                for (int w = 0; w < R.dim(); ++w) d[w] = lhs[w].sub(rhs[w]);
                vals.push_back(std::move(d));
            }
        }
        return pm_flatten(F, vals, R.dim());
    };
    auto make_f = [&](const Unk* u) {
        std::map<int, std::vector<std::vector<Mat>>> f;
        for (const auto& [n, t] : a.base.terms) {
            std::vector<std::vector<Mat>> per_v;
            for (int v = 0; v < a.base.alg->vertices(); ++v) {
                std::vector<Mat> pm(R.dim(), Mat(F, t.dims[v], t.dims[v]));
                if (u == nullptr) pm[0] = Mat::identity(F, t.dims[v]);
                per_v.push_back(std::move(pm));
            }
            f.emplace(n, std::move(per_v));
        }
        if (u) f.at(u->n)[u->v][u->w].at(u->i, u->j) = F.one();
        return f;
    };
    Mat c0 = condition(make_f(nullptr));
    Mat rhs(F, c0.rows() * c0.cols(), 1);
    {
        std::size_t k = 0;
        for (std::size_t i = 0; i < c0.rows(); ++i)
            for (std::size_t j = 0; j < c0.cols(); ++j) rhs.at(k++, 0) = F.neg(c0.at(i, j));
    }
    Mat sys(F, c0.rows() * c0.cols(), unks.size());
    for (std::size_t u = 0; u < unks.size(); ++u) {
        Mat cu = condition(make_f(&unks[u]));
        std::size_t k = 0;
        for (std::size_t i = 0; i < cu.rows(); ++i)
            for (std::size_t j = 0; j < cu.cols(); ++j) sys.at(k++, u) = cu.at(i, j);
    }
    return solve(sys, rhs).has_value();
}

std::optional<ComplexLift> lift_complex(const Complex& x0, const ArtinAlgebra& R) {
    Complex x = x0;
    x.normalize();
    LiftShape ls = complex_shape(x);
    Mat D = derivative_matrix(ls);
    const Field F = x.alg->field();
    auto ring = R.ring();
    // climb the m-adic filtration of R
    auto layer = [&](int j) {
        std::vector<Poly> span = R.ideal_rows();
        for (int i = 0; i < ring->count(); ++i)
            if (ring->monomials()[i].degree() > j) {
                Poly p = zero_poly(ring);
                p.c[i] = F.one();
                span.push_back(std::move(p));
            }
        return ArtinAlgebra::from_subspace(ring, span);
    };
    ArtinAlgebra cur = layer(0);
    State st = base_state(ls, cur);
    for (int j = 1; j <= ring->order(); ++j) {
        ArtinAlgebra next = layer(j);
        if (!try_extend(ls, D, st, cur, next)) return std::nullopt;
        cur = next;
    }
    return state_to_complex_lift(x, cur, st);
}

VersalPresentation versal_presentation_complex(const Complex& x0, int order) {
    if (order < 1) throw DeformError("order must be >= 1");
    Complex x = x0;
    x.normalize();
    LiftShape ls = complex_shape(x);
    auto cols = tangent_columns(ls);
    int r = static_cast<int>(cols.size());
    std::vector<std::string> names;
    if (r == 1)
        names = {"t"};
    else
        for (int i = 1; i <= r; ++i) names.push_back("t" + std::to_string(i));
    VersalCore core = run_versal(ls, names, order, cols);
    VersalPresentation out;
    out.vars = r;
    out.var_names = names;
    out.relations = core.ring.minimal_generators();
    out.order = order;
    out.exact = core.exact;
    bool all_gp = true;
    for (const auto& [n, t] : x.terms) {
        (void)n;
        if (is_gorenstein_projective(t, 2 * x.alg->dim()).status != GPVerdict::Status::Yes)
            all_gp = false;
    }
    out.universal_claimed = false;
    if (all_gp && !x.empty()) {
        try {
            out.universal_claimed = hom_singularity_dim(x, x, 2 * x.alg->dim()) == 1;
        } catch (const ComplexError&) {
            out.universal_claimed = false;
        }
    }
    out.ring = core.ring;
    return out;
}

}  // namespace gpd
