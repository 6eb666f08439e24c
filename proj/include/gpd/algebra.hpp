#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gpd/linalg.hpp"

namespace gpd {

struct Arrow {
    std::string name;
    int src = 0;
    int tgt = 0;
};

/// Finite quiver. Vertices are 0-based indices.
struct Quiver {
    int vertices = 0;
    std::vector<Arrow> arrows;

    void validate() const;
    int arrow_index(const std::string& name) const;  // -1 when absent
};

/// One term of a relation: coef * path. Arrow indices are stored in
/// application order (first applied arrow first); the written form
/// "g3 g2" (first g2, then g3) is the reverse of this list.
struct RelTerm {
    Scalar coef;
    std::vector<int> arrows;
};
using Relation = std::vector<RelTerm>;

/// Sparse algebra element: (basis index, coefficient) pairs.
using SparseElt = std::vector<std::pair<int, Scalar>>;
/// Dense algebra element over the path basis.
using AlgElt = std::vector<Scalar>;

class AlgebraError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A bound quiver algebra kQ/I with an explicit path basis and
/// multiplication table. Immutable after construction.
class Algebra : public std::enable_shared_from_this<Algebra> {
  public:
    struct BasisPath {
        int src, tgt;
        std::vector<int> arrows;  // application order; empty for e_src
    };

    static std::shared_ptr<const Algebra> build(Field field, Quiver quiver,
                                                std::vector<Relation> relations, int loewy_bound);
    static std::shared_ptr<const Algebra> nakayama(Field field, int n, const std::vector<int>& c);

    const Field& field() const { return field_; }
    const Quiver& quiver() const { return quiver_; }
    int vertices() const { return quiver_.vertices; }
    int dim() const { return static_cast<int>(basis_.size()); }
    int loewy_bound() const { return loewy_bound_; }
    const std::vector<Relation>& relations() const { return relations_; }
    const std::vector<BasisPath>& basis() const { return basis_; }

    /// Basis indices of paths from vertex i to vertex j, ascending.
    const std::vector<int>& paths(int i, int j) const { return paths_[i * vertices() + j]; }
    /// Basis indices of paths with source i (any target), ascending.
    const std::vector<int>& paths_from(int i) const { return paths_from_[i]; }
    int idempotent_index(int v) const { return idem_basis_[v]; }
    int arrow_basis_index(int arrow) const { return arrow_basis_[arrow]; }

    /// Product of basis elements, p * q = "first q, then p" like path
    /// composition; empty when the endpoints do not match.
    const SparseElt& mul_basis(int p, int q) const;
    SparseElt mul_sparse(const SparseElt& x, const SparseElt& y) const;
    AlgElt mul(const AlgElt& x, const AlgElt& y) const;
    AlgElt add(const AlgElt& x, const AlgElt& y) const;
    AlgElt scaled(const AlgElt& x, const Scalar& c) const;
    AlgElt zero_elt() const { return AlgElt(basis_.size(), field_.zero()); }
    AlgElt unit() const;
    AlgElt idempotent(int v) const;
    bool is_zero_elt(const AlgElt& x) const;
    std::string elt_to_string(const AlgElt& x) const;
    std::string path_name(int basis_index) const;  // written form, e.g. "g3*g2" or "e0"

    /// Normal form of an arbitrary arrow word (application order).
    AlgElt word_nf(const std::vector<int>& arrows_app_order) const;

    /// Restriction of x to the corner e_i * x * e_j.
    AlgElt corner(const AlgElt& x, int i, int j) const;
    /// Degree-0 coefficient of x at e_v (x assumed in the corner at v).
    Scalar corner_unit_part(const AlgElt& x, int v) const;
    /// Inverse of a unit of the local corner ring e_v Λ e_v; nullopt when
    /// the e_v-coefficient vanishes.
    std::optional<AlgElt> corner_inverse(const AlgElt& x, int v) const;

    /// Structural sanity check: identity, typing, associativity (exhaustive
    /// on small algebras, sampled otherwise), nilpotency of long words.
    void check() const;

    /// The opposite algebra (cached; opposite of the opposite is the
    /// original object).
    std::shared_ptr<const Algebra> opposite() const;

    /// a (x) b^op as a bound quiver algebra; its representations are
    /// (a,b)-bimodules. Left arrows are named "l:<name>:<col>", right arrows
    /// "r:<name>:<row>".
    static std::shared_ptr<const Algebra> enveloping(const std::shared_ptr<const Algebra>& a,
                                                     const std::shared_ptr<const Algebra>& b);

    struct ProductInfo {
        std::shared_ptr<const Algebra> left;      // a
        std::shared_ptr<const Algebra> right_op;  // b^op
    };
    const std::optional<ProductInfo>& product_info() const { return product_; }
    int pair_vertex(int i, int j) const;        // enveloping vertex of (i, j)
    std::pair<int, int> vertex_pair(int v) const;
    int pair_basis(int p, int q) const;          // enveloping basis of (p, q)

  private:
    Algebra() = default;
    void index_basis();
    static std::shared_ptr<Algebra> make_opposite(const Algebra& a);

    Field field_;
    Quiver quiver_;
    std::vector<Relation> relations_;
    int loewy_bound_ = 1;
    std::vector<BasisPath> basis_;
    std::vector<SparseElt> table_;  // dim x dim, flat
    std::vector<std::vector<int>> paths_;
    std::vector<std::vector<int>> paths_from_;
    std::vector<int> arrow_basis_;
    std::vector<int> idem_basis_;
    std::optional<ProductInfo> product_;
    mutable std::weak_ptr<const Algebra> opposite_cache_;
    mutable std::map<const Algebra*, std::weak_ptr<const Algebra>> env_cache_;
    SparseElt empty_;
};

}  // namespace gpd
