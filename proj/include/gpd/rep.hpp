#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gpd/algebra.hpp"

namespace gpd {

class RepError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Finite-dimensional module presented as a quiver representation:
/// a dimension vector plus one matrix per arrow (target-dim x source-dim).
struct Rep {
    std::shared_ptr<const Algebra> alg;
    std::vector<int> dims;
    std::vector<Mat> action;

    int total_dim() const;
    bool is_zero() const { return total_dim() == 0; }
    const Field& field() const { return alg->field(); }
};

Rep zero_rep(std::shared_ptr<const Algebra> alg);
Rep simple_rep(std::shared_ptr<const Algebra> alg, int vertex);
/// Throws RepError when shapes are wrong or a relation fails to vanish.
void validate_rep(const Rep& m);
/// Product of the action matrices along a path (application order); the
/// empty path needs the vertex it sits at.
Mat eval_path(const Rep& m, const std::vector<int>& arrows_app_order, int vertex_if_empty = -1);
bool reps_equal(const Rep& a, const Rep& b);

/// A homomorphism of representations: one matrix per vertex.
struct ModuleMap {
    std::vector<Mat> comps;
    bool is_zero() const;
};

void validate_map(const Rep& src, const Rep& tgt, const ModuleMap& f);
ModuleMap zero_map(const Rep& src, const Rep& tgt);
ModuleMap identity_map(const Rep& m);
ModuleMap map_compose(const ModuleMap& late, const ModuleMap& early);  // late ∘ early
ModuleMap map_add(const ModuleMap& f, const ModuleMap& g);
ModuleMap map_sub(const ModuleMap& f, const ModuleMap& g);
ModuleMap map_scaled(const ModuleMap& f, const Scalar& c);
bool map_is_iso(const Rep& src, const Rep& tgt, const ModuleMap& f);

struct HomSpace {
    std::vector<ModuleMap> basis;
    int dim() const { return static_cast<int>(basis.size()); }
};

/// Basis of all intertwiners M -> N (kernel of the commutation system).
HomSpace hom_basis(const Rep& m, const Rep& n);
/// Flattens a map to one coordinate column (vertex-major, row-major).
Mat flatten_map(const ModuleMap& f, const Field& F);
/// Coordinates of f in the given hom basis (solves; throws if not a hom).
Mat coords_in_basis(const HomSpace& hs, const ModuleMap& f, const Field& F);
ModuleMap combo(const HomSpace& hs, const Mat& coeffs_column, const Rep& src, const Rep& tgt);

struct DirectSum {
    Rep sum;
    std::vector<ModuleMap> inj;
    std::vector<ModuleMap> proj;
};
DirectSum direct_sum(const std::vector<Rep>& parts);

/// P = ⊕_s P_{verts[s]} with the canonical path-basis layout.
struct ProjModule {
    Rep rep;
    std::vector<int> verts;
    /// offset[s][w]: first coordinate of summand s inside vertex w.
    std::vector<std::vector<int>> offset;
    bool is_zero() const { return verts.empty(); }
};
ProjModule make_projective(std::shared_ptr<const Algebra> alg, std::vector<int> verts);
/// Λ as a left module over itself (the sum of all indecomposable projectives).
ProjModule regular_rep(std::shared_ptr<const Algebra> alg);
Rep indecomposable_projective(std::shared_ptr<const Algebra> alg, int vertex);
/// Right multiplication by u in e_i Λ e_j, as a map P_i -> P_j.
ModuleMap right_mult_map(const std::shared_ptr<const Algebra>& alg, int i, int j, const AlgElt& u);

/// Per-vertex column spans of the radical (images of all incoming arrows).
std::vector<Mat> radical_span(const Rep& m);

struct Cover {
    ProjModule p;
    ModuleMap pi;  // P -> M, minimal surjection
};
Cover projective_cover(const Rep& m);
bool is_projective(const Rep& m);

struct Syzygy {
    Rep omega;
    ModuleMap incl;  // Ω M -> P
    Cover cover;
};
Syzygy syzygy_with_embedding(const Rep& m);
Rep syzygy(const Rep& m);

struct Resolution {
    std::vector<ProjModule> terms;  // P_0 .. P_k
    std::vector<ModuleMap> diffs;   // diffs[i]: P_{i+1} -> P_i
    ModuleMap aug;                  // P_0 -> M
    std::vector<Rep> syzygies;      // syzygies[i] = Ω^i M, starting at i = 0 (= M)
    /// Index of the first zero term, or -1 when the cutoff was reached.
    int terminated_at = -1;
};
Resolution min_proj_resolution(const Rep& m, int length);

int ext_dim(const Rep& m, const Rep& n, int i);
/// Ext^0..Ext^upto in one resolution pass.
std::vector<int> ext_dims_sweep(const Rep& m, const Rep& n, int upto);

/// M^† = Hom(M, Λ) as a module over the opposite algebra.
Rep dual_wrt_algebra(const Rep& m);
/// The evaluation M -> M^††; second component is the double dual itself.
std::pair<ModuleMap, Rep> double_dual_map(const Rep& m);

struct StableHom {
    int dim = 0;
    std::vector<ModuleMap> coset_reps;
    int full_hom_dim = 0;
};
/// Hom(M,N) modulo maps factoring through a projective (equivalently,
/// through the projective cover of N).
StableHom stable_hom(const Rep& m, const Rep& n);

struct GPVerdict {
    enum class Status { Yes, No, Unknown };
    Status status = Status::Unknown;
    std::string reason;
    int cutoff = 0;
    // Yes-certificate: syzygy periodicity windows on both sides.
    int period_start = -1, period_len = 0;
    int dual_period_start = -1, dual_period_len = 0;
    // No-certificate: the failing condition.
    int failing_ext_index = 0;       // i with Ext^i(M, Λ) != 0 (or dual side)
    bool failing_on_dual = false;
    bool double_dual_failed = false;
    int finite_projdim = -1;         // set when pd < ∞ forced the verdict
};
GPVerdict is_gorenstein_projective(const Rep& m, int cutoff);

/// Direct string module for a word given in written order
/// (["g3","g2"] = first g2, then g3). Formal inverses are rejected.
Rep string_module(std::shared_ptr<const Algebra> alg, const std::vector<std::string>& word,
                  int at_vertex = -1);

/// Sub-representation spanned by the given per-vertex column spans
/// (must be closed under the action).
std::pair<Rep, ModuleMap> sub_rep(const Rep& m, const std::vector<Mat>& span);
/// Quotient by the span (canonical complement coordinates).
std::pair<Rep, ModuleMap> quotient_rep(const Rep& m, const std::vector<Mat>& span);

enum class IsoVerdict { Iso, NotIso, Unknown };
std::optional<ModuleMap> try_isomorphism(const Rep& m, const Rep& n);
IsoVerdict iso_verdict(const Rep& m, const Rep& n, std::optional<ModuleMap>* witness = nullptr);

/// Indecomposable direct summands with multiplicities, canonically ordered.
std::vector<std::pair<Rep, int>> decompose(const Rep& m);

}  // namespace gpd
