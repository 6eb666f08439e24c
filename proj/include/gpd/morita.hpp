#pragma once

#include "gpd/deform.hpp"

namespace gpd {

class MoritaError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A (left, right)-bimodule realized as a representation of left (x) right^op.
struct Bimodule {
    std::shared_ptr<const Algebra> left;   // Γ
    std::shared_ptr<const Algebra> right;  // Λ
    std::shared_ptr<const Algebra> env;    // Γ (x) Λ^op
    Rep rep;
};

Bimodule make_bimodule(std::shared_ptr<const Algebra> left, std::shared_ptr<const Algebra> right,
                       Rep rep_over_env);
/// Λ as a (Λ,Λ)-bimodule.
Bimodule identity_bimodule(const std::shared_ptr<const Algebra>& a);
/// Λ (x)_k Λ with the outer actions (a free bimodule of rank one).
Bimodule tensor_square_bimodule(const std::shared_ptr<const Algebra>& a);
/// Λ with the right action twisted by a quiver automorphism
/// (vertex_perm, arrow_perm); the permutations must preserve the relations.
Bimodule twisted_identity_bimodule(const std::shared_ptr<const Algebra>& a,
                                   const std::vector<int>& vertex_perm,
                                   const std::vector<int>& arrow_perm);
Bimodule bimodule_direct_sum(const Bimodule& a, const Bimodule& b);

Rep left_restriction(const Bimodule& x);   // module over Γ
Rep right_restriction(const Bimodule& x);  // module over Λ^op

/// X (x)_Λ Y as a (Γ, Δ)-bimodule, computed as the cokernel of the
/// balancing map.
Bimodule bimodule_tensor(const Bimodule& x, const Bimodule& y);

/// X (x)_Λ v for a left Λ-module v; result is a left Γ-module.
Rep transport_module(const Bimodule& x, const Rep& v);
Complex transport_complex(const Bimodule& x, const Complex& c);

/// Hom over the left algebra into it, carrying the induced left module
/// structure over the bimodule's right algebra: Hom_Γ(X, Γ).
Rep hom_into_left_algebra(const Bimodule& x);

struct ProjDimResult {
    enum class Kind { Finite, Infinite, Unknown };
    Kind kind = Kind::Unknown;
    int dim = -1;               // for Finite
    int period_start = -1, period_end = -1;  // Infinite witness
    int cutoff = 0;
};
ProjDimResult projdim(const Rep& m, int cutoff);

struct SingEquivReport {
    // (i) X side-projective, (ii) Y side-projective,
    // (iii) X (x) Y = Γ + Q with Q of finite projective dimension,
    // (iv) Y (x) X = Λ + P likewise,
    // (v), (vi): Hom_Γ(X,Γ) and Hom_Λ(Y,Λ) of finite projective dimension.
    enum class Verdict { Yes, No, Unknown };
    Verdict x_side_projective = Verdict::Unknown;
    Verdict y_side_projective = Verdict::Unknown;
    Verdict xy_splits = Verdict::Unknown;
    Verdict yx_splits = Verdict::Unknown;
    Verdict hom_x_finite = Verdict::Unknown;
    Verdict hom_y_finite = Verdict::Unknown;
    ProjDimResult q_projdim, p_projdim, hom_x_projdim, hom_y_projdim;
    std::optional<Bimodule> q_complement;  // over (Γ,Γ)
    std::optional<Bimodule> p_complement;  // over (Λ,Λ)
    bool certified() const;
};
SingEquivReport check_singular_equivalence(const Bimodule& x, const Bimodule& y, int cutoff);

/// P (x)_Λ v must be projective when P is the complement of a certified
/// equivalence and v is Gorenstein projective.
bool verify_p_tensor_projective(const Bimodule& p, const Rep& v);

/// Compares versal presentations of v and of its transport up to an
/// invertible graded substitution of the variables (exhaustive over small
/// prime fields, height-2 integer grid over the rationals).
bool verify_transport_invariance(const Bimodule& x, const Rep& v, int order);
bool verify_transport_invariance_complex(const Bimodule& x, const Complex& v, int order);

}  // namespace gpd
