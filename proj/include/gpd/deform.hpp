#pragma once

#include "gpd/complex.hpp"
#include "gpd/rep.hpp"

namespace gpd {

class DeformError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Monomial {
    std::vector<int> exp;
    int degree() const {
        int d = 0;
        for (int e : exp) d += e;
        return d;
    }
    bool operator==(const Monomial& o) const { return exp == o.exp; }
};

/// k[t_1..t_r] truncated at total degree `order`; monomials in ascending
/// graded-lex order (index 0 is the constant monomial).
class PolyRing {
  public:
    PolyRing(Field f, std::vector<std::string> vars, int order);
    const Field& field() const { return field_; }
    int nvars() const { return static_cast<int>(vars_.size()); }
    int order() const { return order_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<Monomial>& monomials() const { return monos_; }
    int count() const { return static_cast<int>(monos_.size()); }
    int mono_index(const Monomial& m) const;  // -1 when truncated away
    int mono_mul(int i, int j) const;         // -1 on overflow
    std::string mono_string(int i) const;

  private:
    Field field_;
    std::vector<std::string> vars_;
    int order_;
    std::vector<Monomial> monos_;
    std::map<std::vector<int>, int> index_;
};

/// Polynomial in a truncated ring: dense over the ring's monomials.
struct Poly {
    std::shared_ptr<const PolyRing> ring;
    std::vector<Scalar> c;
    bool is_zero() const;
};
Poly zero_poly(std::shared_ptr<const PolyRing> ring);
Poly parse_poly(std::shared_ptr<const PolyRing> ring, const std::string& text);
std::string poly_string(const Poly& p);

/// Artin local algebra k[t_1..t_r]/(I + m^{order+1}), the ideal kept as a
/// row-reduced subspace of the monomial space.
class ArtinAlgebra {
  public:
    /// Quotient by the two-sided (here: any) ideal generated by `gens`.
    static ArtinAlgebra quotient(std::shared_ptr<const PolyRing> ring, std::vector<Poly> gens);
    /// Quotient by a subspace which is already an ideal (validated).
    static ArtinAlgebra from_subspace(std::shared_ptr<const PolyRing> ring,
                                      const std::vector<Poly>& span);

    const std::shared_ptr<const PolyRing>& ring() const { return ring_; }
    const Field& field() const { return ring_->field(); }
    int dim() const { return static_cast<int>(qbasis_.size()); }
    /// Quotient-basis monomial ids into the ring's monomial list; index 0 = 1.
    const std::vector<int>& qbasis() const { return qbasis_; }
    int qbasis_pos(int mono_id) const;  // -1 when the monomial is not a basis class

    using RElt = std::vector<Scalar>;  // coordinates over qbasis
    RElt reduce(const Poly& p) const;
    Poly lift(const RElt& x) const;
    RElt zero() const { return RElt(qbasis_.size(), field().zero()); }
    RElt one() const;
    RElt mul(const RElt& x, const RElt& y) const;
    RElt add(const RElt& x, const RElt& y) const;
    bool is_zero(const RElt& x) const;
    /// Structure constants for the product of two basis classes.
    const std::vector<std::pair<int, Scalar>>& table(int i, int j) const;

    /// Smallest d with m^d = 0 in the quotient; order+2 when even the top
    /// truncation layer survives.
    int nilpotency_degree() const;
    /// Rebase to a ring with more variables kept identical but a higher
    /// truncation order.
    ArtinAlgebra rebase(std::shared_ptr<const PolyRing> bigger) const;
    /// The ideal as canonical polynomials (rref rows).
    std::vector<Poly> ideal_rows() const;
    /// Minimal generators of the ideal (Nakayama: a basis modulo m*I).
    std::vector<Poly> minimal_generators() const;

  private:
    ArtinAlgebra() = default;
    void finalize();
    std::shared_ptr<const PolyRing> ring_;
    Mat ideal_;  // rref rows over the ring's monomials
    std::vector<std::size_t> pivots_;
    std::vector<int> qbasis_;
    std::vector<int> qpos_;
    std::vector<std::vector<std::pair<int, Scalar>>> table_;
};

/// Surjection of Artin algebras with one-dimensional kernel killed by the
/// maximal ideal.
struct SmallExtension {
    ArtinAlgebra big, small;
    ArtinAlgebra::RElt socle;  // kernel generator, in big-coordinates
};
SmallExtension make_small_extension(const ArtinAlgebra& big, const ArtinAlgebra& small);

/// A lift of a module: action matrices with entries in R, stored as one
/// k-matrix per quotient-basis monomial; the identification with the base is
/// the literal reduction (coefficient of 1).
struct ModuleLift {
    Rep base;
    ArtinAlgebra R;
    std::vector<std::vector<Mat>> action;  // [arrow][qbasis position]
};
ModuleLift trivial_lift(Rep v, ArtinAlgebra R);
void validate_lift(const ModuleLift& l);
/// The underlying Λ-module of the lift (dimension dim_k(R) * dim V).
Rep lift_as_module(const ModuleLift& l);

/// First-order deformation data of a module.
struct TangentData {
    int dim = 0;
    std::vector<std::vector<Mat>> cocycles;  // tangent basis: [k][arrow]
};
TangentData tangent_data(const Rep& v);
int tangent_dim(const Rep& v);

std::optional<ModuleLift> extend_lift(const ModuleLift& l, const SmallExtension& e);
bool lifts_isomorphic(const ModuleLift& a, const ModuleLift& b);

struct VersalPresentation {
    int vars = 0;
    std::vector<std::string> var_names;
    std::vector<Poly> relations;
    int order = 0;
    bool exact = false;
    bool universal_claimed = false;
    std::optional<ArtinAlgebra> ring;  // truncated hull
    std::optional<ModuleLift> lift;    // versal lift over it (module case)
};
VersalPresentation versal_presentation(const Rep& v, int order);

/// Exhaustive deformation classes over tiny prime fields; the guard
/// dim_k(R) * dim(v) <= 12 is enforced.
std::vector<ModuleLift> enumerate_deformations(const Rep& v, const ArtinAlgebra& R);

/// Termwise lift of a bounded complex: lifted actions plus lifted
/// differentials, strict model.
struct ComplexLift {
    Complex base;
    ArtinAlgebra R;
    std::map<int, std::vector<std::vector<Mat>>> action;  // [degree][arrow][monomial]
    std::map<int, std::vector<std::vector<Mat>>> diff;    // [degree][vertex][monomial]
};
ComplexLift trivial_complex_lift(Complex x, ArtinAlgebra R);
void validate_complex_lift(const ComplexLift& l);
std::optional<ComplexLift> extend_complex_lift(const ComplexLift& l, const SmallExtension& e);
bool complex_lifts_isomorphic(const ComplexLift& a, const ComplexLift& b);
/// Canonical order-by-order lift over R (echelon-normalized corrections);
/// absent when some step obstructs.
std::optional<ComplexLift> lift_complex(const Complex& x, const ArtinAlgebra& R);
VersalPresentation versal_presentation_complex(const Complex& x, int order);

}  // namespace gpd
