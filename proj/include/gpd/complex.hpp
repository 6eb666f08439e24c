#pragma once

#include <map>

#include "gpd/rep.hpp"

namespace gpd {

class ComplexError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bounded cochain complex: ascending degrees, differential raises the
/// degree by one. Zero terms are dropped on normalization.
struct Complex {
    std::shared_ptr<const Algebra> alg;
    std::map<int, Rep> terms;
    std::map<int, ModuleMap> diffs;  // diffs[n]: terms[n] -> terms[n+1]

    bool empty() const { return terms.empty(); }
    int low() const;
    int high() const;
    const Rep* term(int n) const;
    Rep term_or_zero(int n) const;
    ModuleMap diff_or_zero(int n) const;
    void normalize();  // drop zero terms and dangling differentials
};

Complex stalk_complex(Rep m, int degree);
void validate_complex(const Complex& x);

/// (T^i x)^n = x^{n+i}, differential scaled by (-1)^i.
Complex shift(const Complex& x, int i);

struct ChainMap {
    std::map<int, ModuleMap> comps;
    const ModuleMap* comp(int n) const;
};
ChainMap stalk_chain_map(const ModuleMap& f, int degree);
ChainMap chain_map_shift(const ChainMap& f, int i);
void validate_chain_map(const Complex& x, const Complex& y, const ChainMap& f);

/// Standard mapping cone C^n = X^{n+1} (+) Y^n with the triangle maps
/// Y -> C -> TX.
struct Triangle {
    Complex cone;
    ChainMap incl;  // y -> cone
    ChainMap proj;  // cone -> T x
};
Triangle cone_triangle(const Complex& x, const Complex& y, const ChainMap& f);
Complex cone(const Complex& x, const Complex& y, const ChainMap& f);

struct CohomologyData {
    Rep h;
    std::vector<Mat> cycle_basis;  // per vertex, columns inside the term
    ModuleMap project;             // cycles -> h (in cycle coordinates)
};
CohomologyData cohomology_data(const Complex& x, int n);
Rep cohomology(const Complex& x, int n);
std::vector<int> cohomology_dims(const Complex& x);
bool is_acyclic(const Complex& x);
/// Induced map on degree-n cohomology.
Mat induced_cohomology_matrix(const Complex& x, const Complex& y, const ChainMap& f, int n);
bool is_quasi_iso(const Complex& x, const Complex& y, const ChainMap& f);

/// Matrix over the algebra between direct sums of indecomposable
/// projectives; entry (t, s) lies in e_{src[s]} Λ e_{tgt[t]} and acts by
/// right multiplication.
struct AlgMat {
    std::vector<int> src_verts, tgt_verts;
    std::vector<AlgElt> e;  // row-major, rows = tgt summands
    AlgElt& at(int t, int s) { return e[static_cast<std::size_t>(t) * src_verts.size() + s]; }
    const AlgElt& at(int t, int s) const {
        return e[static_cast<std::size_t>(t) * src_verts.size() + s];
    }
};

/// Bounded-above complex of explicit projectives.
struct ProjComplex {
    std::shared_ptr<const Algebra> alg;
    std::map<int, std::vector<int>> verts;
    std::map<int, AlgMat> diffs;  // diffs[n]: degree n -> n+1

    bool empty() const { return verts.empty(); }
    int low() const;
    int high() const;
    ProjModule realize(int n) const;
    Complex realize_complex() const;
    ModuleMap realize_diff(int n) const;  // between realize(n), realize(n+1)
};

/// A projective resolution eps: P -> X (degreewise surjective
/// quasi-isomorphism), truncated below trunc_degree.
struct ResolvedComplex {
    ProjComplex p;
    ChainMap eps;
    Complex x;  // the resolved complex (copy)
    int trunc_degree = 0;
};

/// Builds a projective resolution down to the given lowest degree; minimal
/// after the built-in cancellation pass.
ResolvedComplex proj_resolve_complex(const Complex& x, int lowest_degree);

struct PerfectVerdict {
    enum class Status { Yes, No, Unknown };
    Status status = Status::Unknown;
    std::string reason;
    int cutoff = 0;
    // Yes: a bounded projective complex quasi-isomorphic to the input.
    ProjComplex witness;
    ChainMap witness_eps;
    // No: periodicity of the resolution tail.
    int tail_period_start = 0, tail_period_end = 0;
};
PerfectVerdict is_perfect(const Complex& x, int cutoff);

/// dim Hom_{D^-}(x, T^i y) via the total hom complex of a resolution of x.
int hom_derived_dim(const Complex& x, const Complex& y, int i);

/// dim Hom in the singularity category for complexes all of whose terms are
/// Gorenstein projective (verified; otherwise an error is raised). Computed
/// by collapsing both complexes to syzygy modules at a common degree and
/// stabilizing stable hom dimensions under the syzygy operator.
int hom_singularity_dim(const Complex& x, const Complex& y, int cutoff);

/// The collapse module: X is isomorphic to it (shifted) in the singularity
/// category. Exposed for tests.
Rep sg_collapse(const Complex& x, int at_degree);

}  // namespace gpd
