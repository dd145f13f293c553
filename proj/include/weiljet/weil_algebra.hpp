#pragma once
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "weiljet/exponents.hpp"
#include "weiljet/scalar.hpp"

namespace weiljet {

class Algebra;
class MonomialAlgebra;
class WeilElement;

using AlgebraPtr = std::shared_ptr<const Algebra>;
using MonomialPtr = std::shared_ptr<const MonomialAlgebra>;

// A Weil algebra over the base ring: K plus a free, finite-rank nilpotent
// ideal. Two concrete presentations exist: monomial quotients (built from
// presets and closed under tensor / fibered sum) and raw structure-constant
// tables. Immutable after construction.
class Algebra {
public:
    enum class Kind : uint8_t { monomial, table };

    virtual ~Algebra() = default;

    Kind kind() const { return kind_; }
    const Ring& ring() const { return ring_; }
    int dim() const { return dim_; }
    int unit_index() const { return unit_index_; }
    // Coordinates of the augmentation functional (projection onto K).
    const std::vector<Scalar>& augmentation() const { return augmentation_; }
    // Degree of each basis element; empty when the algebra carries no grading.
    const std::vector<int>& grading() const { return grading_; }
    bool graded() const { return !grading_.empty(); }
    int top_grade() const;
    // Smallest q with N^q = 0, or -1 when the kernel is not nilpotent.
    int nilpotency() const { return nilpotency_; }

    virtual std::string describe() const = 0;

    // Streams the structure-constant terms of e_i * e_j as (index, coeff).
    virtual void for_product(int i, int j,
                             const std::function<void(int, const Scalar&)>& fn) const = 0;

    // Structural fingerprint; two algebras with equal signatures are treated
    // as identical presentations.
    uint64_t signature() const { return signature_; }

protected:
    Algebra(Kind kind, Ring ring) : kind_(kind), ring_(std::move(ring)) {}

    Kind kind_;
    Ring ring_;
    int dim_ = 0;
    int unit_index_ = 0;
    std::vector<Scalar> augmentation_;
    std::vector<int> grading_;
    int nilpotency_ = 1;
    uint64_t signature_ = 0;
};

bool same_algebra(const Algebra& a, const Algebra& b);

// Contiguous variable range with its own total-degree cap. Tensor and
// fibered-sum constructions keep one block per underlying preset, so the
// factor caps survive when the result is itself used as a factor.
struct Block {
    int offset, count, cap;
};

// Quotient of K[X1..Xn] by all monomials exceeding a block's degree cap
// together with the extra generators. Basis: surviving monomials in
// graded-lex order, constant first. Products of basis monomials are single
// monomials or zero, so multiplication is an index table.
class MonomialAlgebra final : public Algebra {
public:
    int nvars() const { return nvars_; }
    // Sum of the block caps: every basis monomial has total degree <= cap().
    int cap() const { return cap_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    const std::vector<Exp>& extra_gens() const { return extra_gens_; }
    const std::vector<Exp>& basis() const { return basis_; }
    const Exp& basis_monomial(int i) const { return basis_[i]; }
    // -1 when the monomial is not in the basis.
    int monomial_index(const Exp& e) const;
    // Basis index of e_i * e_j, or -1 when the product is zero.
    int32_t product_index(int i, int j) const { return table_[i * dim_ + j]; }

    bool is_tensor() const { return static_cast<bool>(left_); }
    const MonomialPtr& tensor_left() const { return left_; }
    const MonomialPtr& tensor_right() const { return right_; }

    std::string describe() const override { return label_; }
    void for_product(int i, int j,
                     const std::function<void(int, const Scalar&)>& fn) const override;

    static MonomialPtr make(const Ring& ring, int nvars, int cap,
                            std::vector<Exp> extra_gens, std::string label);

private:
    friend MonomialPtr tensor(const MonomialPtr&, const MonomialPtr&);
    friend struct MonomialBuilder;

    MonomialAlgebra(const Ring& ring) : Algebra(Kind::monomial, ring) {}

    int nvars_ = 0;
    int cap_ = 0;
    std::vector<Block> blocks_;
    std::vector<Exp> extra_gens_;
    std::vector<Exp> basis_;
    std::map<Exp, int, GradedLexLess> index_;
    std::vector<int32_t> table_;
    MonomialPtr left_, right_; // set when built by tensor()
    std::string label_;
};

// K[X]/(X^{k+1}); dim k+1.
MonomialPtr make_jet(const Ring& ring, int k);
// K[X1..Xk]/(Xi^2 for all i); dim 2^k.
MonomialPtr make_tangent(const Ring& ring, int k);
// K[X1..Xn]/(degree > r); dim C(n+r, r).
MonomialPtr make_truncated(const Ring& ring, int n, int r);
MonomialPtr make_custom(const Ring& ring, int n, int r, std::vector<Exp> extra_gens);

// Tensor product: disjoint variables, per-factor degree caps, generator
// unions; dim(A) * dim(B). Remembers its factors for flip().
MonomialPtr tensor(const MonomialPtr& A, const MonomialPtr& B);
// Fibered ("Whitney") sum: tensor with all mixed variable products killed;
// dim(A) + dim(B) - 1.
MonomialPtr whitney_sum(const MonomialPtr& A, const MonomialPtr& B);

// Explicit structure-constant table; dims stay small. The constructor never
// validates: feed questionable tables to validate().
class TableAlgebra final : public Algebra {
public:
    TableAlgebra(const Ring& ring, int dim,
                 std::vector<std::vector<Scalar>> table, // row i*dim+j = e_i e_j
                 int unit_index, std::vector<Scalar> augmentation,
                 std::vector<int> grading = {});

    const std::vector<Scalar>& product_row(int i, int j) const {
        return table_[static_cast<size_t>(i) * dim_ + j];
    }

    std::string describe() const override;
    void for_product(int i, int j,
                     const std::function<void(int, const Scalar&)>& fn) const override;

    // Densify any algebra into table form.
    static std::shared_ptr<const TableAlgebra> from_algebra(const AlgebraPtr& a);

private:
    std::vector<std::vector<Scalar>> table_;
};

// Element with dense coefficients in basis order.
class WeilElement {
public:
    WeilElement(AlgebraPtr algebra, std::vector<Scalar> coeffs);

    static WeilElement zero(const AlgebraPtr& a);
    static WeilElement unit(const AlgebraPtr& a);
    static WeilElement basis(const AlgebraPtr& a, int i);

    const AlgebraPtr& algebra() const { return alg_; }
    const std::vector<Scalar>& coeffs() const { return c_; }
    const Scalar& coeff(int i) const { return c_[i]; }

    bool is_zero() const;
    // Augmentation in K; the element is a unit exactly when this is.
    Scalar project() const;
    WeilElement nilpotent_part() const;
    bool is_unit() const { return project().is_unit(); }
    // Geometric-series inverse through the nilpotent ideal.
    WeilElement inv() const;
    WeilElement pow(uint32_t n) const;

    WeilElement operator-() const;
    WeilElement operator+(const WeilElement& o) const;
    WeilElement operator-(const WeilElement& o) const;
    WeilElement operator*(const WeilElement& o) const;
    WeilElement operator*(const Scalar& s) const;
    WeilElement& operator+=(const WeilElement& o) { return *this = *this + o; }
    WeilElement& operator-=(const WeilElement& o) { return *this = *this - o; }
    WeilElement& operator*=(const WeilElement& o) { return *this = *this * o; }
    bool operator==(const WeilElement& o) const;
    bool operator!=(const WeilElement& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    void require_same(const WeilElement& o) const;

    AlgebraPtr alg_;
    std::vector<Scalar> c_;
};

inline WeilElement operator*(const Scalar& s, const WeilElement& x) { return x * s; }

WeilElement embed(const AlgebraPtr& a, const Scalar& t);
Scalar project(const WeilElement& x);

// Coefficientwise r^degree rescaling; an automorphism for unit r.
WeilElement scale_action(const Scalar& r, const WeilElement& x);

// Swap the factors of an element of tensor(A, B); the result lives in
// tensor(B, A).
WeilElement flip(const WeilElement& x);

// Slice of x in the given degree.
WeilElement graded_component(const WeilElement& x, int d);

// Graded composition product: u_i = sum_{j<=i} b_j * (sum of a_{a0}...a_{aj}
// over compositions a0+...+aj = i-j). Associative and right-distributive;
// left distributivity fails.
WeilElement star(const WeilElement& b, const WeilElement& a);
// Two-sided star inverse of a (requires unit degree-0 part).
WeilElement star_inverse(const WeilElement& a);
// The endomorphism attached to a, applied to b:
// w_i = sum_{j<=i} b_j * (sum of a_{a1}...a_{aj} over a1+...+aj = i-j).
// Multiplicative in b; graded_endo(a2) o graded_endo(a1) = graded_endo(star(a1, a2)).
WeilElement graded_endo(const WeilElement& a, const WeilElement& b);

// Linear map between algebras, stored as images of the source basis.
class MorphismMatrix {
public:
    MorphismMatrix(AlgebraPtr source, AlgebraPtr target,
                   std::vector<WeilElement> basis_images);

    // Extend variable images multiplicatively over a monomial source basis.
    static MorphismMatrix from_variable_images(const MonomialPtr& source,
                                               const AlgebraPtr& target,
                                               const std::vector<WeilElement>& images);

    const AlgebraPtr& source() const { return src_; }
    const AlgebraPtr& target() const { return dst_; }
    const WeilElement& image(int j) const { return cols_[j]; }

    // Unit to unit, multiplicative on all basis pairs, nilpotent ideal into
    // nilpotent ideal. Cached after the first call.
    bool check() const;
    const std::string& violation() const; // empty when check() passes
    // NotAMorphismError when check() fails.
    WeilElement apply(const WeilElement& x) const;

private:
    void run_check() const;

    AlgebraPtr src_, dst_;
    std::vector<WeilElement> cols_;
    mutable std::once_flag checked_;
    mutable bool ok_ = false;
    mutable std::string violation_;
};

// Monomial-to-monomial morphism sending each surviving source monomial to the
// same monomial in the target (zero when absent); source and target must share
// the variable count. Covers jet(k) -> jet(j) truncation.
MorphismMatrix basis_truncation(const MonomialPtr& source, const MonomialPtr& target);
// A -> K (presented as the 0-variable truncated algebra).
MorphismMatrix augmentation_morphism(const AlgebraPtr& a);

struct ValidationReport {
    bool ok = true;
    std::string violation; // first failure, empty when ok
};

// Commutativity, associativity, unit laws, augmentation multiplicativity,
// grading compatibility (when present), nilpotency of the augmentation
// kernel. Monomial presentations get the structural fast path.
ValidationReport validate(const Algebra& a);

} // namespace weiljet
