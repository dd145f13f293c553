#include "weiljet/weil_algebra.hpp"

#include <algorithm>

namespace weiljet {

namespace {

constexpr int kDimLimit = 4096;

uint64_t fnv1a(uint64_t h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    h ^= 0xff;
    h *= 0x100000001b3ull;
    return h;
}

// Upper bound for nilpotency powering before declaring the kernel
// non-nilpotent. Over Z/m the base ring itself carries nilpotents, which
// stretches the order beyond the dimension bound valid over fields.
int nilpotency_bound(const Ring& ring, int dim) {
    if (ring.is_rationals()) return dim + 1;
    int log2m = 1;
    while ((1ull << log2m) < ring.modulus()) ++log2m;
    return (dim + 1) * (1 + log2m);
}

// A monomial survives when it respects every block's degree cap and no extra
// generator divides it. Blocks carry the per-factor caps of tensor and
// fibered-sum constructions; plain presets have a single block.
struct Survival {
    std::vector<Block> blocks;
    const std::vector<Exp>* gens;

    bool alive(const Exp& e) const {
        for (const auto& b : blocks) {
            int d = 0;
            for (int v = 0; v < b.count; ++v) d += static_cast<int>(e[b.offset + v]);
            if (d > b.cap) return false;
        }
        for (const auto& g : *gens)
            if (exp_divides(g, e)) return false;
        return true;
    }
};

void enumerate_basis(const Survival& sv, const std::vector<uint32_t>& var_bound,
                     Exp& cur, size_t v, int remaining, std::vector<Exp>& out) {
    if (static_cast<int>(out.size()) > kDimLimit) return;
    if (v == cur.size()) {
        if (sv.alive(cur)) out.push_back(cur);
        return;
    }
    const uint32_t hi =
        std::min<uint32_t>(var_bound[v], static_cast<uint32_t>(remaining));
    for (uint32_t x = 0; x <= hi; ++x) {
        cur[v] = x;
        enumerate_basis(sv, var_bound, cur, v + 1, remaining - static_cast<int>(x), out);
    }
    cur[v] = 0;
}

} // namespace

struct MonomialBuilder {
    static std::shared_ptr<MonomialAlgebra> build(const Ring& ring, int nvars,
                                                  std::vector<Block> blocks,
                                                  std::vector<Exp> extra_gens,
                                                  std::string label) {
        for (const auto& g : extra_gens) {
            if (static_cast<int>(g.size()) != nvars)
                throw InvalidPresetError("generator arity mismatch");
            if (total_degree(g) == 0)
                throw InvalidPresetError("constant generator collapses the algebra");
        }

        int cap_total = 0;
        for (const auto& b : blocks) cap_total += b.cap;

        auto a = std::shared_ptr<MonomialAlgebra>(new MonomialAlgebra(ring));
        a->nvars_ = nvars;
        a->cap_ = cap_total;
        a->blocks_ = std::move(blocks);
        a->extra_gens_ = std::move(extra_gens);
        a->label_ = std::move(label);

        Survival sv{a->blocks_, &a->extra_gens_};

        std::vector<uint32_t> bound(nvars, 0);
        for (const auto& b : sv.blocks)
            for (int v = 0; v < b.count; ++v)
                bound[b.offset + v] = static_cast<uint32_t>(b.cap);
        // Pure-power generators bound their variable directly; keeps the
        // enumeration tight for tangent-type presentations.
        for (const auto& g : a->extra_gens_) {
            int nz = -1;
            bool pure = true;
            for (int v = 0; v < nvars; ++v)
                if (g[v]) {
                    if (nz >= 0) pure = false;
                    nz = v;
                }
            if (pure && nz >= 0) bound[nz] = std::min(bound[nz], g[nz] - 1);
        }

        Exp cur(nvars, 0);
        enumerate_basis(sv, bound, cur, 0, cap_total, a->basis_);
        if (static_cast<int>(a->basis_.size()) > kDimLimit)
            throw InvalidPresetError("presentation dimension exceeds limit");
        std::sort(a->basis_.begin(), a->basis_.end(), GradedLexLess{});

        a->dim_ = static_cast<int>(a->basis_.size());
        for (int i = 0; i < a->dim_; ++i) a->index_.emplace(a->basis_[i], i);
        a->unit_index_ = 0; // graded-lex puts the constant first

        a->grading_.resize(a->dim_);
        int maxdeg = 0;
        for (int i = 0; i < a->dim_; ++i) {
            a->grading_[i] = static_cast<int>(total_degree(a->basis_[i]));
            maxdeg = std::max(maxdeg, a->grading_[i]);
        }
        a->nilpotency_ = maxdeg + 1;

        a->augmentation_.assign(a->dim_, Scalar::zero(ring));
        a->augmentation_[0] = Scalar::one(ring);

        a->table_.assign(static_cast<size_t>(a->dim_) * a->dim_, -1);
        for (int i = 0; i < a->dim_; ++i)
            for (int j = i; j < a->dim_; ++j) {
                Exp e = exp_add(a->basis_[i], a->basis_[j]);
                int32_t idx = -1;
                if (sv.alive(e)) {
                    auto it = a->index_.find(e);
                    idx = it == a->index_.end() ? -1 : it->second;
                }
                a->table_[static_cast<size_t>(i) * a->dim_ + j] = idx;
                a->table_[static_cast<size_t>(j) * a->dim_ + i] = idx;
            }

        uint64_t h = fnv1a(0xcbf29ce484222325ull, "monomial|" + ring.to_string());
        for (const auto& e : a->basis_) h = fnv1a(h, monomial_string(e));
        a->signature_ = h;
        return a;
    }
};

int Algebra::top_grade() const {
    if (grading_.empty()) return -1;
    return *std::max_element(grading_.begin(), grading_.end());
}

bool same_algebra(const Algebra& a, const Algebra& b) {
    return &a == &b || (a.signature() == b.signature() && a.dim() == b.dim() &&
                        a.ring() == b.ring());
}

// --- MonomialAlgebra -------------------------------------------------------

int MonomialAlgebra::monomial_index(const Exp& e) const {
    auto it = index_.find(e);
    return it == index_.end() ? -1 : it->second;
}

void MonomialAlgebra::for_product(
    int i, int j, const std::function<void(int, const Scalar&)>& fn) const {
    const int32_t idx = product_index(i, j);
    if (idx >= 0) fn(idx, Scalar::one(ring_));
}

namespace {

// Relabel both factors' generators into the joint variable list.
std::vector<Exp> joint_generators(const MonomialAlgebra& A, const MonomialAlgebra& B) {
    std::vector<Exp> gens;
    const int n = A.nvars() + B.nvars();
    for (const auto& g : A.extra_gens()) {
        Exp e(n, 0);
        std::copy(g.begin(), g.end(), e.begin());
        gens.push_back(std::move(e));
    }
    for (const auto& g : B.extra_gens()) {
        Exp e(n, 0);
        std::copy(g.begin(), g.end(), e.begin() + A.nvars());
        gens.push_back(std::move(e));
    }
    return gens;
}

std::vector<Block> joint_blocks(const MonomialAlgebra& A, const MonomialAlgebra& B);

} // namespace

MonomialPtr MonomialAlgebra::make(const Ring& ring, int nvars, int cap,
                                  std::vector<Exp> extra_gens, std::string label) {
    if (nvars < 0 || cap < 0)
        throw InvalidPresetError("negative variable count or degree cap");
    return MonomialBuilder::build(ring, nvars, {{0, nvars, cap}}, std::move(extra_gens),
                              std::move(label));
}

MonomialPtr make_jet(const Ring& ring, int k) {
    if (k < 0) throw InvalidPresetError("jet order must be >= 0");
    return MonomialAlgebra::make(ring, 1, k, {}, "jet:" + std::to_string(k));
}

MonomialPtr make_tangent(const Ring& ring, int k) {
    if (k < 0) throw InvalidPresetError("tangent order must be >= 0");
    std::vector<Exp> gens;
    for (int i = 0; i < k; ++i) {
        Exp g(k, 0);
        g[i] = 2;
        gens.push_back(std::move(g));
    }
    return MonomialAlgebra::make(ring, k, k, std::move(gens), "tan:" + std::to_string(k));
}

MonomialPtr make_truncated(const Ring& ring, int n, int r) {
    if (n < 0 || r < 0) throw InvalidPresetError("bad truncated preset");
    return MonomialAlgebra::make(ring, n, r, {},
                                 "trunc:" + std::to_string(n) + "," + std::to_string(r));
}

MonomialPtr make_custom(const Ring& ring, int n, int r, std::vector<Exp> extra_gens) {
    std::string label = "custom(" + std::to_string(n) + "," + std::to_string(r);
    for (const auto& g : extra_gens) label += ";" + monomial_string(g);
    label += ")";
    return MonomialAlgebra::make(ring, n, r, std::move(extra_gens), std::move(label));
}

namespace {

std::vector<Block> joint_blocks(const MonomialAlgebra& A, const MonomialAlgebra& B) {
    // Each factor keeps its own degree caps; factors built by tensor or
    // fibered sum are already multi-block, so concatenate the stored lists.
    std::vector<Block> blocks = A.blocks();
    for (const Block& b : B.blocks())
        blocks.push_back({b.offset + A.nvars(), b.count, b.cap});
    return blocks;
}

} // namespace

MonomialPtr tensor(const MonomialPtr& A, const MonomialPtr& B) {
    if (A->ring() != B->ring())
        throw RingMismatchError("tensor of algebras over different rings");
    if (static_cast<int64_t>(A->dim()) * B->dim() > kDimLimit)
        throw InvalidPresetError("tensor dimension exceeds limit");
    auto raw = MonomialBuilder::build(
        A->ring(), A->nvars() + B->nvars(), joint_blocks(*A, *B),
        joint_generators(*A, *B), "tensor(" + A->describe() + "," + B->describe() + ")");
    raw->left_ = A;
    raw->right_ = B;
    if (raw->dim() != A->dim() * B->dim())
        throw Error("internal: tensor basis is not the product of factor bases");
    return raw;
}

MonomialPtr whitney_sum(const MonomialPtr& A, const MonomialPtr& B) {
    if (A->ring() != B->ring())
        throw RingMismatchError("fibered sum of algebras over different rings");
    const int nvars = A->nvars() + B->nvars();
    std::vector<Exp> gens = joint_generators(*A, *B);
    // Kill every mixed product of the two nilpotent ideals.
    for (int i = 0; i < A->nvars(); ++i)
        for (int j = 0; j < B->nvars(); ++j) {
            Exp e(nvars, 0);
            e[i] = 1;
            e[A->nvars() + j] = 1;
            gens.push_back(std::move(e));
        }
    auto raw = MonomialBuilder::build(
        A->ring(), nvars, joint_blocks(*A, *B), std::move(gens),
        "whitney(" + A->describe() + "," + B->describe() + ")");
    if (raw->dim() != A->dim() + B->dim() - 1)
        throw Error("internal: fibered-sum dimension is not additive");
    return raw;
}

// --- TableAlgebra ----------------------------------------------------------

namespace {

// Powers the augmentation kernel; returns the nilpotency order or -1 when the
// bound is exceeded.
int kernel_nilpotency(const Ring& ring, int dim,
                      const std::vector<std::vector<Scalar>>& table, int unit_index,
                      const std::vector<Scalar>& augmentation) {
    auto mul_vec = [&](const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
        std::vector<Scalar> out(dim, Scalar::zero(ring));
        for (int i = 0; i < dim; ++i) {
            if (x[i].is_zero()) continue;
            for (int j = 0; j < dim; ++j) {
                if (y[j].is_zero()) continue;
                const auto& row = table[static_cast<size_t>(i) * dim + j];
                const Scalar c = x[i] * y[j];
                for (int l = 0; l < dim; ++l)
                    if (!row[l].is_zero()) out[l] += c * row[l];
            }
        }
        return out;
    };
    auto is_zero_vec = [](const std::vector<Scalar>& v) {
        return std::all_of(v.begin(), v.end(),
                           [](const Scalar& s) { return s.is_zero(); });
    };

    std::vector<std::vector<Scalar>> gens0;
    for (int i = 0; i < dim; ++i) {
        if (i == unit_index) continue;
        std::vector<Scalar> g(dim, Scalar::zero(ring));
        g[i] = Scalar::one(ring);
        g[unit_index] -= augmentation[i];
        if (!is_zero_vec(g)) gens0.push_back(std::move(g));
    }
    if (gens0.empty()) return 1;

    const int bound = nilpotency_bound(ring, dim);
    std::vector<std::vector<Scalar>> cur = gens0;
    for (int q = 2; q <= bound + 1; ++q) {
        std::vector<std::vector<Scalar>> next;
        for (const auto& a : cur)
            for (const auto& g : gens0) {
                auto p = mul_vec(a, g);
                if (!is_zero_vec(p)) {
                    if (std::find(next.begin(), next.end(), p) == next.end())
                        next.push_back(std::move(p));
                }
                if (next.size() > 4096) return -1; // runaway growth
            }
        if (next.empty()) return q;
        cur = std::move(next);
    }
    return -1;
}

} // namespace

TableAlgebra::TableAlgebra(const Ring& ring, int dim,
                           std::vector<std::vector<Scalar>> table, int unit_index,
                           std::vector<Scalar> augmentation, std::vector<int> grading)
    : Algebra(Kind::table, ring), table_(std::move(table)) {
    if (dim <= 0 || static_cast<int>(table_.size()) != dim * dim ||
        unit_index < 0 || unit_index >= dim ||
        static_cast<int>(augmentation.size()) != dim)
        throw InvalidPresetError("malformed structure-constant table");
    for (const auto& row : table_)
        if (static_cast<int>(row.size()) != dim)
            throw InvalidPresetError("malformed structure-constant row");
    if (!grading.empty() && static_cast<int>(grading.size()) != dim)
        throw InvalidPresetError("grading length mismatch");

    dim_ = dim;
    unit_index_ = unit_index;
    augmentation_ = std::move(augmentation);
    grading_ = std::move(grading);
    nilpotency_ = kernel_nilpotency(ring, dim_, table_, unit_index_, augmentation_);

    uint64_t h = fnv1a(0xcbf29ce484222325ull, "table|" + ring.to_string());
    for (const auto& row : table_)
        for (const auto& c : row) h = fnv1a(h, c.to_string());
    for (const auto& c : augmentation_) h = fnv1a(h, c.to_string());
    h = fnv1a(h, std::to_string(unit_index_));
    signature_ = h;
}

std::string TableAlgebra::describe() const {
    return "table(dim=" + std::to_string(dim_) + ")";
}

void TableAlgebra::for_product(
    int i, int j, const std::function<void(int, const Scalar&)>& fn) const {
    const auto& row = product_row(i, j);
    for (int l = 0; l < dim_; ++l)
        if (!row[l].is_zero()) fn(l, row[l]);
}

std::shared_ptr<const TableAlgebra> TableAlgebra::from_algebra(const AlgebraPtr& a) {
    const int d = a->dim();
    std::vector<std::vector<Scalar>> table;
    table.reserve(static_cast<size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            std::vector<Scalar> row(d, Scalar::zero(a->ring()));
            a->for_product(i, j, [&](int l, const Scalar& c) { row[l] += c; });
            table.push_back(std::move(row));
        }
    return std::make_shared<const TableAlgebra>(a->ring(), d, std::move(table),
                                                a->unit_index(), a->augmentation(),
                                                a->grading());
}

// --- WeilElement -----------------------------------------------------------

WeilElement::WeilElement(AlgebraPtr algebra, std::vector<Scalar> coeffs)
    : alg_(std::move(algebra)), c_(std::move(coeffs)) {
    if (static_cast<int>(c_.size()) != alg_->dim())
        throw AlgebraMismatchError("coefficient vector length does not match dimension");
    for (const auto& s : c_)
        if (s.ring() != alg_->ring())
            throw RingMismatchError("element coefficients from the wrong ring");
}

WeilElement WeilElement::zero(const AlgebraPtr& a) {
    return WeilElement(a, std::vector<Scalar>(a->dim(), Scalar::zero(a->ring())));
}

WeilElement WeilElement::unit(const AlgebraPtr& a) {
    auto c = std::vector<Scalar>(a->dim(), Scalar::zero(a->ring()));
    c[a->unit_index()] = Scalar::one(a->ring());
    return WeilElement(a, std::move(c));
}

WeilElement WeilElement::basis(const AlgebraPtr& a, int i) {
    auto c = std::vector<Scalar>(a->dim(), Scalar::zero(a->ring()));
    c.at(i) = Scalar::one(a->ring());
    return WeilElement(a, std::move(c));
}

void WeilElement::require_same(const WeilElement& o) const {
    if (!same_algebra(*alg_, *o.alg_))
        throw AlgebraMismatchError("elements of different algebras: " +
                                   alg_->describe() + " vs " + o.alg_->describe());
}

bool WeilElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Scalar WeilElement::project() const {
    Scalar acc = Scalar::zero(alg_->ring());
    const auto& aug = alg_->augmentation();
    for (int i = 0; i < alg_->dim(); ++i)
        if (!aug[i].is_zero()) acc += aug[i] * c_[i];
    return acc;
}

WeilElement WeilElement::nilpotent_part() const {
    WeilElement r = *this;
    r.c_[alg_->unit_index()] -= project();
    return r;
}

WeilElement WeilElement::inv() const {
    const Scalar a0 = project();
    if (!a0.is_unit())
        throw NotAUnitError("element has non-unit augmentation " + a0.to_string());
    const int q = alg_->nilpotency();
    if (q < 1) throw Error("algebra kernel is not nilpotent");
    const Scalar a0inv = a0.inv();
    const WeilElement z = nilpotent_part() * a0inv;
    WeilElement acc = unit(alg_);
    WeilElement term = unit(alg_);
    for (int j = 1; j < q; ++j) {
        term *= z;
        if (j % 2)
            acc -= term;
        else
            acc += term;
    }
    return acc * a0inv;
}

WeilElement WeilElement::pow(uint32_t n) const {
    WeilElement acc = unit(alg_);
    for (uint32_t i = 0; i < n; ++i) acc *= *this;
    return acc;
}

WeilElement WeilElement::operator-() const {
    WeilElement r = *this;
    for (auto& s : r.c_) s = -s;
    return r;
}

WeilElement WeilElement::operator+(const WeilElement& o) const {
    require_same(o);
    WeilElement r = *this;
    for (int i = 0; i < alg_->dim(); ++i) r.c_[i] += o.c_[i];
    return r;
}

WeilElement WeilElement::operator-(const WeilElement& o) const {
    require_same(o);
    WeilElement r = *this;
    for (int i = 0; i < alg_->dim(); ++i) r.c_[i] -= o.c_[i];
    return r;
}

WeilElement WeilElement::operator*(const WeilElement& o) const {
    require_same(o);
    const int d = alg_->dim();
    std::vector<Scalar> out(d, Scalar::zero(alg_->ring()));

    std::vector<int> nzl, nzr;
    for (int i = 0; i < d; ++i)
        if (!c_[i].is_zero()) nzl.push_back(i);
    for (int j = 0; j < d; ++j)
        if (!o.c_[j].is_zero()) nzr.push_back(j);

    if (alg_->kind() == Algebra::Kind::monomial) {
        const auto* m = static_cast<const MonomialAlgebra*>(alg_.get());
        for (int i : nzl)
            for (int j : nzr) {
                const int32_t idx = m->product_index(i, j);
                if (idx >= 0) out[idx] += c_[i] * o.c_[j];
            }
    } else {
        const auto* t = static_cast<const TableAlgebra*>(alg_.get());
        for (int i : nzl)
            for (int j : nzr) {
                const Scalar c = c_[i] * o.c_[j];
                const auto& row = t->product_row(i, j);
                for (int l = 0; l < d; ++l)
                    if (!row[l].is_zero()) out[l] += c * row[l];
            }
    }
    return WeilElement(alg_, std::move(out));
}

WeilElement WeilElement::operator*(const Scalar& s) const {
    if (s.ring() != alg_->ring())
        throw RingMismatchError("scaling by scalar from the wrong ring");
    WeilElement r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
}

bool WeilElement::operator==(const WeilElement& o) const {
    require_same(o);
    return c_ == o.c_;
}

std::string WeilElement::to_string() const {
    std::string s;
    const auto* m = alg_->kind() == Algebra::Kind::monomial
                        ? static_cast<const MonomialAlgebra*>(alg_.get())
                        : nullptr;
    for (int i = 0; i < alg_->dim(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + c_[i].to_string() + ")*";
        s += m ? monomial_string(m->basis_monomial(i)) : "e" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

WeilElement embed(const AlgebraPtr& a, const Scalar& t) {
    return WeilElement::unit(a) * t;
}

Scalar project(const WeilElement& x) { return x.project(); }

WeilElement scale_action(const Scalar& r, const WeilElement& x) {
    const auto& a = x.algebra();
    if (!a->graded()) throw UngradedError("scale action needs a grading");
    if (r.ring() != a->ring()) throw RingMismatchError("scale by foreign scalar");
    if (!r.is_unit()) throw NotAUnitError("scale action by non-unit " + r.to_string());
    std::vector<Scalar> powers(static_cast<size_t>(a->top_grade()) + 1,
                               Scalar::one(r.ring()));
    for (size_t d = 1; d < powers.size(); ++d) powers[d] = powers[d - 1] * r;
    std::vector<Scalar> c = x.coeffs();
    for (int i = 0; i < a->dim(); ++i) c[i] *= powers[a->grading()[i]];
    return WeilElement(a, std::move(c));
}

WeilElement flip(const WeilElement& x) {
    const auto* m = x.algebra()->kind() == Algebra::Kind::monomial
                        ? static_cast<const MonomialAlgebra*>(x.algebra().get())
                        : nullptr;
    if (!m || !m->is_tensor())
        throw NotATensorError("flip needs an element of a tensor algebra");
    const auto& A = m->tensor_left();
    const auto& B = m->tensor_right();
    MonomialPtr target = tensor(B, A);
    std::vector<Scalar> out(target->dim(), Scalar::zero(m->ring()));
    const int na = A->nvars();
    for (int i = 0; i < m->dim(); ++i) {
        if (x.coeff(i).is_zero()) continue;
        const Exp& e = m->basis_monomial(i);
        Exp swapped(e.size());
        std::copy(e.begin() + na, e.end(), swapped.begin());
        std::copy(e.begin(), e.begin() + na, swapped.begin() + B->nvars());
        out[target->monomial_index(swapped)] = x.coeff(i);
    }
    return WeilElement(target, std::move(out));
}

WeilElement graded_component(const WeilElement& x, int d) {
    const auto& a = x.algebra();
    if (!a->graded()) throw UngradedError("graded component of ungraded algebra");
    std::vector<Scalar> c = x.coeffs();
    for (int i = 0; i < a->dim(); ++i)
        if (a->grading()[i] != d) c[i] = Scalar::zero(a->ring());
    return WeilElement(a, std::move(c));
}

// The sum over integer compositions collapses: for fixed j, the inner sum of
// a_{a0}...a_{aj} over a0+...+aj = i-j is the (i-j)-slice of a^{j+1}, and
// slices beyond the top degree die in the product, so star(b, a) reduces to
// sum_j b_j * a^{j+1}. Tests pin this against the literal enumeration.
WeilElement star(const WeilElement& b, const WeilElement& a) {
    if (!same_algebra(*b.algebra(), *a.algebra()))
        throw AlgebraMismatchError("star of elements from different algebras");
    if (!a.algebra()->graded()) throw UngradedError("star needs a grading");
    const int L = a.algebra()->top_grade();
    WeilElement res = WeilElement::zero(a.algebra());
    WeilElement apow = a; // a^{j+1} at step j
    for (int j = 0; j <= L; ++j) {
        WeilElement bj = graded_component(b, j);
        if (!bj.is_zero()) res += bj * apow;
        if (j < L) apow *= a;
    }
    return res;
}

WeilElement graded_endo(const WeilElement& a, const WeilElement& b) {
    if (!same_algebra(*b.algebra(), *a.algebra()))
        throw AlgebraMismatchError("graded endomorphism across algebras");
    if (!a.algebra()->graded())
        throw UngradedError("graded endomorphism needs a grading");
    const int L = a.algebra()->top_grade();
    WeilElement res = WeilElement::zero(a.algebra());
    WeilElement apow = WeilElement::unit(a.algebra()); // a^j at step j
    for (int j = 0; j <= L; ++j) {
        WeilElement bj = graded_component(b, j);
        if (!bj.is_zero()) res += bj * apow;
        if (j < L) apow *= a;
    }
    return res;
}

WeilElement star_inverse(const WeilElement& a) {
    const auto& alg = a.algebra();
    if (!alg->graded()) throw UngradedError("star inverse needs a grading");
    const Scalar c0 = graded_component(a, 0).project();
    if (!c0.is_unit()) throw NotAUnitError("star inverse needs a unit degree-0 part");
    const Scalar c0inv = c0.inv();
    // Triangular solve: the degree-i slice of star(a, x) is c0 * x_i plus
    // terms involving only lower slices of x.
    WeilElement x = embed(alg, c0inv);
    for (int i = 1; i <= alg->top_grade(); ++i) {
        WeilElement ri = graded_component(star(a, x), i);
        x -= ri * c0inv;
    }
    return x;
}

// --- MorphismMatrix --------------------------------------------------------

MorphismMatrix::MorphismMatrix(AlgebraPtr source, AlgebraPtr target,
                               std::vector<WeilElement> basis_images)
    : src_(std::move(source)), dst_(std::move(target)), cols_(std::move(basis_images)) {
    if (static_cast<int>(cols_.size()) != src_->dim())
        throw AlgebraMismatchError("morphism column count does not match source dimension");
    for (const auto& c : cols_)
        if (!same_algebra(*c.algebra(), *dst_))
            throw AlgebraMismatchError("morphism column from the wrong target algebra");
}

MorphismMatrix MorphismMatrix::from_variable_images(
    const MonomialPtr& source, const AlgebraPtr& target,
    const std::vector<WeilElement>& images) {
    if (static_cast<int>(images.size()) != source->nvars())
        throw ArityMismatchError("one image per source variable required");
    std::vector<WeilElement> cols;
    cols.reserve(source->dim());
    for (int i = 0; i < source->dim(); ++i) {
        const Exp& e = source->basis_monomial(i);
        WeilElement acc = WeilElement::unit(target);
        for (int v = 0; v < source->nvars(); ++v)
            for (uint32_t p = 0; p < e[v]; ++p) acc *= images[v];
        cols.push_back(std::move(acc));
    }
    return MorphismMatrix(source, target, std::move(cols));
}

void MorphismMatrix::run_check() const {
    if (cols_[src_->unit_index()] != WeilElement::unit(dst_)) {
        violation_ = "unit is not sent to unit";
        return;
    }
    for (int j = 0; j < src_->dim(); ++j) {
        if (project(cols_[j]) != src_->augmentation()[j]) {
            violation_ =
                "augmentation not preserved at basis index " + std::to_string(j);
            return;
        }
    }
    for (int i = 0; i < src_->dim(); ++i)
        for (int j = i; j < src_->dim(); ++j) {
            WeilElement lhs = WeilElement::zero(dst_);
            src_->for_product(i, j, [&](int l, const Scalar& c) { lhs += cols_[l] * c; });
            if (lhs != cols_[i] * cols_[j]) {
                violation_ = "not multiplicative on basis pair (" + std::to_string(i) +
                             "," + std::to_string(j) + ")";
                return;
            }
        }
    ok_ = true;
}

bool MorphismMatrix::check() const {
    std::call_once(checked_, [this] { run_check(); });
    return ok_;
}

const std::string& MorphismMatrix::violation() const {
    check();
    return violation_;
}

WeilElement MorphismMatrix::apply(const WeilElement& x) const {
    if (!check()) throw NotAMorphismError(violation_);
    if (!same_algebra(*x.algebra(), *src_))
        throw AlgebraMismatchError("morphism applied to element of the wrong algebra");
    WeilElement out = WeilElement::zero(dst_);
    for (int j = 0; j < src_->dim(); ++j)
        if (!x.coeff(j).is_zero()) out += cols_[j] * x.coeff(j);
    return out;
}

MorphismMatrix basis_truncation(const MonomialPtr& source, const MonomialPtr& target) {
    if (source->nvars() != target->nvars())
        throw AlgebraMismatchError("basis truncation needs matching variable lists");
    std::vector<WeilElement> cols;
    cols.reserve(source->dim());
    for (int i = 0; i < source->dim(); ++i) {
        const int idx = target->monomial_index(source->basis_monomial(i));
        cols.push_back(idx >= 0 ? WeilElement::basis(target, idx)
                                : WeilElement::zero(target));
    }
    return MorphismMatrix(source, target, std::move(cols));
}

MorphismMatrix augmentation_morphism(const AlgebraPtr& a) {
    MonomialPtr k = make_truncated(a->ring(), 0, 0);
    std::vector<WeilElement> cols;
    cols.reserve(a->dim());
    for (int j = 0; j < a->dim(); ++j) cols.push_back(embed(k, a->augmentation()[j]));
    return MorphismMatrix(a, k, std::move(cols));
}

// --- validate ----------------------------------------------------------------

namespace {

ValidationReport fail(const std::string& what) { return {false, what}; }

ValidationReport validate_monomial(const MonomialAlgebra& a) {
    const int d = a.dim();
    if (d == 0) return fail("empty basis");
    if (total_degree(a.basis_monomial(0)) != 0) return fail("no constant monomial");
    for (int j = 0; j < d; ++j) {
        if (a.product_index(0, j) != j) return fail("unit law broken in table");
        for (int i = 0; i <= j; ++i)
            if (a.product_index(i, j) != a.product_index(j, i))
                return fail("table not symmetric");
    }
    // Associativity through the index table; -1 absorbs.
    auto at = [&](int i, int j) { return i < 0 || j < 0 ? -1 : a.product_index(i, j); };
    for (int i = 1; i < d; ++i)
        for (int j = i; j < d; ++j)
            for (int k = j; k < d; ++k)
                if (at(at(i, j), k) != at(i, at(j, k)))
                    return fail("associativity fails on basis triple");
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const int p = a.product_index(i, j);
            if (p >= 0 && a.grading()[p] != a.grading()[i] + a.grading()[j])
                return fail("grading incompatible with product");
        }
    int maxdeg = 0;
    for (int i = 0; i < d; ++i) maxdeg = std::max(maxdeg, a.grading()[i]);
    if (a.nilpotency() != maxdeg + 1) return fail("stored nilpotency order is wrong");
    // Every nonconstant monomial powers down to zero within the stated order.
    for (int i = 1; i < d; ++i) {
        int cur = i, steps = 1;
        while (cur >= 0 && steps < a.nilpotency()) {
            cur = a.product_index(cur, i);
            ++steps;
        }
        if (cur >= 0) return fail("basis monomial not nilpotent within stated order");
    }
    return {};
}

ValidationReport validate_table(const TableAlgebra& a) {
    const int d = a.dim();
    const Ring& ring = a.ring();
    AlgebraPtr self(&a, [](const Algebra*) {}); // non-owning, validation-local
    auto elem = [&](int i) { return WeilElement::basis(self, i); };

    for (int j = 0; j < d; ++j)
        if (elem(a.unit_index()) * elem(j) != elem(j))
            return fail("unit law fails at basis index " + std::to_string(j));
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (a.product_row(i, j) != a.product_row(j, i))
                return fail("commutativity fails on basis pair");
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j)
            for (int k = j; k < d; ++k)
                if ((elem(i) * elem(j)) * elem(k) != elem(i) * (elem(j) * elem(k)))
                    return fail("associativity fails on basis triple (" +
                                std::to_string(i) + "," + std::to_string(j) + "," +
                                std::to_string(k) + ")");
    if (!(a.augmentation()[a.unit_index()] == Scalar::one(ring)))
        return fail("augmentation does not send unit to 1");
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j)
            if (project(elem(i) * elem(j)) != a.augmentation()[i] * a.augmentation()[j])
                return fail("augmentation not multiplicative");
    if (!a.grading().empty()) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const auto& row = a.product_row(i, j);
                for (int l = 0; l < d; ++l)
                    if (!row[l].is_zero() &&
                        a.grading()[l] != a.grading()[i] + a.grading()[j])
                        return fail("grading incompatible with product");
            }
    }
    if (a.nilpotency() < 0) return fail("augmentation kernel is not nilpotent");
    return {};
}

} // namespace

ValidationReport validate(const Algebra& a) {
    if (a.kind() == Algebra::Kind::monomial)
        return validate_monomial(static_cast<const MonomialAlgebra&>(a));
    return validate_table(static_cast<const TableAlgebra&>(a));
}

} // namespace weiljet
