#pragma once

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "wedgehs/errors.hpp"
#include "wedgehs/exterior.hpp"
#include "wedgehs/matrix.hpp"

namespace wedgehs {

/// Grade-preserving endomorphism of the exterior algebra: one square matrix
/// per grade, of size C(r,h), columns indexed by the canonical blade order.
class GradedEndo {
public:
    explicit GradedEndo(Context ctx) : ctx_(std::move(ctx)) {
        blocks_.reserve(ctx_.rank() + 1);
        for (unsigned h = 0; h <= ctx_.rank(); ++h)
            blocks_.emplace_back(ctx_.dim(h), ctx_.dim(h));
    }

    static GradedEndo identity(const Context& ctx) {
        GradedEndo e(ctx);
        for (unsigned h = 0; h <= ctx.rank(); ++h)
            e.blocks_[h] = Matrix::identity(ctx.dim(h));
        return e;
    }

    const Context& context() const { return ctx_; }

    Matrix& block(unsigned grade) { return blocks_[grade]; }
    const Matrix& block(unsigned grade) const { return blocks_[grade]; }

    bool is_zero() const {
        for (const auto& b : blocks_)
            if (!b.is_zero())
                return false;
        return true;
    }

    bool is_identity() const {
        for (const auto& b : blocks_)
            if (!b.is_identity())
                return false;
        return true;
    }

    Multivector apply(const Multivector& v) const {
        if (v.context() != ctx_)
            throw context_mismatch("endomorphism applied across contexts");
        Multivector out(ctx_);
        for (const auto& [mask, c] : v.terms()) {
            unsigned h = static_cast<unsigned>(std::popcount(mask));
            unsigned col = ctx_.index_of(mask);
            const Matrix& m = blocks_[h];
            const auto& basis = ctx_.blades(h);
            for (unsigned row = 0; row < m.rows(); ++row) {
                const Rational& e = m(row, col);
                if (!e.is_zero())
                    out.add_term(Blade(basis[row]), c * e);
            }
        }
        return out;
    }

    /// Composition this ∘ other (other acts first).
    GradedEndo compose(const GradedEndo& other) const {
        check_context(*this, other);
        GradedEndo r(ctx_);
        for (unsigned h = 0; h <= ctx_.rank(); ++h)
            r.blocks_[h] = blocks_[h] * other.blocks_[h];
        return r;
    }

    friend GradedEndo operator+(const GradedEndo& a, const GradedEndo& b) {
        check_context(a, b);
        GradedEndo r(a.ctx_);
        for (unsigned h = 0; h < r.blocks_.size(); ++h)
            r.blocks_[h] = a.blocks_[h] + b.blocks_[h];
        return r;
    }

    friend GradedEndo operator-(const GradedEndo& a, const GradedEndo& b) {
        check_context(a, b);
        GradedEndo r(a.ctx_);
        for (unsigned h = 0; h < r.blocks_.size(); ++h)
            r.blocks_[h] = a.blocks_[h] - b.blocks_[h];
        return r;
    }

    friend GradedEndo operator-(const GradedEndo& a) {
        GradedEndo r(a.ctx_);
        for (unsigned h = 0; h < r.blocks_.size(); ++h)
            r.blocks_[h] = -a.blocks_[h];
        return r;
    }

    friend GradedEndo operator*(const Rational& c, const GradedEndo& a) {
        GradedEndo r(a.ctx_);
        for (unsigned h = 0; h < r.blocks_.size(); ++h)
            r.blocks_[h] = c * a.blocks_[h];
        return r;
    }
    friend GradedEndo operator*(const GradedEndo& a, const Rational& c) { return c * a; }

    GradedEndo& operator+=(const GradedEndo& b) { return *this = *this + b; }

    friend bool operator==(const GradedEndo& a, const GradedEndo& b) {
        return a.ctx_ == b.ctx_ && a.blocks_ == b.blocks_;
    }
    friend bool operator!=(const GradedEndo& a, const GradedEndo& b) { return !(a == b); }

private:
    static void check_context(const GradedEndo& a, const GradedEndo& b) {
        if (a.ctx_ != b.ctx_)
            throw context_mismatch("endomorphisms from different contexts");
    }

    Context ctx_;
    std::vector<Matrix> blocks_;
};

/// Truncated power series with GradedEndo coefficients, D_0 + D_1 t + ... +
/// D_N t^N. Coefficients are stored plainly; any alternating-sign
/// presentation of an inverse is a display concern, not a storage one.
class EndoSeries {
public:
    EndoSeries(Context ctx, unsigned order)
        : ctx_(std::move(ctx)), coeffs_(order + 1, GradedEndo(ctx_)) {}

    static EndoSeries identity(const Context& ctx, unsigned order) {
        EndoSeries s(ctx, order);
        s.coeffs_[0] = GradedEndo::identity(ctx);
        return s;
    }

    const Context& context() const { return ctx_; }
    unsigned order() const { return static_cast<unsigned>(coeffs_.size()) - 1; }

    const GradedEndo& coeff(unsigned i) const { return coeffs_[i]; }
    GradedEndo& coeff(unsigned i) { return coeffs_[i]; }

    EndoSeries truncated(unsigned new_order) const {
        EndoSeries r(ctx_, new_order);
        for (unsigned i = 0; i <= new_order && i <= order(); ++i)
            r.coeffs_[i] = coeffs_[i];
        return r;
    }

    /// Coefficients of D(t)α: entry i is D_i(α).
    std::vector<Multivector> apply(const Multivector& v) const {
        if (v.context() != ctx_)
            throw context_mismatch("series applied across contexts");
        std::vector<Multivector> out;
        out.reserve(coeffs_.size());
        for (const auto& d : coeffs_)
            out.push_back(d.apply(v));
        return out;
    }

    friend bool operator==(const EndoSeries& a, const EndoSeries& b) {
        return a.ctx_ == b.ctx_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const EndoSeries& a, const EndoSeries& b) { return !(a == b); }

private:
    Context ctx_;
    std::vector<GradedEndo> coeffs_;
};

/// Cauchy product; the result is truncated to the smaller input order.
inline EndoSeries series_product(const EndoSeries& a, const EndoSeries& b) {
    if (a.context() != b.context())
        throw context_mismatch("series from different contexts");
    unsigned n = std::min(a.order(), b.order());
    EndoSeries r(a.context(), n);
    for (unsigned k = 0; k <= n; ++k) {
        GradedEndo acc(a.context());
        for (unsigned i = 0; i <= k; ++i)
            acc += a.coeff(i).compose(b.coeff(k - i));
        r.coeff(k) = std::move(acc);
    }
    return r;
}

/// Inverse through t^N. Solving sum_{k<=j} X_k D_{j-k} = 0 for the top term
/// gives X_j = -sum_{k<j} X_k D_{j-k} once D_0 = 1; we only accept the
/// identity constant term, which is all this artifact ever inverts.
inline EndoSeries series_invert(const EndoSeries& d) {
    if (!d.coeff(0).is_identity())
        throw singular_leading_term("series inverse needs identity constant term");
    EndoSeries x = EndoSeries::identity(d.context(), d.order());
    for (unsigned j = 1; j <= d.order(); ++j) {
        GradedEndo acc(d.context());
        for (unsigned k = 0; k < j; ++k)
            acc += x.coeff(k).compose(d.coeff(j - k));
        x.coeff(j) = -acc;
    }
    return x;
}

/// Unique multiplicative extension to the whole algebra of a series of
/// grade-1 maps g(t) = g_0 + g_1 t + ... with g_0 = 1. On a blade it is the
/// truncated expansion g(t)b_{i1} ^ ... ^ g(t)b_{ij}; on grade 0 it is the
/// constant 1.
inline EndoSeries extend_to_hs(const Context& ctx, const std::vector<Matrix>& g) {
    if (g.empty())
        throw dimension_mismatch("empty coefficient list");
    const unsigned r = ctx.rank();
    for (const auto& m : g)
        if (m.rows() != r || m.cols() != r)
            throw dimension_mismatch("grade-1 coefficient is not rank x rank");
    if (!g[0].is_identity())
        throw singular_leading_term("extension needs g_0 = identity");

    const unsigned n = static_cast<unsigned>(g.size()) - 1;
    EndoSeries d(ctx, n);
    d.coeff(0).block(0) = Matrix::identity(1);

    // Column i of g[k], as a grade-1 multivector.
    auto factor = [&](unsigned k, unsigned i) {
        Multivector m(ctx);
        for (unsigned row = 0; row < r; ++row)
            m.add_term(Blade(std::uint32_t{1} << row), g[k](row, i));
        return m;
    };

    for (unsigned h = 1; h <= r; ++h) {
        const auto& basis = ctx.blades(h);
        for (unsigned col = 0; col < basis.size(); ++col) {
            // Running truncated product over the blade's factors.
            std::vector<Multivector> s(n + 1, Multivector(ctx));
            s[0] = Multivector::unit(ctx);
            for (std::uint32_t m = basis[col]; m; m &= m - 1) {
                unsigned i = static_cast<unsigned>(std::countr_zero(m));
                std::vector<Multivector> next(n + 1, Multivector(ctx));
                for (unsigned a = 0; a <= n; ++a) {
                    if (s[a].is_zero())
                        continue;
                    for (unsigned b = 0; a + b <= n; ++b)
                        next[a + b] += wedge(s[a], factor(b, i));
                }
                s = std::move(next);
            }
            for (unsigned k = 0; k <= n; ++k)
                for (const auto& [mask, c] : s[k].terms())
                    d.coeff(k).block(h)(ctx.index_of(mask), col) = c;
        }
    }
    return d;
}

struct LeibnizFailure {
    unsigned index;      // coefficient where the identity broke
    Multivector alpha, beta;
    Multivector lhs, rhs;
};

struct LeibnizReport {
    bool ok = true;
    std::vector<LeibnizFailure> failures;
};

/// Coefficientwise multiplicativity check: D_i(α∧β) = Σ_j D_j α ∧ D_{i-j} β
/// for every sample pair and every i up to the order.
inline LeibnizReport is_hs(const EndoSeries& d,
                           const std::vector<std::pair<Multivector, Multivector>>& samples) {
    LeibnizReport report;
    for (const auto& [alpha, beta] : samples) {
        auto da = d.apply(alpha);
        auto db = d.apply(beta);
        auto dab = d.apply(wedge(alpha, beta));
        for (unsigned i = 0; i <= d.order(); ++i) {
            Multivector rhs(d.context());
            for (unsigned j = 0; j <= i; ++j)
                rhs += wedge(da[j], db[i - j]);
            if (rhs != dab[i]) {
                report.ok = false;
                report.failures.push_back({i, alpha, beta, dab[i], rhs});
            }
        }
    }
    return report;
}

} // namespace wedgehs
