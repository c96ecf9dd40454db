#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "wedgehs/cayley.hpp"
#include "wedgehs/errors.hpp"
#include "wedgehs/matrix.hpp"
#include "wedgehs/rational.hpp"

namespace wedgehs {

/// Truncated ordinary power series c_0 + c_1 t + ... + c_N t^N.
class ScalarSeries {
public:
    explicit ScalarSeries(unsigned order) : c_(order + 1) {}
    explicit ScalarSeries(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {}

    static ScalarSeries one(unsigned order) {
        ScalarSeries s(order);
        s.c_[0] = Rational(1);
        return s;
    }

    unsigned order() const { return static_cast<unsigned>(c_.size()) - 1; }
    const Rational& coeff(unsigned n) const { return c_[n]; }
    Rational& coeff(unsigned n) { return c_[n]; }
    const std::vector<Rational>& coeffs() const { return c_; }

    friend ScalarSeries operator+(const ScalarSeries& a, const ScalarSeries& b) {
        unsigned n = std::min(a.order(), b.order());
        ScalarSeries r(n);
        for (unsigned i = 0; i <= n; ++i)
            r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }

    friend ScalarSeries operator-(const ScalarSeries& a, const ScalarSeries& b) {
        unsigned n = std::min(a.order(), b.order());
        ScalarSeries r(n);
        for (unsigned i = 0; i <= n; ++i)
            r.c_[i] = a.c_[i] - b.c_[i];
        return r;
    }

    /// Cauchy product truncated to the smaller order.
    friend ScalarSeries operator*(const ScalarSeries& a, const ScalarSeries& b) {
        unsigned n = std::min(a.order(), b.order());
        ScalarSeries r(n);
        for (unsigned i = 0; i <= n; ++i) {
            if (a.c_[i].is_zero())
                continue;
            for (unsigned j = 0; i + j <= n; ++j)
                r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }

    friend ScalarSeries operator*(const Rational& c, const ScalarSeries& a) {
        ScalarSeries r(a.order());
        for (unsigned i = 0; i <= a.order(); ++i)
            r.c_[i] = c * a.c_[i];
        return r;
    }

    /// Multiplicative inverse through t^N; needs an invertible constant term.
    ScalarSeries inverse() const {
        if (c_[0].is_zero())
            throw singular_leading_term("series inverse needs nonzero constant term");
        Rational c0inv = c_[0].inverse();
        ScalarSeries x(order());
        x.c_[0] = c0inv;
        for (unsigned n = 1; n <= order(); ++n) {
            Rational acc;
            for (unsigned k = 1; k <= n; ++k)
                acc += c_[k] * x.c_[n - k];
            x.c_[n] = -(acc * c0inv);
        }
        return x;
    }

    /// Multiplication by t^j (drops the tail past the order).
    ScalarSeries shifted(unsigned j) const {
        ScalarSeries r(order());
        for (unsigned n = j; n <= order(); ++n)
            r.c_[n] = c_[n - j];
        return r;
    }

    friend bool operator==(const ScalarSeries& a, const ScalarSeries& b) { return a.c_ == b.c_; }
    friend bool operator!=(const ScalarSeries& a, const ScalarSeries& b) { return !(a == b); }

private:
    std::vector<Rational> c_;
};

/// Truncated series in exponential form: coefficients y_0..y_N stand for
/// Σ y_n t^n / n!. Differentiation is a left shift of the list.
class EGFSeries {
public:
    explicit EGFSeries(unsigned order) : y_(order + 1) {}
    explicit EGFSeries(std::vector<Rational> coeffs) : y_(std::move(coeffs)) {}

    unsigned order() const { return static_cast<unsigned>(y_.size()) - 1; }
    const Rational& coeff(unsigned n) const { return y_[n]; }
    Rational& coeff(unsigned n) { return y_[n]; }
    const std::vector<Rational>& coeffs() const { return y_; }

    /// Ordinary coefficient of t^n, i.e. y_n / n!.
    Rational ordinary_coeff(unsigned n) const { return y_[n] / Rational(factorial(n)); }

    /// The ordinary-form view of the same truncated function.
    ScalarSeries to_ordinary() const {
        ScalarSeries s(order());
        for (unsigned n = 0; n <= order(); ++n)
            s.coeff(n) = ordinary_coeff(n);
        return s;
    }

    EGFSeries derivative() const {
        if (order() == 0)
            return EGFSeries(std::vector<Rational>{Rational(0)});
        EGFSeries r(order() - 1);
        for (unsigned n = 0; n < order(); ++n)
            r.y_[n] = y_[n + 1];
        return r;
    }

    friend EGFSeries operator+(const EGFSeries& a, const EGFSeries& b) {
        unsigned n = std::min(a.order(), b.order());
        EGFSeries r(n);
        for (unsigned i = 0; i <= n; ++i)
            r.y_[i] = a.y_[i] + b.y_[i];
        return r;
    }

    friend EGFSeries operator-(const EGFSeries& a, const EGFSeries& b) {
        unsigned n = std::min(a.order(), b.order());
        EGFSeries r(n);
        for (unsigned i = 0; i <= n; ++i)
            r.y_[i] = a.y_[i] - b.y_[i];
        return r;
    }

    friend EGFSeries operator*(const Rational& c, const EGFSeries& a) {
        EGFSeries r(a.order());
        for (unsigned i = 0; i <= a.order(); ++i)
            r.y_[i] = c * a.y_[i];
        return r;
    }

    bool is_zero() const {
        for (const auto& v : y_)
            if (!v.is_zero())
                return false;
        return true;
    }

    friend bool operator==(const EGFSeries& a, const EGFSeries& b) { return a.y_ == b.y_; }
    friend bool operator!=(const EGFSeries& a, const EGFSeries& b) { return !(a == b); }

private:
    std::vector<Rational> y_;
};

/// Formal Laplace transform: Σ y_n t^n/n! goes to Σ y_n t^n. On the stored
/// lists the n! scaling cancels, so the coefficient list carries over.
inline ScalarSeries laplace(const EGFSeries& s) {
    return ScalarSeries(s.coeffs());
}

/// Inverse transform: Σ c_n t^n goes to Σ c_n t^n/n!.
inline EGFSeries laplace_inv(const ScalarSeries& s) {
    return EGFSeries(s.coeffs());
}

/// E_r(t) = 1 - e_1 t + ... + (-1)^r e_r t^r, padded with zeros to order N.
inline ScalarSeries ert_series(const CharCoeffs& cc, unsigned N) {
    const unsigned r = static_cast<unsigned>(cc.e.size());
    if (N < r)
        throw order_too_small("order must be at least the rank");
    ScalarSeries s(N);
    for (unsigned k = 0; k <= r; ++k)
        s.coeff(k) = cc.signed_coeff(k);
    return s;
}

/// H_r(t) = 1/E_r(t); its coefficients obey h_j = e_1 h_{j-1} - e_2 h_{j-2}
/// + ... - (-1)^j e_j.
inline ScalarSeries h_series(const CharCoeffs& cc, unsigned N) {
    const unsigned r = static_cast<unsigned>(cc.e.size());
    ScalarSeries e(N >= r ? N : r);
    for (unsigned k = 0; k <= r; ++k)
        e.coeff(k) = cc.signed_coeff(k);
    ScalarSeries h = e.inverse();
    if (h.order() == N)
        return h;
    ScalarSeries out(N);
    for (unsigned n = 0; n <= N && n <= h.order(); ++n)
        out.coeff(n) = h.coeff(n);
    return out;
}

/// The r solutions u_{-j} = L^{-1}(t^j H_r(t)), j = 0..r-1. In exponential
/// form u_{-j} has coefficients h_{n-j}.
inline std::vector<EGFSeries> u_basis(const CharCoeffs& cc, unsigned N) {
    const unsigned r = static_cast<unsigned>(cc.e.size());
    if (N < r)
        throw order_too_small("order must be at least the rank");
    ScalarSeries h = h_series(cc, N);
    std::vector<EGFSeries> out;
    out.reserve(r);
    for (unsigned j = 0; j < r; ++j)
        out.push_back(laplace_inv(h.shifted(j)));
    return out;
}

/// The standard solution basis: v_j starts with y_i = δ_{ij} for i < r and
/// continues by y_{n+r} = e_1 y_{n+r-1} - ... - (-1)^r e_r y_n.
inline std::vector<EGFSeries> v_basis(const CharCoeffs& cc, unsigned N) {
    const unsigned r = static_cast<unsigned>(cc.e.size());
    if (N < r)
        throw order_too_small("order must be at least the rank");
    std::vector<EGFSeries> out;
    out.reserve(r);
    for (unsigned j = 0; j < r; ++j) {
        EGFSeries v(N);
        if (j <= N)
            v.coeff(j) = Rational(1);
        for (unsigned n = 0; n + r <= N; ++n) {
            Rational acc;
            for (unsigned k = 1; k <= r; ++k)
                acc -= cc.signed_coeff(k) * v.coeff(n + r - k);
            v.coeff(n + r) = acc;
        }
        out.push_back(std::move(v));
    }
    return out;
}

/// Applies the operator y -> y^(r) - e_1 y^(r-1) + ... + (-1)^r e_r y by
/// formal differentiation; the result has order N - r and is identically
/// zero exactly when y solves the equation through the truncation.
inline EGFSeries ode_residual(const EGFSeries& y, const CharCoeffs& cc) {
    const unsigned r = static_cast<unsigned>(cc.e.size());
    if (y.order() < r)
        throw order_too_small("series order below the equation order");
    std::vector<EGFSeries> deriv{y};
    for (unsigned k = 1; k <= r; ++k)
        deriv.push_back(deriv.back().derivative());
    EGFSeries res(y.order() - r);
    for (unsigned k = 0; k <= r; ++k) {
        // (-1)^k e_k multiplies y^(r-k).
        const EGFSeries& d = deriv[r - k];
        for (unsigned n = 0; n <= res.order(); ++n)
            res.coeff(n) += cc.signed_coeff(k) * d.coeff(n);
    }
    return res;
}

struct EgfIdentityFailure {
    unsigned n, grade;
    Matrix residual;
};

/// Exponential-form consistency of the full series of f: termwise it must
/// match Σ_j U_j(f) u_{-j}(t), and the order-r operator must annihilate it
/// block by block. Both statements hold on grades >= 1 only; the grade-0
/// values of both sides are recorded instead of asserted, since the
/// constant series is not a solution once e_r is nonzero.
struct EgfIdentityReport {
    bool sol_ok = true;
    bool ode_ok = true;
    std::vector<EgfIdentityFailure> sol_failures;
    std::vector<EgfIdentityFailure> ode_failures;
    std::vector<Rational> grade0_lhs, grade0_rhs;
};

inline EgfIdentityReport endo_egf_identity(const Context& ctx, const Matrix& f, unsigned N) {
    detail::check_endo_shape(ctx, f);
    const unsigned r = ctx.rank();
    if (N < 2 * r)
        throw order_too_small("order must be at least twice the rank");

    const CharCoeffs cc = char_coeffs(ctx, f);
    const EndoSeries fs = f_series(ctx, f, N);
    const USeq useq = u_operators(ctx, f, N);
    const std::vector<EGFSeries> u = u_basis(cc, N);

    EgfIdentityReport rep;
    for (unsigned n = 0; n <= N; ++n) {
        GradedEndo rhs(ctx);
        for (unsigned j = 0; j < r && j <= n; ++j)
            rhs += u[j].coeff(n) * useq.u[j];
        for (unsigned h = 1; h <= r; ++h) {
            Matrix res = fs.coeff(n).block(h) - rhs.block(h);
            if (!res.is_zero()) {
                rep.sol_ok = false;
                rep.sol_failures.push_back({n, h, res});
            }
        }
        rep.grade0_lhs.push_back(fs.coeff(n).block(0)(0, 0));
        rep.grade0_rhs.push_back(rhs.block(0)(0, 0));
    }

    for (unsigned n = 0; n + r <= N; ++n) {
        GradedEndo res(ctx);
        for (unsigned k = 0; k <= r; ++k)
            res += cc.signed_coeff(k) * fs.coeff(n + r - k);
        for (unsigned h = 1; h <= r; ++h)
            if (!res.block(h).is_zero()) {
                rep.ode_ok = false;
                rep.ode_failures.push_back({n, h, res.block(h)});
            }
    }
    return rep;
}

/// Matrix-valued series in exponential form; coefficient n of exp(ft) is
/// the n-th power of f.
struct MatrixEGF {
    std::vector<Matrix> coeffs;

    unsigned order() const { return static_cast<unsigned>(coeffs.size()) - 1; }

    /// Exact partial sum Σ_{n<=N} C_n t0^n / n!.
    Matrix eval_at(const Rational& t0) const {
        Matrix acc(coeffs[0].rows(), coeffs[0].cols());
        Rational pw(1);
        for (unsigned n = 0; n < coeffs.size(); ++n) {
            acc += (pw / Rational(factorial(n))) * coeffs[n];
            pw *= t0;
        }
        return acc;
    }

    friend bool operator==(const MatrixEGF& a, const MatrixEGF& b) { return a.coeffs == b.coeffs; }
    friend bool operator!=(const MatrixEGF& a, const MatrixEGF& b) { return !(a == b); }
};

/// Matrix polynomials p_k(f) = f^k - e_1 f^{k-1} + ... + (-1)^k e_k, which
/// are the restrictions of the U-operators to grade 1.
inline std::vector<Matrix> putzer_polynomials(const CharCoeffs& cc, const Matrix& f,
                                              unsigned count) {
    std::vector<Matrix> p;
    p.reserve(count);
    p.push_back(Matrix::identity(f.rows()));
    for (unsigned k = 1; k < count; ++k)
        p.push_back(f * p.back() + cc.signed_coeff(k) * Matrix::identity(f.rows()));
    return p;
}

/// exp(ft) as Σ_k p_k(f) u_{-k}(t), truncated at t^N.
inline MatrixEGF expm_putzer(const Context& ctx, const Matrix& f, unsigned N) {
    detail::check_endo_shape(ctx, f);
    const unsigned r = ctx.rank();
    if (N < r)
        throw order_too_small("order must be at least the rank");
    const CharCoeffs cc = char_coeffs(ctx, f);
    const std::vector<EGFSeries> u = u_basis(cc, N);
    const std::vector<Matrix> p = putzer_polynomials(cc, f, r);
    MatrixEGF out;
    out.coeffs.reserve(N + 1);
    for (unsigned n = 0; n <= N; ++n) {
        Matrix c(r, r);
        for (unsigned k = 0; k < r; ++k)
            c += u[k].coeff(n) * p[k];
        out.coeffs.push_back(std::move(c));
    }
    return out;
}

/// exp(ft) as v_0(t) 1 + v_1(t) f + ... + v_{r-1}(t) f^{r-1}.
inline MatrixEGF expm_leonard(const Context& ctx, const Matrix& f, unsigned N) {
    detail::check_endo_shape(ctx, f);
    const unsigned r = ctx.rank();
    if (N < r)
        throw order_too_small("order must be at least the rank");
    const CharCoeffs cc = char_coeffs(ctx, f);
    const std::vector<EGFSeries> v = v_basis(cc, N);
    std::vector<Matrix> pw;
    pw.reserve(r);
    pw.push_back(Matrix::identity(r));
    for (unsigned j = 1; j < r; ++j)
        pw.push_back(pw.back() * f);
    MatrixEGF out;
    out.coeffs.reserve(N + 1);
    for (unsigned n = 0; n <= N; ++n) {
        Matrix c(r, r);
        for (unsigned j = 0; j < r; ++j)
            c += v[j].coeff(n) * pw[j];
        out.coeffs.push_back(std::move(c));
    }
    return out;
}

/// Plain Taylor coefficients f^n by repeated multiplication. Kept free of
/// the series machinery so it can stand against the other two routes.
inline MatrixEGF expm_taylor(const Matrix& f, unsigned N) {
    if (!f.is_square())
        throw dimension_mismatch("matrix must be square");
    MatrixEGF out;
    out.coeffs.reserve(N + 1);
    out.coeffs.push_back(Matrix::identity(f.rows()));
    for (unsigned n = 1; n <= N; ++n)
        out.coeffs.push_back(out.coeffs.back() * f);
    return out;
}

} // namespace wedgehs
