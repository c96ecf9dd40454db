#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "wedgehs/endoseries.hpp"
#include "wedgehs/errors.hpp"
#include "wedgehs/exterior.hpp"
#include "wedgehs/matrix.hpp"
#include "wedgehs/rational.hpp"

namespace wedgehs {

/// Characteristic coefficients e_1..e_r of a rank-r endomorphism, read off
/// the top exterior power: det(1t - f) = t^r - e_1 t^{r-1} + ... + (-1)^r e_r.
struct CharCoeffs {
    Context ctx;
    std::vector<Rational> e; // e[i-1] holds e_i

    /// Signed coefficient (-1)^k e_k, with e_0 = 1; zero beyond degree r.
    Rational signed_coeff(unsigned k) const {
        if (k == 0)
            return Rational(1);
        if (k > e.size())
            return Rational(0);
        Rational v = e[k - 1];
        return (k & 1) ? -v : v;
    }
};

namespace detail {

inline void check_endo_shape(const Context& ctx, const Matrix& f) {
    if (f.rows() != ctx.rank() || f.cols() != ctx.rank())
        throw dimension_mismatch("matrix does not match the context rank");
}

} // namespace detail

/// Multiplicative extension of 1_M - f t to the whole exterior algebra.
/// Its coefficients vanish beyond degree r, and coefficient j restricted to
/// grade i vanishes whenever j > i.
inline EndoSeries fbar(const Context& ctx, const Matrix& f, unsigned N) {
    detail::check_endo_shape(ctx, f);
    if (N < ctx.rank())
        throw order_too_small("order must be at least the rank");
    std::vector<Matrix> g(N + 1, Matrix(ctx.rank(), ctx.rank()));
    g[0] = Matrix::identity(ctx.rank());
    g[1] = -f;
    return extend_to_hs(ctx, g);
}

/// e_i is (-1)^i times the eigenvalue on the top form of the i-th
/// coefficient of the extension of 1_M - f t. No determinant expansion is
/// ever taken.
inline CharCoeffs char_coeffs(const Context& ctx, const Matrix& f) {
    const unsigned r = ctx.rank();
    EndoSeries d = fbar(ctx, f, r);
    CharCoeffs cc{ctx, {}};
    cc.e.reserve(r);
    for (unsigned i = 1; i <= r; ++i) {
        Rational v = d.coeff(i).block(r)(0, 0);
        cc.e.push_back((i & 1) ? -v : v);
    }
    return cc;
}

/// The inverse series of fbar: grade-1 coefficient j is f^j, the top-grade
/// coefficient j is the eigenvalue h_j of 1/E_r(t), grade 0 is constant 1.
inline EndoSeries f_series(const Context& ctx, const Matrix& f, unsigned N) {
    return series_invert(fbar(ctx, f, N));
}

/// Coefficients of E_r(t) f(t), computed two ways: by the explicit
/// alternating sum over f_{i-k} and as a genuine series product. The two
/// lists must agree entry for entry.
struct USeq {
    Context ctx;
    std::vector<GradedEndo> u;           // explicit formula
    std::vector<GradedEndo> via_product; // series-product route
    bool routes_agree = true;

    unsigned order() const { return static_cast<unsigned>(u.size()) - 1; }
};

inline USeq u_operators(const Context& ctx, const Matrix& f, unsigned N) {
    detail::check_endo_shape(ctx, f);
    if (N < ctx.rank())
        throw order_too_small("order must be at least the rank");
    const CharCoeffs cc = char_coeffs(ctx, f);
    const EndoSeries fs = f_series(ctx, f, N);

    USeq seq{ctx, {}, {}, true};
    seq.u.reserve(N + 1);
    for (unsigned i = 0; i <= N; ++i) {
        GradedEndo acc(ctx);
        for (unsigned k = 0; k <= std::min<unsigned>(i, ctx.rank()); ++k)
            acc += cc.signed_coeff(k) * fs.coeff(i - k);
        seq.u.push_back(std::move(acc));
    }

    EndoSeries er(ctx, N);
    for (unsigned k = 0; k <= std::min<unsigned>(N, ctx.rank()); ++k)
        er.coeff(k) = cc.signed_coeff(k) * GradedEndo::identity(ctx);
    EndoSeries prod = series_product(er, fs);
    seq.via_product.reserve(N + 1);
    for (unsigned i = 0; i <= N; ++i) {
        seq.via_product.push_back(prod.coeff(i));
        if (seq.via_product[i] != seq.u[i])
            seq.routes_agree = false;
    }
    return seq;
}

struct UVanishing {
    unsigned grade;
    std::optional<unsigned> first_nonzero_k; // expected empty
};

struct ClassicChResidual {
    unsigned shift; // power of f the relation was multiplied by
    Matrix residual;
};

struct RationalFormResidual {
    unsigned j, k, grade;
    Matrix residual;
};

struct LiteralResidual {
    unsigned j, i, grade;
    Matrix residual;
};

/// Everything the order-j recurrences say about f, with exact residuals.
///
/// The order-j relation truncated at e_j is recorded in literal_residuals
/// without being asserted for i >= 1, j < r: the cancellation only closes
/// once the alternating sum runs through e_r, and the truncated rows
/// genuinely survive (run diag(1,2) for a concrete -e_2). Rows with i = 0,
/// and every row at j = r, must vanish and are asserted.
struct VerifyReport {
    Context ctx;
    unsigned order;
    std::vector<Rational> e;

    bool classic_ch = true;
    std::vector<ClassicChResidual> classic_residuals;

    std::vector<UVanishing> u_vanishing; // grades 1..r

    bool rational_form = true;
    std::vector<RationalFormResidual> rational_form_residuals;

    std::vector<Rational> grade0_ledger; // value of U_i on grade 0, i = 0..order
    bool grade0_ok = true;

    std::vector<LiteralResidual> literal_residuals; // nonzero rows only
    bool literal_asserted_ok = true;

    bool u_routes_agree = true;

    bool asserted_ok() const {
        bool vanishing = true;
        for (const auto& v : u_vanishing)
            if (v.first_nonzero_k)
                vanishing = false;
        return classic_ch && vanishing && rational_form && grade0_ok &&
               literal_asserted_ok && u_routes_agree;
    }
};

inline VerifyReport wedge_ch_report(const Context& ctx, const Matrix& f, unsigned N) {
    detail::check_endo_shape(ctx, f);
    const unsigned r = ctx.rank();
    if (N < 2 * r)
        throw order_too_small("order must be at least twice the rank");

    const CharCoeffs cc = char_coeffs(ctx, f);
    const EndoSeries fs = f_series(ctx, f, N);
    const USeq useq = u_operators(ctx, f, N);

    VerifyReport rep{ctx, N, cc.e};
    rep.u_routes_agree = useq.routes_agree;

    // Graded vanishing of the U-operators: on grade h nothing survives from
    // index r-h+1 on.
    for (unsigned h = 1; h <= r; ++h) {
        UVanishing v{h, std::nullopt};
        for (unsigned k = r - h + 1; k <= N; ++k)
            if (!useq.u[k].block(h).is_zero()) {
                v.first_nonzero_k = k;
                break;
            }
        rep.u_vanishing.push_back(v);
    }

    // Classic Cayley-Hamilton and its shifts, by plain matrix arithmetic.
    std::vector<Matrix> pw;
    pw.reserve(N + 1);
    pw.push_back(Matrix::identity(r));
    for (unsigned i = 1; i <= N; ++i)
        pw.push_back(pw.back() * f);
    for (unsigned i = 0; i + r <= N; ++i) {
        Matrix c(r, r);
        for (unsigned k = 0; k <= r; ++k)
            c += cc.signed_coeff(k) * pw[r + i - k];
        if (!c.is_zero()) {
            rep.classic_ch = false;
            rep.classic_residuals.push_back({i, c});
        }
    }

    // Rational form: on grade r-j+1 the product E_r(t) f(t) is the
    // polynomial U_0 + ... + U_{j-1} t^{j-1}, nothing more.
    for (unsigned j = 1; j <= r; ++j) {
        unsigned h = r - j + 1;
        for (unsigned k = 0; k <= N; ++k) {
            Matrix res = useq.via_product[k].block(h);
            if (k < j)
                res = res - useq.u[k].block(h);
            if (!res.is_zero()) {
                rep.rational_form = false;
                rep.rational_form_residuals.push_back({j, k, h, res});
            }
        }
    }

    // Grade-0 ledger: f is the constant 1 there, so U_i acts as the signed
    // characteristic coefficient.
    for (unsigned i = 0; i <= N; ++i) {
        rep.grade0_ledger.push_back(useq.u[i].block(0)(0, 0));
        if (rep.grade0_ledger.back() != cc.signed_coeff(i))
            rep.grade0_ok = false;
        if (fs.coeff(i).block(0)(0, 0) != Rational(i == 0 ? 1 : 0))
            rep.grade0_ok = false;
    }

    // Literal order-j rows R(j,i) = sum_{k<=j} (-1)^k e_k f_{i+j-k}.
    for (unsigned j = 1; j <= r; ++j) {
        unsigned h = r - j + 1;
        for (unsigned i = 0; i + j <= N; ++i) {
            Matrix res(ctx.dim(h), ctx.dim(h));
            for (unsigned k = 0; k <= j; ++k)
                res += cc.signed_coeff(k) * fs.coeff(i + j - k).block(h);
            if (!res.is_zero()) {
                rep.literal_residuals.push_back({j, i, h, res});
                if (i == 0 || j == r)
                    rep.literal_asserted_ok = false;
            }
        }
    }

    return rep;
}

struct IbpFailure {
    unsigned j;
    Multivector lhs, rhs;
};

struct IbpReport {
    bool ok = true;
    std::vector<IbpFailure> failures;
};

/// Integration by parts, coefficient by coefficient:
/// D_j α ∧ β = Σ_k D_{j-k}(α ∧ X_k β) where X is the series inverse of D.
inline IbpReport integration_by_parts_check(const EndoSeries& d, const Multivector& alpha,
                                            const Multivector& beta) {
    EndoSeries x = series_invert(d);
    auto da = d.apply(alpha);
    auto xb = x.apply(beta);
    IbpReport rep;
    for (unsigned j = 0; j <= d.order(); ++j) {
        Multivector lhs = wedge(da[j], beta);
        Multivector rhs(d.context());
        for (unsigned k = 0; k <= j; ++k)
            rhs += d.coeff(j - k).apply(wedge(alpha, xb[k]));
        if (lhs != rhs) {
            rep.ok = false;
            rep.failures.push_back({j, lhs, rhs});
        }
    }
    return rep;
}

struct UWedgeFailure {
    unsigned i;
    Multivector lhs, rhs;
};

struct UWedgeReport {
    bool ok = true;
    std::vector<UWedgeFailure> failures;
};

/// The U-operators against a wedge factor:
/// U_i(α) ∧ β = Σ_j U_{i-j}(α ∧ P_j β) with P the stored coefficients of
/// the extension of 1_M - f t.
inline UWedgeReport u_wedge_identity_check(const Context& ctx, const Matrix& f,
                                           const Multivector& alpha, const Multivector& beta,
                                           unsigned N) {
    const USeq useq = u_operators(ctx, f, N);
    const EndoSeries p = fbar(ctx, f, N);
    auto pb = p.apply(beta);
    UWedgeReport rep;
    for (unsigned i = 0; i <= N; ++i) {
        Multivector lhs = wedge(useq.u[i].apply(alpha), beta);
        Multivector rhs(ctx);
        for (unsigned j = 0; j <= i; ++j)
            rhs += useq.u[i - j].apply(wedge(alpha, pb[j]));
        if (lhs != rhs) {
            rep.ok = false;
            rep.failures.push_back({i, lhs, rhs});
        }
    }
    return rep;
}

} // namespace wedgehs
