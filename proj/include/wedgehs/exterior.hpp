#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wedgehs/errors.hpp"
#include "wedgehs/rational.hpp"

namespace wedgehs {

inline constexpr unsigned kDefaultMaxRank = 12;

/// Hard ceiling imposed by the 32-bit blade masks and by the size of the
/// per-rank lookup tables (2^r entries).
inline constexpr unsigned kAbsoluteMaxRank = 24;

/// Basis monomial b_{i1} ^ ... ^ b_{ij}, encoded as the bitmask of its
/// strictly increasing index set. Mask 0 is the unit of the algebra.
struct Blade {
    std::uint32_t mask = 0;

    Blade() = default;
    explicit Blade(std::uint32_t m) : mask(m) {}

    static Blade from_indices(std::initializer_list<unsigned> indices) {
        std::uint32_t m = 0;
        for (unsigned i : indices)
            m |= std::uint32_t{1} << i;
        return Blade(m);
    }

    unsigned grade() const { return static_cast<unsigned>(std::popcount(mask)); }

    std::vector<unsigned> indices() const {
        std::vector<unsigned> out;
        for (std::uint32_t m = mask; m; m &= m - 1)
            out.push_back(static_cast<unsigned>(std::countr_zero(m)));
        return out;
    }

    friend bool operator==(Blade a, Blade b) { return a.mask == b.mask; }
    friend bool operator!=(Blade a, Blade b) { return a.mask != b.mask; }
    friend bool operator<(Blade a, Blade b) { return a.mask < b.mask; }
};

/// The rank-r free module and its exterior algebra, with the blade
/// enumeration tables every other type keys into. Copies share the tables.
///
/// Blades of a given grade are ordered by ascending mask value; that order
/// fixes matrix row/column indexing globally.
class Context {
public:
    explicit Context(unsigned rank, unsigned max_rank = kDefaultMaxRank) {
        if (max_rank > kAbsoluteMaxRank)
            max_rank = kAbsoluteMaxRank;
        if (rank < 1 || rank > max_rank)
            throw rank_out_of_range("rank must be between 1 and " + std::to_string(max_rank));
        t_ = std::make_shared<Tables>(rank);
    }

    unsigned rank() const { return t_->rank; }

    /// dim Λ^h M = C(r, h).
    unsigned dim(unsigned grade) const { return static_cast<unsigned>(t_->blades[grade].size()); }

    /// Grade-h blade masks in canonical (ascending) order.
    const std::vector<std::uint32_t>& blades(unsigned grade) const { return t_->blades[grade]; }

    /// Position of a blade within its grade's canonical order.
    unsigned index_of(std::uint32_t mask) const { return t_->index[mask]; }

    std::uint32_t top_mask() const { return (std::uint32_t{1} << t_->rank) - 1; }

    bool contains(Blade b) const { return b.mask <= top_mask(); }

    friend bool operator==(const Context& a, const Context& b) { return a.rank() == b.rank(); }
    friend bool operator!=(const Context& a, const Context& b) { return !(a == b); }

private:
    struct Tables {
        explicit Tables(unsigned r) : rank(r), blades(r + 1), index(std::size_t{1} << r) {
            for (std::uint32_t m = 0; m < (std::uint32_t{1} << r); ++m) {
                auto& grade_list = blades[std::popcount(m)];
                index[m] = static_cast<std::uint32_t>(grade_list.size());
                grade_list.push_back(m);
            }
        }
        unsigned rank;
        std::vector<std::vector<std::uint32_t>> blades;
        std::vector<std::uint32_t> index;
    };

    std::shared_ptr<const Tables> t_;
};

struct WedgedBlade {
    int sign; // -1, 0 or +1
    Blade blade;
};

/// Wedge of two blades. Sign is (-1)^inv where inv counts the pairs
/// (i in a, j in b) with i > j, i.e. the transpositions needed to merge the
/// two sorted index lists; zero when the blades share an index.
inline WedgedBlade wedge_blades(const Context& ctx, Blade a, Blade b) {
    if (!ctx.contains(a) || !ctx.contains(b))
        throw context_mismatch("blade does not fit the context rank");
    if (a.mask & b.mask)
        return {0, Blade{}};
    int inv = 0;
    for (std::uint32_t m = b.mask; m; m &= m - 1) {
        unsigned j = static_cast<unsigned>(std::countr_zero(m));
        inv += std::popcount(a.mask >> (j + 1));
    }
    return {(inv & 1) ? -1 : +1, Blade(a.mask | b.mask)};
}

/// Sparse element of the exterior algebra: finite map blade -> coefficient
/// with no stored zeros, so equality is plain map equality.
class Multivector {
public:
    explicit Multivector(Context ctx) : ctx_(std::move(ctx)) {}

    static Multivector unit(const Context& ctx) { return blade_term(ctx, Blade{}, Rational(1)); }

    static Multivector blade_term(const Context& ctx, Blade b, Rational c = Rational(1)) {
        Multivector m(ctx);
        m.add_term(b, std::move(c));
        return m;
    }

    const Context& context() const { return ctx_; }
    const std::map<std::uint32_t, Rational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(Blade b) const {
        auto it = terms_.find(b.mask);
        return it == terms_.end() ? Rational() : it->second;
    }

    void add_term(Blade b, const Rational& c) {
        if (!ctx_.contains(b))
            throw context_mismatch("blade does not fit the context rank");
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(b.mask, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    /// Grade when homogeneous (zero counts as homogeneous of any grade).
    std::optional<unsigned> homogeneous_grade() const {
        std::optional<unsigned> g;
        for (const auto& [mask, c] : terms_) {
            unsigned h = static_cast<unsigned>(std::popcount(mask));
            if (g && *g != h)
                return std::nullopt;
            g = h;
        }
        return g ? g : std::optional<unsigned>{0};
    }

    friend Multivector operator+(const Multivector& a, const Multivector& b) {
        check_context(a, b);
        Multivector r = a;
        for (const auto& [mask, c] : b.terms_)
            r.add_term(Blade(mask), c);
        return r;
    }

    friend Multivector operator-(const Multivector& a, const Multivector& b) {
        check_context(a, b);
        Multivector r = a;
        for (const auto& [mask, c] : b.terms_)
            r.add_term(Blade(mask), -c);
        return r;
    }

    friend Multivector operator-(const Multivector& a) {
        Multivector r(a.ctx_);
        for (const auto& [mask, c] : a.terms_)
            r.terms_.emplace(mask, -c);
        return r;
    }

    friend Multivector operator*(const Rational& c, const Multivector& a) {
        Multivector r(a.ctx_);
        if (c.is_zero())
            return r;
        for (const auto& [mask, x] : a.terms_)
            r.terms_.emplace(mask, c * x);
        return r;
    }
    friend Multivector operator*(const Multivector& a, const Rational& c) { return c * a; }

    Multivector& operator+=(const Multivector& b) { return *this = *this + b; }
    Multivector& operator-=(const Multivector& b) { return *this = *this - b; }

    friend bool operator==(const Multivector& a, const Multivector& b) {
        return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Multivector& a, const Multivector& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Multivector& m) {
        if (m.terms_.empty())
            return os << "0";
        bool first = true;
        for (const auto& [mask, c] : m.terms_) {
            if (!first)
                os << " + ";
            first = false;
            os << c << "*e[";
            bool fi = true;
            for (unsigned i : Blade(mask).indices()) {
                os << (fi ? "" : ",") << i;
                fi = false;
            }
            os << "]";
        }
        return os;
    }

private:
    static void check_context(const Multivector& a, const Multivector& b) {
        if (a.ctx_ != b.ctx_)
            throw context_mismatch("multivectors from different contexts");
    }

    friend Multivector wedge(const Multivector&, const Multivector&);

    Context ctx_;
    std::map<std::uint32_t, Rational> terms_;
};

/// Bilinear extension of wedge_blades.
inline Multivector wedge(const Multivector& a, const Multivector& b) {
    if (a.ctx_ != b.ctx_)
        throw context_mismatch("multivectors from different contexts");
    Multivector r(a.ctx_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            auto w = wedge_blades(a.ctx_, Blade(ma), Blade(mb));
            if (w.sign == 0)
                continue;
            Rational c = ca * cb;
            if (w.sign < 0)
                c = -c;
            r.add_term(w.blade, c);
        }
    return r;
}

} // namespace wedgehs
