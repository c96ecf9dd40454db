#pragma once

#include <bit>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wedgehs/cayley.hpp"
#include "wedgehs/endoseries.hpp"
#include "wedgehs/expode.hpp"
#include "wedgehs/exterior.hpp"
#include "wedgehs/matrix.hpp"
#include "wedgehs/rational.hpp"

namespace wedgehs {

/// All machine-readable output goes through ordered JSON so documents are
/// byte-stable across runs.
using Json = nlohmann::ordered_json;

/// A validated square matrix document {"rank": r, "entries": [["p/q", ...]]},
/// entries row-major; column j is the image of the j-th basis vector.
struct MatrixInput {
    unsigned rank = 0;
    Matrix entries;
};

inline MatrixInput parse_matrix(const Json& doc, unsigned max_rank = kDefaultMaxRank) {
    if (!doc.is_object() || !doc.contains("rank") || !doc.contains("entries"))
        throw parse_error("matrix document must be an object with \"rank\" and \"entries\"");
    if (!doc["rank"].is_number_unsigned())
        throw parse_error("\"rank\" must be a non-negative integer");
    const auto rank_value = doc["rank"].get<std::uint64_t>();
    if (rank_value < 1 || rank_value > max_rank)
        throw rank_out_of_range("rank must be between 1 and " + std::to_string(max_rank));
    const unsigned r = static_cast<unsigned>(rank_value);

    const Json& rows = doc["entries"];
    if (!rows.is_array() || rows.size() != r)
        throw parse_error("matrix is not square: expected " + std::to_string(r) + " rows");
    Matrix m(r, r);
    for (unsigned i = 0; i < r; ++i) {
        if (!rows[i].is_array() || rows[i].size() != r)
            throw parse_error("matrix is not square: row " + std::to_string(i) + " must have " +
                              std::to_string(r) + " entries");
        for (unsigned j = 0; j < r; ++j) {
            if (!rows[i][j].is_string())
                throw parse_error("matrix entries must be rational strings");
            m(i, j) = Rational::from_string(rows[i][j].get<std::string>());
        }
    }
    return {r, std::move(m)};
}

inline MatrixInput parse_matrix(std::istream& in, unsigned max_rank = kDefaultMaxRank) {
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    return parse_matrix(doc, max_rank);
}

inline MatrixInput parse_matrix_string(const std::string& text,
                                       unsigned max_rank = kDefaultMaxRank) {
    std::istringstream in(text);
    return parse_matrix(in, max_rank);
}

// ---------------------------------------------------------------------------
// Serializers. Rationals always travel as strings.

inline Json to_json(const Rational& r) {
    return Json(r.str());
}

inline Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const Json& rows) {
    if (!rows.is_array() || rows.empty())
        throw parse_error("matrix must be a non-empty array of rows");
    const std::size_t nr = rows.size();
    const std::size_t nc = rows[0].is_array() ? rows[0].size() : 0;
    Matrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i) {
        if (!rows[i].is_array() || rows[i].size() != nc)
            throw parse_error("ragged matrix rows");
        for (std::size_t j = 0; j < nc; ++j)
            m(i, j) = Rational::from_string(rows[i][j].get<std::string>());
    }
    return m;
}

inline std::string blade_key(Blade b) {
    std::string key;
    for (unsigned i : b.indices()) {
        if (!key.empty())
            key += ',';
        key += std::to_string(i);
    }
    return key;
}

inline Blade blade_from_key(const std::string& key) {
    if (key.empty())
        return Blade{};
    std::uint32_t mask = 0;
    std::size_t pos = 0;
    while (pos <= key.size()) {
        auto comma = key.find(',', pos);
        std::string part = key.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (part.empty())
            throw parse_error("invalid blade key '" + key + "'");
        for (char c : part)
            if (c < '0' || c > '9')
                throw parse_error("invalid blade key '" + key + "'");
        mask |= std::uint32_t{1} << std::stoul(part);
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return Blade(mask);
}

inline Json to_json(const Multivector& v) {
    Json terms = Json::object();
    for (const auto& [mask, c] : v.terms())
        terms[blade_key(Blade(mask))] = c.str();
    return Json{{"rank", v.context().rank()}, {"terms", std::move(terms)}};
}

inline Multivector multivector_from_json(const Json& doc, unsigned max_rank = kDefaultMaxRank) {
    if (!doc.is_object() || !doc.contains("rank") || !doc.contains("terms"))
        throw parse_error("multivector document must carry \"rank\" and \"terms\"");
    Context ctx(doc["rank"].get<unsigned>(), max_rank);
    Multivector v(ctx);
    for (const auto& [key, value] : doc["terms"].items())
        v.add_term(blade_from_key(key), Rational::from_string(value.get<std::string>()));
    return v;
}

inline Json to_json(const GradedEndo& e) {
    Json blocks = Json::object();
    for (unsigned h = 0; h <= e.context().rank(); ++h)
        blocks[std::to_string(h)] = to_json(e.block(h));
    return Json{{"rank", e.context().rank()}, {"blocks", std::move(blocks)}};
}

/// Same document restricted to a single grade block.
inline Json to_json_grade(const GradedEndo& e, unsigned grade) {
    Json blocks = Json::object();
    blocks[std::to_string(grade)] = to_json(e.block(grade));
    return Json{{"rank", e.context().rank()}, {"blocks", std::move(blocks)}};
}

inline GradedEndo graded_endo_from_json(const Json& doc, unsigned max_rank = kDefaultMaxRank) {
    if (!doc.is_object() || !doc.contains("rank") || !doc.contains("blocks"))
        throw parse_error("endomorphism document must carry \"rank\" and \"blocks\"");
    Context ctx(doc["rank"].get<unsigned>(), max_rank);
    GradedEndo e(ctx);
    for (const auto& [key, value] : doc["blocks"].items()) {
        unsigned h = static_cast<unsigned>(std::stoul(key));
        if (h > ctx.rank())
            throw parse_error("block grade out of range");
        Matrix m = matrix_from_json(value);
        if (m.rows() != ctx.dim(h) || m.cols() != ctx.dim(h))
            throw parse_error("block size does not match C(rank, grade)");
        e.block(h) = std::move(m);
    }
    return e;
}

inline Json series_json(const std::vector<Rational>& coeffs, const char* kind) {
    Json list = Json::array();
    for (const auto& c : coeffs)
        list.push_back(c.str());
    return Json{{"kind", kind},
                {"order", coeffs.size() - 1},
                {"coeffs", std::move(list)}};
}

inline Json to_json(const ScalarSeries& s) {
    return series_json(s.coeffs(), "ordinary");
}

inline Json to_json(const EGFSeries& s) {
    return series_json(s.coeffs(), "egf");
}

inline Json to_json(const MatrixEGF& m) {
    Json list = Json::array();
    for (const auto& c : m.coeffs)
        list.push_back(to_json(c));
    return list;
}

inline Json to_json(const VerifyReport& rep) {
    Json u_vanishing = Json::array();
    for (const auto& v : rep.u_vanishing) {
        Json entry{{"grade", v.grade}};
        entry["first_nonzero_k"] = v.first_nonzero_k ? Json(*v.first_nonzero_k) : Json(nullptr);
        u_vanishing.push_back(std::move(entry));
    }

    Json classic_residuals = Json::array();
    for (const auto& c : rep.classic_residuals)
        classic_residuals.push_back(Json{{"shift", c.shift}, {"residual", to_json(c.residual)}});

    Json rational_residuals = Json::array();
    for (const auto& c : rep.rational_form_residuals)
        rational_residuals.push_back(Json{
            {"j", c.j}, {"k", c.k}, {"grade", c.grade}, {"residual", to_json(c.residual)}});

    Json literal = Json::array();
    for (const auto& c : rep.literal_residuals)
        literal.push_back(
            Json{{"j", c.j}, {"i", c.i}, {"grade", c.grade}, {"residual", to_json(c.residual)}});

    Json e = Json::array();
    for (const auto& v : rep.e)
        e.push_back(v.str());

    Json ledger = Json::array();
    for (unsigned i = 0; i < rep.grade0_ledger.size() && i <= rep.e.size(); ++i)
        ledger.push_back(rep.grade0_ledger[i].str());

    return Json{{"rank", rep.ctx.rank()},
                {"order", rep.order},
                {"e", std::move(e)},
                {"classic_ch", rep.classic_ch},
                {"classic_ch_residuals", std::move(classic_residuals)},
                {"u_vanishing", std::move(u_vanishing)},
                {"rational_form", rep.rational_form},
                {"rational_form_residuals", std::move(rational_residuals)},
                {"grade0_ledger", std::move(ledger)},
                {"grade0_consistent", rep.grade0_ok},
                {"u_routes_agree", rep.u_routes_agree},
                {"literal_theorem_residuals", std::move(literal)},
                {"asserted_ok", rep.asserted_ok()}};
}

} // namespace wedgehs
