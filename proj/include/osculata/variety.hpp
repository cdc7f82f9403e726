#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "osculata/linalg.hpp"
#include "osculata/multi_poly.hpp"
#include "osculata/sampling.hpp"

namespace osculata {

/// A chart parametrization A^n -> A^(r+1), the affine-cone lift of X in P^r.
class VarietySpec {
public:
    VarietySpec(std::string name, std::vector<std::string> param_names, std::size_t ambient_dim,
                std::vector<MultiPoly> coords)
        : name_(std::move(name)), params_(std::move(param_names)), ambient_(ambient_dim),
          coords_(std::move(coords))
    {
        if (coords_.size() != ambient_ + 1) {
            throw InputError("expected ambient+1 = " + std::to_string(ambient_ + 1) +
                             " coordinates, got " + std::to_string(coords_.size()));
        }
        bool all_zero = true;
        for (const auto& c : coords_) {
            if (c.nvars() != params_.size()) {
                throw InputError("coordinate polynomial has the wrong number of variables");
            }
            all_zero = all_zero && c.is_zero();
        }
        if (all_zero) throw InputError("all coordinate polynomials are identically zero");
        for (std::size_t i = 0; i < params_.size(); ++i) {
            if (!is_identifier(params_[i])) {
                throw InputError("parameter name '" + params_[i] + "' is not an identifier");
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (params_[j] == params_[i]) throw InputError("duplicate parameter '" + params_[i] + "'");
            }
        }
    }

    const std::string& name() const noexcept { return name_; }
    const std::vector<std::string>& param_names() const noexcept { return params_; }
    std::size_t nparams() const noexcept { return params_.size(); }
    /// r, for X in P^r.
    std::size_t ambient_dim() const noexcept { return ambient_; }
    const std::vector<MultiPoly>& coords() const noexcept { return coords_; }

    bool operator==(const VarietySpec&) const = default;

    static bool is_identifier(std::string_view s)
    {
        if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
        for (char c : s) {
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
        }
        return true;
    }

private:
    std::string name_;
    std::vector<std::string> params_;
    std::size_t ambient_;
    std::vector<MultiPoly> coords_;
};

/// A smooth sample point x together with a chart index j where phi_j(x) != 0.
struct ChartPoint {
    RatVector coords;
    std::size_t chart_index = 0;

    bool operator==(const ChartPoint&) const = default;
};

// ---------------------------------------------------------------------------
// Polynomial text
// ---------------------------------------------------------------------------

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, std::span<const std::string> names)
        : text_(text), names_(names)
    {
    }

    MultiPoly parse()
    {
        MultiPoly f = expr();
        skip_ws();
        if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
        return f;
    }

private:
    MultiPoly expr()
    {
        skip_ws();
        bool negate = false;
        if (peek('+') || peek('-')) {
            negate = text_[pos_] == '-';
            ++pos_;
        }
        MultiPoly f = term();
        if (negate) f = -f;
        for (;;) {
            skip_ws();
            if (peek('+')) {
                ++pos_;
                f += term();
            } else if (peek('-')) {
                ++pos_;
                f -= term();
            } else {
                return f;
            }
        }
    }

    MultiPoly term()
    {
        MultiPoly f = factor();
        for (;;) {
            skip_ws();
            if (!peek('*')) return f;
            ++pos_;
            f = f * factor();
        }
    }

    MultiPoly factor()
    {
        MultiPoly b = base();
        skip_ws();
        if (peek('^')) {
            ++pos_;
            skip_ws();
            if (!digit()) fail("expected unsigned integer exponent");
            const std::size_t start = pos_;
            const BigInt e = digits();
            if (e > 4096) fail_at(start, "exponent too large");
            b = b.pow(static_cast<std::uint32_t>(e));
        }
        return b;
    }

    MultiPoly base()
    {
        skip_ws();
        const std::size_t n = names_.size();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        if (peek('(')) {
            ++pos_;
            MultiPoly f = expr();
            skip_ws();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return f;
        }
        if (digit()) {
            BigInt num = digits();
            BigInt den = 1;
            skip_ws();
            if (peek('/')) {
                ++pos_;
                skip_ws();
                if (!digit()) fail("expected denominator");
                const std::size_t start = pos_;
                den = digits();
                if (den == 0) fail_at(start, "zero denominator");
            }
            return MultiPoly::constant(n, Rational{num, den});
        }
        if (std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            const std::string_view id = text_.substr(start, pos_ - start);
            for (std::size_t i = 0; i < n; ++i) {
                if (names_[i] == id) return MultiPoly::variable(n, i);
            }
            fail_at(start, "unknown variable '" + std::string(id) + "'");
        }
        fail(std::string("unexpected '") + text_[pos_] + "'");
    }

    BigInt digits()
    {
        const std::size_t start = pos_;
        while (digit()) ++pos_;
        return BigInt{std::string(text_.substr(start, pos_ - start))};
    }

    bool digit() const { return pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9'; }
    bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }

    [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const
    {
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(msg, line, col);
    }

    std::string_view text_;
    std::span<const std::string> names_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses the polynomial grammar:
///   expr := term (('+'|'-') term)*, with an optional leading sign
///   term := factor ('*' factor)*;  factor := base ('^' uint)?
///   base := rational | ident | '(' expr ')';  rational := uint ('/' uint)?
inline MultiPoly parse_poly(std::string_view text, std::span<const std::string> names)
{
    return detail::PolyParser(text, names).parse();
}

/// Renders f in the same grammar, terms in graded order.
inline std::string format_poly(const MultiPoly& f, std::span<const std::string> names)
{
    if (f.nvars() != names.size()) throw InputError("format_poly: name count mismatch");
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [p, c] : f.terms()) {
        const bool negative = c < 0;
        const Rational mag = negative ? Rational{-c} : c;
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names[i];
            if (p[i] > 1) mono += "^" + std::to_string(p[i]);
        }
        if (mono.empty()) {
            out += to_display(mag);
        } else if (mag == 1) {
            out += mono;
        } else {
            out += to_display(mag) + "*" + mono;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Spec JSON
// ---------------------------------------------------------------------------

/// {"name", "params", "ambient", "coords"} with keys in that order.
inline nlohmann::ordered_json spec_to_json(const VarietySpec& spec)
{
    nlohmann::ordered_json j;
    j["name"] = spec.name();
    j["params"] = spec.param_names();
    j["ambient"] = spec.ambient_dim();
    auto coords = nlohmann::ordered_json::array();
    for (const auto& c : spec.coords()) coords.push_back(format_poly(c, spec.param_names()));
    j["coords"] = std::move(coords);
    return j;
}

inline std::string pretty_print(const VarietySpec& spec)
{
    return spec_to_json(spec).dump(2) + "\n";
}

namespace detail {

inline std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte)
{
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

} // namespace detail

inline VarietySpec parse_spec(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto byte = e.byte > 0 ? e.byte - 1 : 0;
        const auto [line, col] = detail::line_col(text, byte);
        throw ParseError("malformed JSON", line, col);
    }
    if (!doc.is_object()) throw ParseError("spec must be a JSON object", 1, 1);
    const auto require = [&](const char* key) -> const nlohmann::json& {
        if (!doc.contains(key)) throw InputError(std::string("spec is missing \"") + key + "\"");
        return doc.at(key);
    };
    const auto& params_j = require("params");
    const auto& ambient_j = require("ambient");
    const auto& coords_j = require("coords");
    if (!params_j.is_array()) throw InputError("\"params\" must be an array of identifiers");
    if (!ambient_j.is_number_unsigned()) throw InputError("\"ambient\" must be a non-negative integer");
    if (!coords_j.is_array()) throw InputError("\"coords\" must be an array of polynomial strings");

    std::vector<std::string> params;
    for (const auto& p : params_j) {
        if (!p.is_string()) throw InputError("\"params\" entries must be strings");
        params.push_back(p.get<std::string>());
    }
    const auto ambient = ambient_j.get<std::size_t>();
    if (coords_j.size() != ambient + 1) {
        throw InputError("\"coords\" has " + std::to_string(coords_j.size()) +
                         " entries but ambient+1 = " + std::to_string(ambient + 1));
    }
    std::vector<MultiPoly> coords;
    for (std::size_t i = 0; i < coords_j.size(); ++i) {
        if (!coords_j[i].is_string()) throw InputError("\"coords\" entries must be strings");
        const auto s = coords_j[i].get<std::string>();
        try {
            coords.push_back(parse_poly(s, params));
        } catch (const ParseError& e) {
            throw ParseError("coords[" + std::to_string(i) + "]: " + e.what(), e.line(), e.column());
        }
    }
    std::string name = "unnamed";
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw InputError("\"name\" must be a string");
        name = doc["name"].get<std::string>();
    }
    return VarietySpec(std::move(name), std::move(params), ambient, std::move(coords));
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> indexed_names(const std::string& stem, std::size_t n)
{
    if (n == 1) return {stem};
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back(stem + std::to_string(i));
    return names;
}

} // namespace detail

/// Affine chart of the d-uple embedding v_d(P^n): all monomials of degree <= d.
inline VarietySpec gen_veronese(std::size_t n, std::uint32_t d)
{
    if (n < 1 || d < 1) throw InputError("veronese needs n >= 1 and d >= 1");
    std::vector<MultiPoly> coords;
    for (const auto& p : indices_up_to(n, d)) coords.push_back(MultiPoly::monomial(p, Rational{1}));
    const std::size_t r = coords.size() - 1;
    return VarietySpec("veronese(" + std::to_string(n) + "," + std::to_string(d) + ")",
                       detail::indexed_names("s", n), r, std::move(coords));
}

/// Rational normal curve of degree d in P^d.
inline VarietySpec gen_rnc(std::uint32_t d)
{
    auto v = gen_veronese(1, d);
    return VarietySpec("rnc(" + std::to_string(d) + ")", v.param_names(), v.ambient_dim(), v.coords());
}

/// Segre product of P^{d_1} x ... x P^{d_m}; first factor varies fastest.
inline VarietySpec gen_segre(std::span<const std::size_t> dims)
{
    if (dims.empty()) throw InputError("segre needs at least one factor");
    static constexpr std::string_view letters = "stuvxyzabcdefghijk";
    std::vector<std::string> names;
    std::vector<std::size_t> offset;
    std::string label = "segre(";
    for (std::size_t f = 0; f < dims.size(); ++f) {
        if (dims[f] < 1) throw InputError("segre factor dimensions must be >= 1");
        const std::string stem =
            f < letters.size() ? std::string(1, letters[f]) : "f" + std::to_string(f) + "_";
        offset.push_back(names.size());
        for (auto& nm : detail::indexed_names(stem, dims[f])) names.push_back(std::move(nm));
        label += (f ? "," : "") + std::to_string(dims[f]);
    }
    label += ")";
    const std::size_t n = names.size();
    std::vector<std::size_t> choice(dims.size(), 0);
    std::vector<MultiPoly> coords;
    for (;;) {
        MultiIndex p(n);
        for (std::size_t f = 0; f < dims.size(); ++f) {
            if (choice[f] > 0) p = p.bumped(offset[f] + choice[f] - 1);
        }
        coords.push_back(MultiPoly::monomial(p, Rational{1}));
        std::size_t f = 0;
        while (f < dims.size() && ++choice[f] > dims[f]) choice[f++] = 0;
        if (f == dims.size()) break;
    }
    const std::size_t r = coords.size() - 1;
    return VarietySpec(std::move(label), std::move(names), r, std::move(coords));
}

/// Linear projection coords = M * phi with M drawn uniformly from [-bound, bound].
inline VarietySpec gen_projection(const VarietySpec& src, std::size_t target_dim, std::uint64_t seed,
                                  std::int64_t bound = 10)
{
    if (target_dim >= src.ambient_dim()) {
        throw InputError("projection target " + std::to_string(target_dim) +
                         " must be below the source ambient dimension " +
                         std::to_string(src.ambient_dim()));
    }
    if (bound < 1) throw InputError("projection coefficient bound must be >= 1");
    IntegerStream stream(seed, salt::projection);
    std::vector<MultiPoly> coords;
    for (std::size_t i = 0; i <= target_dim; ++i) {
        MultiPoly row(src.nparams());
        for (const auto& phi : src.coords()) {
            const auto m = stream.uniform(bound);
            if (m != 0) row += phi * Rational{m};
        }
        coords.push_back(std::move(row));
    }
    return VarietySpec("projection(" + src.name() + "," + std::to_string(target_dim) + "," +
                           std::to_string(seed) + ")",
                       src.param_names(), target_dim, std::move(coords));
}

/// Cone over base with vertex the new coordinate point: adds parameter w and coordinate w.
inline VarietySpec gen_cone(const VarietySpec& base)
{
    std::string fresh = "w";
    const auto taken = [&](const std::string& s) {
        for (const auto& p : base.param_names()) {
            if (p == s) return true;
        }
        return false;
    };
    for (int i = 1; taken(fresh); ++i) fresh = "w" + std::to_string(i);
    auto names = base.param_names();
    names.push_back(fresh);
    std::vector<MultiPoly> coords;
    for (const auto& c : base.coords()) coords.push_back(c.extended(1));
    coords.push_back(MultiPoly::variable(names.size(), names.size() - 1));
    return VarietySpec("cone(" + base.name() + ")", std::move(names), base.ambient_dim() + 1,
                       std::move(coords));
}

/// Order-1 jet rows phi(x), D_{e_1} phi(x), ..., D_{e_n} phi(x).
inline std::vector<RatVector> first_order_rows(const VarietySpec& spec, std::span<const Rational> x)
{
    std::vector<RatVector> rows;
    for (const auto& p : indices_up_to(spec.nparams(), 1)) {
        RatVector row;
        for (const auto& phi : spec.coords()) row.push_back(evaluate(hasse_derivative(phi, p), x));
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Accepts x as a chart point: phi_j(x) != 0 and the order-1 jet has full rank n+1.
/// chart = nullopt selects the first nonvanishing coordinate.
inline ChartPoint validate_point(const VarietySpec& spec, std::span<const Rational> x,
                                 std::optional<std::size_t> chart = std::nullopt)
{
    if (x.size() != spec.nparams()) {
        throw InputError("point has " + std::to_string(x.size()) + " coordinates, spec has " +
                         std::to_string(spec.nparams()) + " parameters");
    }
    RatVector value;
    for (const auto& phi : spec.coords()) value.push_back(evaluate(phi, x));
    std::size_t j = 0;
    if (chart) {
        if (*chart >= value.size()) throw InputError("chart index out of range");
        j = *chart;
        if (value[j] == 0) {
            throw PointRejected(PointRejected::Reason::BasePoint,
                                "chart coordinate " + std::to_string(j) + " vanishes at the point");
        }
    } else {
        while (j < value.size() && value[j] == 0) ++j;
        if (j == value.size()) {
            throw PointRejected(PointRejected::Reason::BasePoint,
                                "all coordinates vanish: the point is a base point of the chart");
        }
    }
    const auto rows = first_order_rows(spec, x);
    const auto r = Subspace::span(spec.ambient_dim() + 1, rows).dim();
    if (r != spec.nparams() + 1) {
        throw PointRejected(PointRejected::Reason::NonImmersive,
                            "non-immersive point: order-1 jet rank " + std::to_string(r) + " < " +
                                std::to_string(spec.nparams() + 1));
    }
    return ChartPoint{RatVector(x.begin(), x.end()), j};
}

/// Named reference varieties used by the audit and the acceptance suite.
inline std::vector<VarietySpec> builtin_corpus()
{
    const std::vector<std::string> plane_params{"s1", "s2"};
    VarietySpec plane("plane-in-P4", plane_params, 4,
                      {parse_poly("1", plane_params), parse_poly("s1", plane_params),
                       parse_poly("s2", plane_params), MultiPoly(2), MultiPoly(2)});
    const std::size_t seg11[] = {1, 1};
    const std::size_t seg12[] = {1, 2};
    auto quadric = gen_segre(seg11);
    return {
        VarietySpec("twisted-cubic", {"s"}, 3, gen_rnc(3).coords()),
        VarietySpec("rational-normal-quartic", {"s"}, 4, gen_rnc(4).coords()),
        VarietySpec("veronese-surface", gen_veronese(2, 2).param_names(), 5, gen_veronese(2, 2).coords()),
        VarietySpec("segre-P1xP2", gen_segre(seg12).param_names(), 5, gen_segre(seg12).coords()),
        VarietySpec("quadric-surface", quadric.param_names(), 3, quadric.coords()),
        std::move(plane),
        gen_cone(gen_rnc(3)),
        gen_projection(gen_veronese(2, 3), 5, 42),
    };
}

} // namespace osculata
