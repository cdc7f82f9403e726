#pragma once

#include <openssl/evp.h>

#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "osculata/invariants.hpp"
#include "osculata/version.hpp"

namespace osculata {

using Json = nlohmann::ordered_json;

/// Lowercase hex SHA-256 of the canonical spec JSON.
inline std::string spec_digest(const VarietySpec& spec)
{
    const std::string text = spec_to_json(spec).dump();
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

inline Json rational_json(const Rational& q) { return to_string(q); }

inline Json vector_json(std::span<const Rational> v)
{
    Json a = Json::array();
    for (const auto& q : v) a.push_back(rational_json(q));
    return a;
}

inline Json index_json(const MultiIndex& p)
{
    Json a = Json::array();
    for (auto e : p.exponents()) a.push_back(e);
    return a;
}

inline Json estimate_json(const Estimate& e, std::optional<std::uint32_t> k = std::nullopt)
{
    Json j;
    if (k) j["k"] = *k;
    j["value"] = e.value;
    j["stable"] = e.stable;
    j["samples"] = e.samples;
    return j;
}

/// Form variables S1..Sn.
inline std::vector<std::string> form_variable_names(std::size_t n)
{
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back("S" + std::to_string(i));
    return names;
}

inline Json form_system_json(const FormSystem& fs)
{
    const auto names = form_variable_names(fs.nvars);
    Json j;
    j["degree"] = fs.degree;
    j["rank"] = form_rank(fs);
    j["zero"] = fs.is_zero();
    Json forms = Json::array();
    for (const auto& g : fs.forms) forms.push_back(format_poly(g, names));
    j["forms"] = std::move(forms);
    Json ann = Json::array();
    for (const auto& a : fs.annihilators) ann.push_back(vector_json(a));
    j["annihilators"] = std::move(ann);
    return j;
}

inline Json vanishing_json(const VanishingVerdict& v)
{
    Json j;
    j["k"] = v.k;
    j["t_k"] = v.t_k;
    j["theta_k"] = v.theta;
    j["delta_k"] = v.delta;
    j["t_k+1"] = v.t_k1;
    j["t_k+2"] = v.t_k2;
    j["hypothesis"] = v.hypothesis;
    j["conclusion"] = v.conclusion;
    j["respected"] = v.respected;
    j["stable"] = v.stable;
    return j;
}

inline Json secant_tangent_json(const SecantTangentVerdict& v)
{
    Json j;
    j["tangent_dim"] = v.tangent_dim;
    j["secant_dim"] = v.secant_dim;
    j["t_2"] = v.t2;
    j["t_3"] = v.t3;
    j["hypothesis"] = v.hypothesis;
    j["conclusion"] = v.conclusion;
    j["respected"] = v.respected;
    j["stable"] = v.stable;
    return j;
}

struct AnalyzeConfig {
    SamplerConfig sampler;
    std::uint32_t max_order = 4;
    std::optional<std::size_t> chart;
    /// Explicit point; nullopt samples one from the seed.
    std::optional<RatVector> point;
};

/// Full single-point analysis as a deterministic JSON document.
/// Throws PointRejected for unusable points, InvariantViolation when a
/// structural bound is observed broken.
inline Json analyze(const VarietySpec& spec, const AnalyzeConfig& cfg)
{
    const auto& sc = cfg.sampler;
    sc.validate();
    const std::uint32_t K = cfg.max_order;
    if (K < 2) throw InputError("max order must be >= 2");
    if (spec.nparams() < 1) throw InputError("analysis needs at least one parameter");

    const ChartPoint x = cfg.point ? validate_point(spec, *cfg.point, cfg.chart) : [&] {
        auto p = sample_point(spec, sc, 0);
        return cfg.chart ? validate_point(spec, p.coords, cfg.chart) : p;
    }();
    const long n = static_cast<long>(spec.nparams());
    const auto jets = jet_table(spec, x, K);
    const auto tower = osculating_tower(jets, K);
    Json warnings = Json::array();

    Json doc;
    doc["tool"] = "osculata";
    doc["tool_version"] = kVersion;
    doc["spec_digest"] = "sha256:" + spec_digest(spec);
    doc["spec"] = spec_to_json(spec);

    Json config;
    config["seed"] = sc.seed;
    config["trials"] = sc.trials;
    config["coord_bound"] = sc.coord_bound;
    config["max_order"] = K;
    config["chart"] = cfg.chart ? Json(*cfg.chart) : Json("auto");
    config["point_mode"] = cfg.point ? "given" : "sampled";
    doc["config"] = std::move(config);

    Json point;
    point["coords"] = vector_json(x.coords);
    point["chart_index"] = x.chart_index;
    doc["point"] = std::move(point);

    Json jet_rows = Json::array();
    for (std::size_t i = 0; i < jets.indices().size(); ++i) {
        Json row;
        row["index"] = index_json(jets.indices()[i]);
        row["row"] = vector_json(jets.rows()[i]);
        jet_rows.push_back(std::move(row));
    }
    doc["jets"] = std::move(jet_rows);

    Json tj;
    tj["dims"] = tower.dims;
    tj["conormal_ranks"] = tower.conormal_ranks;
    doc["tower"] = std::move(tj);

    Json stab;
    std::optional<std::uint32_t> plateau;
    for (std::uint32_t m = 0; m < K; ++m) {
        if (tower.dims[m] == tower.dims[m + 1]) {
            plateau = m;
            break;
        }
    }
    if (plateau) {
        const auto s = stabilization(spec, x, K);
        stab["stabilized"] = true;
        stab["order"] = s.order;
        stab["span_dim"] = tower.dims[s.order];
        stab["degenerate"] = s.linear_forms.dim() > 0;
        Json forms = Json::array();
        for (const auto& ell : s.linear_forms.basis()) forms.push_back(vector_json(ell));
        stab["linear_forms"] = std::move(forms);
    } else {
        stab["stabilized"] = false;
        warnings.push_back("tower not stable by order " + std::to_string(K) + "; increase --max-order");
    }
    doc["stabilization"] = std::move(stab);

    Json forms = Json::array();
    for (std::uint32_t k = 1; k <= K; ++k) {
        const auto fs = fundamental_form_system(jets, k);
        const auto expected = tower.dims[k] - tower.dims[k - 1];
        if (form_rank(fs) != expected) {
            throw InvariantViolation("rank F_" + std::to_string(k) + " differs from t_k - t_(k-1)");
        }
        forms.push_back(form_system_json(fs));
    }
    doc["fundamental_forms"] = std::move(forms);

    Json inv;
    Json theta = Json::array();
    Json trank = Json::array();
    for (std::uint32_t k = 1; k + 1 <= K; ++k) {
        auto th = theta_k(spec, x, k, sc);
        if (th.value > static_cast<long>(tower.dims[k] - tower.dims[k - 1])) {
            throw InvariantViolation("theta_" + std::to_string(k) + " exceeds t_k - t_(k-1)");
        }
        auto tr = tangent_rank(spec, x, k, sc);
        const long bound = std::min(n, static_cast<long>(tower.dims[k + 1] - tower.dims[k]));
        if (tr.value > bound) {
            throw InvariantViolation("tangent rank at order " + std::to_string(k) + " exceeds its bound");
        }
        theta.push_back(estimate_json(th, k));
        trank.push_back(estimate_json(tr, k));
        if (!th.stable) warnings.push_back("theta_" + std::to_string(k) + " unstable across trials");
        if (!tr.stable) warnings.push_back("tangent rank " + std::to_string(k) + " unstable across trials");
    }
    inv["theta"] = std::move(theta);
    inv["tangent_rank"] = std::move(trank);

    Json delta = Json::array();
    for (std::uint32_t k = 1; k <= K; ++k) {
        const auto d = delta_k(spec, k, sc);
        delta.push_back(estimate_json(d, k));
        if (!d.stable) warnings.push_back("delta_" + std::to_string(k) + " unstable across trials");
    }
    inv["delta"] = std::move(delta);

    Json tangents = Json::array();
    for (std::uint32_t k = 1; k + 1 <= K; ++k) {
        const auto tv = tangent_variety_dim(spec, k, sc);
        Json a;
        a["k"] = k;
        a["osculating_dim"] = tv.osculating_dim.value;
        a["rank"] = tv.rank.value;
        a["dim"] = tv.dim.value;
        a["defect"] = tv.defect;
        a["stable"] = tv.dim.stable && tv.rank.stable && tv.osculating_dim.stable;
        if (!a["stable"].get<bool>()) {
            warnings.push_back("tangent variety " + std::to_string(k) + " unstable across trials");
        }
        tangents.push_back(std::move(a));
    }
    inv["tangent_varieties"] = std::move(tangents);

    const auto sec = secant_dim_terracini(spec, sc);
    Json sj;
    sj["dim"] = sec.dim.value;
    sj["defect"] = sec.defect;
    sj["delta_1"] = sec.delta1.value;
    sj["delta_consistent"] = sec.delta_consistent;
    sj["stable"] = sec.dim.stable && sec.delta1.stable;
    if (!sec.delta_consistent) warnings.push_back("delta_1 != delta_X - 1");
    inv["secant"] = std::move(sj);
    doc["invariants"] = std::move(inv);

    Json verdicts;
    Json vanish = Json::array();
    for (std::uint32_t k = 1; k + 2 <= K; ++k) {
        const auto v = vanishing_check(spec, k, sc);
        if (v.stable && !v.respected) {
            warnings.push_back("stable violation of the vanishing criterion at k = " + std::to_string(k));
        }
        vanish.push_back(vanishing_json(v));
    }
    verdicts["vanishing"] = std::move(vanish);

    const auto st = cor_tm06_check(spec, sc);
    if (st.stable && !st.respected) warnings.push_back("stable violation: tau = Sec but III != 0");
    verdicts["secant_tangent"] = secant_tangent_json(st);

    const auto bound = cor_tm07_check(spec, sc);
    Json bj;
    bj["rank_II"] = bound.rank_II;
    bj["bound"] = bound.bound;
    bj["satisfied"] = bound.satisfied;
    bj["advisory"] = bound.advisory;
    bj["nondegenerate"] = bound.nondegenerate;
    bj["tangent_degenerate"] = bound.tangent_degenerate;
    bj["stable"] = bound.stable;
    verdicts["second_form_bound"] = std::move(bj);

    const auto p09 = cor_p09_consistency(spec, sc);
    Json pj;
    pj["tangent_rank"] = p09.tangent_rank.value;
    pj["second_form_rank"] = p09.second_form_rank.value;
    pj["consistent"] = p09.consistent;
    pj["stable"] = p09.tangent_rank.stable && p09.second_form_rank.stable;
    verdicts["tangent_second_form"] = std::move(pj);
    doc["verdicts"] = std::move(verdicts);

    doc["warnings"] = std::move(warnings);
    return doc;
}

namespace detail {

inline std::string scalar_text(const Json& v)
{
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

inline bool all_scalars(const Json& a)
{
    for (const auto& e : a) {
        if (e.is_structured()) return false;
    }
    return true;
}

inline void flatten(const Json& v, const std::string& path, std::ostringstream& os)
{
    if (v.is_object()) {
        for (const auto& [key, child] : v.items()) flatten(child, path.empty() ? key : path + "." + key, os);
    } else if (v.is_array() && all_scalars(v)) {
        os << path << ": [";
        bool first = true;
        for (const auto& e : v) {
            os << (first ? "" : ", ") << scalar_text(e);
            first = false;
        }
        os << "]\n";
    } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "[" + std::to_string(i) + "]", os);
    } else {
        os << path << ": " << scalar_text(v) << "\n";
    }
}

} // namespace detail

/// One "path: value" line per JSON leaf; same content as the JSON document.
inline std::string to_text(const Json& doc)
{
    std::ostringstream os;
    detail::flatten(doc, "", os);
    return os.str();
}

} // namespace osculata
