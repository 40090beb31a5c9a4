/*
   Copyright 2026 The hetfb Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <toml.hpp>

#include "hetfb/model/network.hpp"

namespace hetfb {

/// Tier as written in a config file: power in dBm and bias in dB unless the
/// document says otherwise.
struct TierSpec {
    double density = 1.0;
    double tx_power = 0.0;
    double bias = 0.0;
    int antennas = 1;
    double open_access_prob = 1.0;
    bool operator==(const TierSpec&) const = default;
};

struct ClusterSpec {
    int size = 2;
    std::vector<double> deltas;
    std::vector<int> member_tiers;  // 1-based
    bool operator==(const ClusterSpec&) const = default;
};

struct FeedbackSpec {
    double budget = 0.0;
    std::vector<double> bits;
    std::string weighting = "uniform";  // "uniform" | "density"
    bool operator==(const FeedbackSpec&) const = default;
};

/// Parsed configuration file, kept in interface units so that it serializes
/// back unchanged. network()/cluster()/feedback() produce the linear-scale
/// domain types.
struct ConfigDocument {
    double pathloss_exponent = 4.0;
    std::string density_unit = "lambda_ref";  // "lambda_ref" | "per_m2"
    std::string power_unit = "dBm";           // "dBm" | "W"
    std::string bias_unit = "dB";             // "dB" | "linear"
    std::vector<TierSpec> tiers;
    std::optional<ClusterSpec> cluster_spec;
    std::optional<FeedbackSpec> feedback_spec;

    bool operator==(const ConfigDocument&) const = default;

    double density_scale() const {
        if (density_unit == "lambda_ref") return kLambdaRef;
        if (density_unit == "per_m2") return 1.0;
        throw std::invalid_argument("unknown density_unit '" + density_unit + "'");
    }

    NetworkConfig network() const {
        NetworkConfig cfg;
        cfg.pathloss_exponent = pathloss_exponent;
        const double scale = density_scale();
        for (const auto& t : tiers) {
            TierParams p;
            p.density = t.density * scale;
            if (power_unit == "dBm") p.tx_power = dbm_to_watts(t.tx_power);
            else if (power_unit == "W") p.tx_power = t.tx_power;
            else throw std::invalid_argument("unknown power_unit '" + power_unit + "'");
            if (bias_unit == "dB") p.bias = db_to_linear(t.bias);
            else if (bias_unit == "linear") p.bias = t.bias;
            else throw std::invalid_argument("unknown bias_unit '" + bias_unit + "'");
            p.antennas = t.antennas;
            p.open_access_prob = t.open_access_prob;
            cfg.tiers.push_back(p);
        }
        return cfg;
    }

    std::optional<ClusterGeometry> cluster() const {
        if (!cluster_spec) return std::nullopt;
        ClusterGeometry g;
        g.size = cluster_spec->size;
        g.deltas = cluster_spec->deltas;
        for (int t : cluster_spec->member_tiers)
            g.member_tiers.push_back(t >= 1 ? static_cast<std::size_t>(t - 1) : static_cast<std::size_t>(-1));
        return g;
    }

    std::optional<FeedbackAllocation> feedback() const {
        if (!feedback_spec) return std::nullopt;
        FeedbackAllocation a;
        a.budget = feedback_spec->budget;
        a.bits = feedback_spec->bits;
        if (feedback_spec->weighting == "density") {
            // the file states density-weighted budgets in its own density unit
            a.budget *= density_scale();
            a.weighting = BudgetWeighting::density;
            const auto cfg = network();
            for (const auto& t : cfg.tiers) a.weights.push_back(t.density);
        } else if (feedback_spec->weighting == "uniform") {
            a.weighting = BudgetWeighting::uniform;
        } else {
            throw std::invalid_argument("unknown feedback weighting '" + feedback_spec->weighting + "'");
        }
        return a;
    }

    ValidationReport validate() const {
        ValidationReport r;
        if (density_unit != "lambda_ref" && density_unit != "per_m2")
            r.add("network.density_unit", "must be \"lambda_ref\" or \"per_m2\"");
        if (power_unit != "dBm" && power_unit != "W") r.add("network.power_unit", "must be \"dBm\" or \"W\"");
        if (bias_unit != "dB" && bias_unit != "linear") r.add("network.bias_unit", "must be \"dB\" or \"linear\"");
        if (feedback_spec && feedback_spec->weighting != "uniform" && feedback_spec->weighting != "density")
            r.add("feedback.weighting", "must be \"uniform\" or \"density\"");
        if (!r.ok()) return r;
        if (cluster_spec)
            for (int t : cluster_spec->member_tiers)
                if (t < 1) r.add("cluster.member_tiers", "tier indices are 1-based");
        const auto cfg = network();
        const auto g = cluster();
        const auto fb = feedback();
        auto inner = hetfb::validate(cfg, g ? &*g : nullptr, fb ? &*fb : nullptr);
        for (auto& v : inner.violations) r.violations.push_back(std::move(v));
        return r;
    }
};

namespace detail {

template <class T>
T require(const toml::node_view<const toml::node>& node, const std::string& path) {
    if (auto v = node.value<T>()) return *v;
    throw std::invalid_argument("config: missing or mistyped field '" + path + "'");
}

template <class T>
T optional_field(const toml::node_view<const toml::node>& node, T fallback) {
    if (!node) return fallback;
    if (auto v = node.value<T>()) return *v;
    throw std::invalid_argument("config: mistyped field");
}

template <class T>
std::vector<T> array_field(const toml::node_view<const toml::node>& node, const std::string& path) {
    std::vector<T> out;
    if (!node) return out;
    const auto* arr = node.as_array();
    if (arr == nullptr) throw std::invalid_argument("config: '" + path + "' must be an array");
    for (const auto& el : *arr) {
        auto v = el.template value<T>();
        if (!v) throw std::invalid_argument("config: '" + path + "' has a mistyped entry");
        out.push_back(*v);
    }
    return out;
}

}  // namespace detail

/// Parses the text of a config file. Throws std::invalid_argument on syntax
/// or type errors; semantic checks are left to ConfigDocument::validate().
inline ConfigDocument parse_config(std::string_view text) {
    toml::table root;
    try {
        root = toml::parse(text);
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << "config: " << e.description() << " at line " << e.source().begin.line;
        throw std::invalid_argument(os.str());
    }
    const toml::node_view<const toml::node> view{static_cast<const toml::node&>(root)};
    ConfigDocument doc;
    const auto net = view["network"];
    if (!net) throw std::invalid_argument("config: missing [network] section");
    doc.pathloss_exponent = detail::require<double>(net["pathloss_exponent"], "network.pathloss_exponent");
    doc.density_unit = detail::optional_field<std::string>(net["density_unit"], doc.density_unit);
    doc.power_unit = detail::optional_field<std::string>(net["power_unit"], doc.power_unit);
    doc.bias_unit = detail::optional_field<std::string>(net["bias_unit"], doc.bias_unit);
    const auto* tiers = net["tiers"].as_array();
    if (tiers == nullptr) throw std::invalid_argument("config: missing [[network.tiers]]");
    for (std::size_t i = 0; i < tiers->size(); ++i) {
        const toml::node_view<const toml::node> t{tiers->get(i)};
        const std::string p = "network.tiers[" + std::to_string(i + 1) + "]";
        TierSpec s;
        s.density = detail::require<double>(t["density"], p + ".density");
        s.tx_power = detail::require<double>(t["tx_power"], p + ".tx_power");
        s.bias = detail::optional_field<double>(t["bias"], s.bias);
        s.antennas = static_cast<int>(detail::require<int64_t>(t["antennas"], p + ".antennas"));
        s.open_access_prob = detail::optional_field<double>(t["open_access_prob"], 1.0);
        doc.tiers.push_back(s);
    }
    if (const auto c = view["cluster"]) {
        ClusterSpec cs;
        cs.size = static_cast<int>(detail::require<int64_t>(c["size"], "cluster.size"));
        cs.deltas = detail::array_field<double>(c["deltas"], "cluster.deltas");
        for (auto v : detail::array_field<int64_t>(c["member_tiers"], "cluster.member_tiers"))
            cs.member_tiers.push_back(static_cast<int>(v));
        doc.cluster_spec = cs;
    }
    if (const auto f = view["feedback"]) {
        FeedbackSpec fs;
        fs.budget = detail::require<double>(f["budget"], "feedback.budget");
        fs.bits = detail::array_field<double>(f["bits"], "feedback.bits");
        fs.weighting = detail::optional_field<std::string>(f["weighting"], fs.weighting);
        doc.feedback_spec = fs;
    }
    return doc;
}

inline ConfigDocument load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

inline std::string serialize_config(const ConfigDocument& doc) {
    toml::table net;
    net.insert("pathloss_exponent", doc.pathloss_exponent);
    net.insert("density_unit", doc.density_unit);
    net.insert("power_unit", doc.power_unit);
    net.insert("bias_unit", doc.bias_unit);
    toml::array tiers;
    for (const auto& t : doc.tiers) {
        toml::table row;
        row.insert("density", t.density);
        row.insert("tx_power", t.tx_power);
        row.insert("bias", t.bias);
        row.insert("antennas", static_cast<int64_t>(t.antennas));
        row.insert("open_access_prob", t.open_access_prob);
        tiers.push_back(std::move(row));
    }
    net.insert("tiers", std::move(tiers));
    toml::table root;
    root.insert("network", std::move(net));
    if (doc.cluster_spec) {
        toml::table c;
        c.insert("size", static_cast<int64_t>(doc.cluster_spec->size));
        toml::array d;
        for (double v : doc.cluster_spec->deltas) d.push_back(v);
        c.insert("deltas", std::move(d));
        toml::array m;
        for (int v : doc.cluster_spec->member_tiers) m.push_back(static_cast<int64_t>(v));
        c.insert("member_tiers", std::move(m));
        root.insert("cluster", std::move(c));
    }
    if (doc.feedback_spec) {
        toml::table f;
        f.insert("budget", doc.feedback_spec->budget);
        toml::array b;
        for (double v : doc.feedback_spec->bits) b.push_back(v);
        f.insert("bits", std::move(b));
        f.insert("weighting", doc.feedback_spec->weighting);
        root.insert("feedback", std::move(f));
    }
    std::ostringstream os;
    os << root << "\n";
    return os.str();
}

}  // namespace hetfb
