#pragma once

// CSV tables and the entropy line chart. All output is a pure function of its inputs:
// numbers are printed with fixed precision, rows are emitted in sorted order.

#include "sealscript/corpus.hpp"
#include "sealscript/economy.hpp"
#include "sealscript/grammar.hpp"
#include "sealscript/stats.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace sealscript {

/// Fixed-point rendering with `digits` fractional places; identical on every platform.
inline std::string format_fixed(double v, int digits = 12) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
    if (ec != std::errc{}) return "nan";
    std::string s(buf, p);
    if (s.starts_with("-") && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);  // no "-0.000"
    return s;
}

inline std::string entropy_csv(const EntropyProfile& p) {
    std::ostringstream out;
    out << "block_size,H_raw,H_per_symbol,estimator,L\n";
    for (std::size_t n = 1; n <= p.n_max(); ++n) {
        const auto raw = p.raw[n - 1];
        const auto per = p.per_symbol(n);
        out << n << ',' << (raw ? format_fixed(*raw) : "-") << ',' << (per ? format_fixed(*per) : "-") << ','
            << to_string(p.estimator) << ',' << p.L << '\n';
    }
    return out.str();
}

/// Rows sorted by count descending, then by n-gram.
inline std::string ngram_csv(const NGramTable& t) {
    std::vector<std::pair<const std::vector<SignCode>*, std::uint64_t>> rows;
    rows.reserve(t.counts.size());
    for (const auto& [k, v] : t.counts) rows.emplace_back(&k, v);
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    std::ostringstream out;
    out << "ngram,count\n";
    for (const auto& [k, v] : rows) out << join_codes(*k) << ',' << v << '\n';
    return out.str();
}

/// Observed transitions with their smoothed probabilities. Unobserved pairs are omitted.
inline std::string bigram_csv(const TransitionModel& m) {
    std::ostringstream out;
    out << "from,to,count,probability\n";
    for (std::size_t r = 0; r < m.row_count(); ++r) {
        const Symbol from = m.row_symbol(r);
        if (m.row_total(from) == 0) continue;
        for (std::size_t c = 0; c < m.successor_count(); ++c) {
            const auto n = m.count_at(r, c);
            if (n == 0) continue;
            const Symbol to = m.col_symbol(c);
            out << to_string(from) << ',' << to_string(to) << ',' << n << ','
                << format_fixed(m.probability(from, to)) << '\n';
        }
    }
    return out.str();
}

inline std::string classify_csv(const CorpusClassification& cc) {
    std::ostringstream out;
    out << "id,verdict,reason\n";
    for (const auto& r : cc.results)
        out << detail::csv_field(r.id) << ',' << to_string(r.classification.verdict) << ','
            << detail::csv_field(r.classification.reason) << '\n';
    return out.str();
}

/// One row per non-empty component of a patterned text, labelled with its role;
/// Complex texts get a single row carrying the reason.
inline std::string segment_csv(const CorpusClassification& cc) {
    std::ostringstream out;
    out << "id,verdict,component,signs,role,medial_kind,reason\n";
    for (const auto& r : cc.results) {
        const auto& cls = r.classification;
        if (!cls.patterned()) {
            out << detail::csv_field(r.id) << ",Complex,,,,," << detail::csv_field(cls.reason) << '\n';
            continue;
        }
        const auto seg = label_roles(cls);
        for (auto c : kComponents) {
            if (seg.span(c).empty()) continue;
            out << detail::csv_field(r.id) << ",Patterned," << to_string(c) << ',' << join_codes(seg.component(c))
                << ',' << detail::csv_field(*seg.role(c)) << ','
                << (c == Component::Medial ? to_string(seg.medial_kind) : "") << ",\n";
        }
    }
    return out.str();
}

inline std::string summary_csv(const CorpusSummary& s) {
    std::ostringstream out;
    out << "section,key,value\n";
    out << "total,inscriptions," << s.inscriptions << '\n';
    out << "total,tokens," << s.tokens << '\n';
    for (const auto& [code, n] : s.frequency) out << "frequency," << to_string(code) << ',' << n << '\n';
    for (const auto& [len, n] : s.length_histogram) out << "length," << len << ',' << n << '\n';
    for (const auto& [type, n] : s.object_types) out << "object_type," << to_string(type) << ',' << n << '\n';
    return out.str();
}

inline std::string clusters_csv(const std::vector<DuplicateCluster>& clusters) {
    std::ostringstream out;
    out << "signature,size,member_ids\n";
    for (const auto& c : clusters) {
        std::string ids;
        for (const auto& id : c.member_ids) ids += (ids.empty() ? "" : " ") + id;
        out << detail::csv_field(signature_text(c)) << ',' << c.size << ',' << detail::csv_field(ids) << '\n';
    }
    return out.str();
}

inline std::string rations_csv(const RationTable& t) {
    std::ostringstream out;
    out << "counted_code,name,total_count,total_volume_liters\n";
    for (const auto& [code, row] : t.rows)
        out << to_string(code) << ',' << detail::csv_field(row.name) << ',' << row.total_count << ','
            << (row.total_volume ? row.total_volume->to_string() : "-") << '\n';
    return out.str();
}

inline std::string tokens_csv(const std::vector<TokenRecord>& tokens) {
    std::ostringstream out;
    out << "token_id,seal_id,mint_index,strung,impression\n";
    for (const auto& t : tokens)
        out << detail::csv_field(t.token_id) << ',' << detail::csv_field(t.seal_id) << ',' << t.mint_index << ','
            << (t.strung ? "true" : "false") << ',' << join_codes(t.impression) << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------

namespace detail {

inline std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace detail

struct NamedProfile {
    std::string name;
    EntropyProfile profile;
};

/// Self-contained SVG line chart of entropy against block size, one polyline per profile,
/// using each profile's own normalization.
inline std::string entropy_svg(const std::vector<NamedProfile>& series) {
    constexpr double width = 640, height = 400;
    constexpr double left = 64, right = 160, top = 24, bottom = 48;
    constexpr double plot_w = width - left - right, plot_h = height - top - bottom;
    static constexpr std::array<std::string_view, 8> palette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                             "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

    std::size_t n_max = 1;
    double y_max = 1.0;
    for (const auto& s : series) {
        n_max = std::max(n_max, s.profile.n_max());
        for (std::size_t n = 1; n <= s.profile.n_max(); ++n)
            if (auto v = s.profile.value(n)) y_max = std::max(y_max, *v);
    }
    const auto x_of = [&](std::size_t n) {
        return n_max == 1 ? left + plot_w / 2 : left + plot_w * static_cast<double>(n - 1) / static_cast<double>(n_max - 1);
    };
    const auto y_of = [&](double v) { return top + plot_h * (1.0 - v / y_max); };
    const auto num = [](double v) { return format_fixed(v, 2); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
        << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height) << "\" fill=\"white\"/>\n";
    out << "<g stroke=\"black\" stroke-width=\"1\">\n";
    out << "<line x1=\"" << num(left) << "\" y1=\"" << num(top + plot_h) << "\" x2=\"" << num(left + plot_w)
        << "\" y2=\"" << num(top + plot_h) << "\"/>\n";
    out << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left) << "\" y2=\""
        << num(top + plot_h) << "\"/>\n";
    out << "</g>\n";

    out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
    for (std::size_t n = 1; n <= n_max; ++n)
        out << "<text x=\"" << num(x_of(n)) << "\" y=\"" << num(top + plot_h + 16) << "\" text-anchor=\"middle\">" << n
            << "</text>\n";
    for (int i = 0; i <= 4; ++i) {
        const double v = y_max * i / 4.0;
        out << "<text x=\"" << num(left - 6) << "\" y=\"" << num(y_of(v) + 4) << "\" text-anchor=\"end\">"
            << format_fixed(v, 2) << "</text>\n";
    }
    out << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"" << num(height - 10)
        << "\" text-anchor=\"middle\">block size</text>\n";
    const std::string_view y_label =
        !series.empty() && series.front().profile.normalization == Normalization::Raw ? "H_n" : "H_n / n";
    out << "<text x=\"16\" y=\"" << num(top + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << num(top + plot_h / 2) << ")\">" << y_label << "</text>\n";
    out << "</g>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const auto colour = palette[i % palette.size()];
        out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
        bool first = true;
        for (std::size_t n = 1; n <= s.profile.n_max(); ++n) {
            const auto v = s.profile.value(n);
            if (!v) continue;
            out << (first ? "" : " ") << num(x_of(n)) << ',' << num(y_of(*v));
            first = false;
        }
        out << "\"/>\n";
        const double ly = top + 14.0 * static_cast<double>(i) + 6;
        out << "<line x1=\"" << num(left + plot_w + 12) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(left + plot_w + 32)
            << "\" y2=\"" << num(ly) << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << num(left + plot_w + 36) << "\" y=\"" << num(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << detail::xml_escape(s.name) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace sealscript
