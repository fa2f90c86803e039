#include "datamap/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <json.hpp>

#include "datamap/csv.hpp"
#include "datamap/errors.hpp"
#include "datamap/mapping.hpp"

namespace datamap {

using nlohmann::json;

namespace {

const std::vector<std::string>& default_palette() {
    static const std::vector<std::string> palette = {
        "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1", "#76b7b2",
    };
    return palette;
}

// Shortest decimal that round-trips the double; locale independent.
std::string fmt_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) {
        return "0";
    }
    return std::string(buf, ptr);
}

// Fixed 4 decimals for path coordinates.
std::string fmt_coord(double v) {
    if (std::fabs(v) < 5e-5) {
        v = 0.0;  // avoid "-0.0000"
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 4);
    if (ec != std::errc()) {
        return "0.0000";
    }
    return std::string(buf, ptr);
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

// x right, y down, angles clockwise from 12 o'clock.
std::pair<double, double> polar(double deg, double radius) {
    double rad = deg * M_PI / 180.0;
    return {radius * std::sin(rad), -radius * std::cos(rad)};
}

int parse_hex2(const std::string& s, std::size_t pos) {
    auto digit = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return 0;
    };
    return digit(s[pos]) * 16 + digit(s[pos + 1]);
}

// Blend toward white by t in [0,1].
std::string lighten(const std::string& hex, double t) {
    if (hex.size() != 7 || hex[0] != '#') {
        return hex;
    }
    char buf[8];
    int rgb[3];
    for (int i = 0; i < 3; ++i) {
        int c = parse_hex2(hex, 1 + 2 * static_cast<std::size_t>(i));
        rgb[i] = c + static_cast<int>(std::lround((255 - c) * t));
        rgb[i] = std::clamp(rgb[i], 0, 255);
    }
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
    return buf;
}

SunburstNode prune_node(const TaxonomyNode& node,
                        const std::map<std::string, std::uint64_t>& rolled) {
    SunburstNode out;
    out.name = node.display_name;
    out.path = node.path;
    out.value = rolled.at(node.path);
    for (const auto& child : node.children) {
        if (rolled.at(child.path) == 0) {
            continue;
        }
        out.children.push_back(prune_node(child, rolled));
    }
    return out;
}

json sunburst_node_to_json(const SunburstNode& node) {
    json j;
    j["name"] = node.name;
    j["path"] = node.path;
    j["value"] = node.value;
    if (!node.children.empty()) {
        j["children"] = json::array();
        for (const auto& child : node.children) {
            j["children"].push_back(sunburst_node_to_json(child));
        }
    }
    return j;
}

void layout_children(const SunburstNode& node, double start_deg, double extent_deg, int depth,
                     const std::string& base_color, const SunburstSpec& spec,
                     std::vector<SunburstArc>& arcs) {
    double cursor = start_deg;
    std::size_t color_index = 0;
    for (const auto& child : node.children) {
        double share = node.value == 0
                           ? 0.0
                           : extent_deg * (static_cast<double>(child.value) /
                                           static_cast<double>(node.value));
        std::string color;
        if (depth == 1) {
            const auto& palette = spec.palette;
            color = palette.empty() ? default_palette()[color_index % default_palette().size()]
                                    : palette[color_index % palette.size()];
        } else {
            color = lighten(base_color, std::min(0.6, 0.15 * (depth - 1)));
        }
        SunburstArc arc;
        arc.path = child.path;
        arc.name = child.name;
        arc.depth = depth;
        arc.value = child.value;
        arc.start_deg = cursor;
        arc.extent_deg = share;
        arc.inner_radius = spec.inner_radius + (depth - 1) * spec.ring_width;
        arc.outer_radius = arc.inner_radius + spec.ring_width;
        arc.color = color;
        arc.labeled = share >= spec.label_min_angle;
        arcs.push_back(arc);
        layout_children(child, cursor, share, depth + 1, color, spec, arcs);
        cursor += share;
        ++color_index;
    }
}

std::string arc_path(const SunburstArc& arc) {
    double a0 = arc.start_deg;
    double a1 = arc.start_deg + arc.extent_deg;
    double ri = arc.inner_radius;
    double ro = arc.outer_radius;

    auto pt = [&](double deg, double r) {
        auto [x, y] = polar(deg, r);
        return fmt_coord(x) + " " + fmt_coord(y);
    };
    auto arc_to = [&](double deg, double r, bool large, bool sweep) {
        return "A " + fmt_coord(r) + " " + fmt_coord(r) + " 0 " + (large ? "1" : "0") + " " +
               (sweep ? "1" : "0") + " " + pt(deg, r) + " ";
    };

    std::string d;
    if (arc.extent_deg >= 360.0 - 1e-9) {
        double mid = a0 + 180.0;
        d = "M " + pt(a0, ro) + " " + arc_to(mid, ro, false, true) + arc_to(a1, ro, false, true) +
            "L " + pt(a1, ri) + " " + arc_to(mid, ri, false, false) + arc_to(a0, ri, false, false) +
            "Z";
    } else {
        bool large = arc.extent_deg > 180.0;
        d = "M " + pt(a0, ro) + " " + arc_to(a1, ro, large, true) + "L " + pt(a1, ri) + " " +
            arc_to(a0, ri, large, false) + "Z";
    }
    return d;
}

}  // namespace

SunburstSpec build_sunburst(const DataMapping& mapping, const SunburstOptions& options) {
    SunburstSpec spec;
    spec.palette = options.palette.empty() ? default_palette() : options.palette;
    spec.inner_radius = options.inner_radius;
    spec.ring_width = options.ring_width;
    spec.label_min_angle = options.label_min_angle;

    std::uint64_t total = mapping.rolled_counts.at(mapping.taxonomy.path);
    if (total == 0) {
        spec.empty = true;
        spec.root.name = mapping.taxonomy.display_name;
        spec.root.path = mapping.taxonomy.path;
        spec.root.value = 0;
        return spec;
    }
    spec.root = prune_node(mapping.taxonomy, mapping.rolled_counts);
    return spec;
}

std::string sunburst_to_json(const SunburstSpec& spec) {
    json j;
    j["empty"] = spec.empty;
    j["inner_radius"] = spec.inner_radius;
    j["ring_width"] = spec.ring_width;
    j["label_min_angle"] = spec.label_min_angle;
    j["palette"] = spec.palette;
    j["root"] = spec.empty ? json() : sunburst_node_to_json(spec.root);
    return j.dump(2) + "\n";
}

std::string emit_sunburst_json(const DataMapping& mapping, const SunburstOptions& options) {
    return sunburst_to_json(build_sunburst(mapping, options));
}

std::vector<SunburstArc> sunburst_layout(const SunburstSpec& spec) {
    std::vector<SunburstArc> arcs;
    if (spec.empty) {
        return arcs;
    }
    layout_children(spec.root, 0.0, 360.0, 1, "", spec, arcs);
    return arcs;
}

std::string emit_sunburst_svg(const SunburstSpec& spec) {
    std::vector<SunburstArc> arcs = sunburst_layout(spec);
    int rings = 0;
    for (const auto& arc : arcs) {
        rings = std::max(rings, arc.depth);
    }
    double radius = spec.inner_radius + rings * spec.ring_width;
    double size = 2.0 * (radius + 20.0);
    double center = size / 2.0;

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_coord(size) +
           "\" height=\"" + fmt_coord(size) + "\" viewBox=\"0 0 " + fmt_coord(size) + " " +
           fmt_coord(size) + "\">\n";
    if (spec.empty) {
        svg += "  <!-- empty mapping: nothing to draw -->\n";
    }
    svg += "  <g transform=\"translate(" + fmt_coord(center) + "," + fmt_coord(center) + ")\">\n";
    for (const auto& arc : arcs) {
        svg += "    <path d=\"" + arc_path(arc) + "\" fill=\"" + arc.color +
               "\" stroke=\"#ffffff\" stroke-width=\"1\" data-path=\"" + xml_escape(arc.path) +
               "\" data-depth=\"" + std::to_string(arc.depth) + "\" data-value=\"" +
               std::to_string(arc.value) + "\" data-start=\"" + fmt_double(arc.start_deg) +
               "\" data-extent=\"" + fmt_double(arc.extent_deg) + "\"/>\n";
    }
    for (const auto& arc : arcs) {
        if (!arc.labeled) {
            continue;
        }
        double mid_deg = arc.start_deg + arc.extent_deg / 2.0;
        double mid_r = (arc.inner_radius + arc.outer_radius) / 2.0;
        auto [x, y] = polar(mid_deg, mid_r);
        svg += "    <text x=\"" + fmt_coord(x) + "\" y=\"" + fmt_coord(y) +
               "\" text-anchor=\"middle\" dominant-baseline=\"middle\" font-family=\"sans-serif\""
               " font-size=\"10\">" +
               xml_escape(arc.name) + "</text>\n";
    }
    svg += "  </g>\n</svg>\n";
    return svg;
}

std::string emit_table(const DataMapping& mapping) {
    std::string out = "path,depth,count,percent_of_parent\n";

    std::function<void(const TaxonomyNode&, int)> walk = [&](const TaxonomyNode& node,
                                                             int depth) {
        std::uint64_t parent_total = mapping.rolled_counts.at(node.path);
        for (const auto& child : node.children) {
            std::uint64_t count = mapping.rolled_counts.at(child.path);
            if (count == 0) {
                continue;
            }
            double percent =
                100.0 * static_cast<double>(count) / static_cast<double>(parent_total);
            out += csv::join_row({child.path, std::to_string(depth + 1),
                                  std::to_string(count), format_percent(percent)});
            walk(child, depth + 1);
        }
    };
    walk(mapping.taxonomy, 0);
    return out;
}

std::string emit_document_table(const std::vector<DocumentLabels>& labels) {
    std::string out = "record_id,label\n";
    for (const auto& doc : labels) {
        if (doc.evidence.empty()) {
            out += csv::join_row({doc.record_id, ""});
            continue;
        }
        for (const auto& [label, spans] : doc.evidence) {
            out += csv::join_row({doc.record_id, label});
        }
    }
    return out;
}

}  // namespace datamap
