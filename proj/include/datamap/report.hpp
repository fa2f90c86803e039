#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "datamap/engine.hpp"
#include "datamap/mapping.hpp"

namespace datamap {

struct SunburstNode {
    std::string name;
    std::string path;
    std::uint64_t value = 0;
    std::vector<SunburstNode> children;
};

struct SunburstOptions {
    std::vector<std::string> palette;  // empty -> default palette
    double inner_radius = 60.0;
    double ring_width = 50.0;
    double label_min_angle = 12.0;  // degrees; smaller arcs are unlabeled
};

struct SunburstSpec {
    bool empty = false;  // all-zero mapping
    SunburstNode root;
    std::vector<std::string> palette;
    double inner_radius = 60.0;
    double ring_width = 50.0;
    double label_min_angle = 12.0;
};

// Mirrors the mapping rollups with zero-count subtrees pruned; node order
// follows the taxonomy file.
SunburstSpec build_sunburst(const DataMapping& mapping, const SunburstOptions& options = {});

std::string sunburst_to_json(const SunburstSpec& spec);

// build + serialize.
std::string emit_sunburst_json(const DataMapping& mapping, const SunburstOptions& options = {});

// One annular sector per node below the root. Angles in degrees, clockwise
// from 12 o'clock; siblings partition their parent's angular extent
// proportionally to value.
struct SunburstArc {
    std::string path;
    std::string name;
    int depth = 1;  // 1 = innermost ring
    std::uint64_t value = 0;
    double start_deg = 0.0;
    double extent_deg = 0.0;
    double inner_radius = 0.0;
    double outer_radius = 0.0;
    std::string color;
    bool labeled = false;
};

std::vector<SunburstArc> sunburst_layout(const SunburstSpec& spec);

// Standalone deterministic SVG; one <path> per arc, annotated with
// data-path / data-start / data-extent / data-value attributes.
std::string emit_sunburst_svg(const SunburstSpec& spec);

// CSV of every taxonomy node with a nonzero rolled count, in pre-order
// (root implicit): path, depth, count, percent-of-parent at one decimal.
std::string emit_table(const DataMapping& mapping);

// Companion document-level table: record_id, label path; one row per pair,
// documents in input order, unlabeled documents kept with an empty label.
std::string emit_document_table(const std::vector<DocumentLabels>& labels);

}  // namespace datamap
