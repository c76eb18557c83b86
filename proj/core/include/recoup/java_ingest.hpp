#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "recoup/graph.hpp"

namespace recoup {

struct ExtractionReport {
    int classes_found = 0;
    int modules_found = 0;
    int dependencies_found = 0;
    /// Imports that point into a package this project declares but name no
    /// known class; reported rather than silently dropped.
    std::vector<std::pair<std::string, std::string>> unresolved_references;
    std::vector<std::string> skipped_files;
    std::vector<std::string> warnings;
};

/// Extracts a project graph from a Java source tree by textual scanning.
///
/// One vertex per top-level type declaration; nested types collapse into
/// their enclosing top-level type. A file's module is the nearest ancestor
/// directory holding a build manifest (pom.xml or a Gradle build file),
/// falling back to the file's first-level directory under the root. Edges
/// come from imports of project classes (wildcards expand to the whole
/// package) and from same-package identifier usage; external imports are
/// ignored and duplicate references collapse into one edge.
std::pair<ProjectState, ExtractionReport> scan_project(const std::filesystem::path& root);

}  // namespace recoup
