#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "recoup/graph.hpp"

namespace recoup {

/// Project-graph file: a human-readable JSON document
///   { "modules": [ { "name": ..., "classes": [...] }, ... ],
///     "dependencies": [ [fromClass, toClass], ... ] }
/// Class names are unique across modules; dependencies may only reference
/// declared classes; self-pairs are rejected. Vertex indices are derived
/// from the byte-wise sorted order of class names, so a file determines its
/// state independent of listing order.
std::string render_project_file(const ProjectState& state);
void emit_project_file(const ProjectState& state, const std::filesystem::path& path);

ProjectState parse_project_file(const std::string& text, const std::string& origin = "<memory>",
                                std::vector<std::string>* warnings = nullptr);
ProjectState load_project_file(const std::filesystem::path& path,
                               std::vector<std::string>* warnings = nullptr);

}  // namespace recoup
