#include "recoup/project_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include <json.hpp>

namespace recoup {
namespace {

using nlohmann::ordered_json;

std::string vertex_fallback_name(int v, int n) {
    int width = 1;
    for (int m = n - 1; m >= 10; m /= 10) ++width;
    char buf[32];
    std::snprintf(buf, sizeof buf, "v%0*d", width > 12 ? 12 : width, v);
    return buf;
}

}  // namespace

std::string render_project_file(const ProjectState& state) {
    const auto& partition = state.partition();
    const int n = state.vertex_count();

    std::vector<std::string> names = state.vertex_names();
    if (names.empty()) {
        names.resize(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) names[static_cast<std::size_t>(v)] = vertex_fallback_name(v, n);
    }

    ordered_json doc;
    doc["modules"] = ordered_json::array();
    for (int m = 0; m < partition.module_count(); ++m) {
        ordered_json entry;
        entry["name"] = partition.module_names().empty() ? "module" + std::to_string(m)
                                                         : partition.module_names()[static_cast<std::size_t>(m)];
        auto classes = ordered_json::array();
        for (Vertex v : partition.members(m)) classes.push_back(names[static_cast<std::size_t>(v)]);
        entry["classes"] = std::move(classes);
        doc["modules"].push_back(std::move(entry));
    }
    doc["dependencies"] = ordered_json::array();
    state.for_each_edge([&](Edge e) {
        doc["dependencies"].push_back(ordered_json::array(
            {names[static_cast<std::size_t>(e.from)], names[static_cast<std::size_t>(e.to)]}));
    });
    return doc.dump(2) + "\n";
}

void emit_project_file(const ProjectState& state, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
    out << render_project_file(state);
    if (!out) throw InputError("failed writing '" + path.string() + "'");
}

ProjectState parse_project_file(const std::string& text, const std::string& origin,
                                std::vector<std::string>* warnings) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("modules") || !doc["modules"].is_array())
        throw ParseError(origin + ": expected an object with a \"modules\" array");

    struct DeclaredClass {
        std::string name;
        int module = 0;
    };
    std::vector<DeclaredClass> declared;
    std::vector<std::string> module_names;
    std::set<std::string> seen_modules;
    for (const auto& module : doc["modules"]) {
        if (!module.is_object() || !module.contains("name") || !module["name"].is_string() ||
            !module.contains("classes") || !module["classes"].is_array())
            throw ParseError(origin + ": each module needs a \"name\" and a \"classes\" array");
        const std::string name = module["name"].get<std::string>();
        if (!seen_modules.insert(name).second)
            throw ParseError(origin + ": duplicate module name '" + name + "'");
        const int module_index = static_cast<int>(module_names.size());
        module_names.push_back(name);
        for (const auto& cls : module["classes"]) {
            if (!cls.is_string())
                throw ParseError(origin + ": class names in module '" + name + "' must be strings");
            declared.push_back({cls.get<std::string>(), module_index});
        }
    }
    if (declared.empty()) throw ParseError(origin + ": project declares no classes");

    std::map<std::string, int> index_of;  // sorted order defines vertex indices
    for (const auto& cls : declared)
        if (!index_of.emplace(cls.name, 0).second)
            throw ParseError(origin + ": duplicate class name '" + cls.name + "'");
    int next = 0;
    for (auto& [name, index] : index_of) index = next++;

    const int n = static_cast<int>(declared.size());
    std::vector<int> module_of(static_cast<std::size_t>(n));
    std::vector<std::string> vertex_names(static_cast<std::size_t>(n));
    for (const auto& cls : declared) {
        const int v = index_of[cls.name];
        module_of[static_cast<std::size_t>(v)] = cls.module;
        vertex_names[static_cast<std::size_t>(v)] = cls.name;
    }

    std::vector<Edge> edges;
    std::set<std::pair<int, int>> seen_edges;
    int duplicates = 0;
    if (doc.contains("dependencies")) {
        if (!doc["dependencies"].is_array())
            throw ParseError(origin + ": \"dependencies\" must be an array of pairs");
        for (const auto& dep : doc["dependencies"]) {
            if (!dep.is_array() || dep.size() != 2 || !dep[0].is_string() || !dep[1].is_string())
                throw ParseError(origin + ": each dependency must be a [from, to] pair of strings");
            const std::string from = dep[0].get<std::string>();
            const std::string to = dep[1].get<std::string>();
            const auto from_it = index_of.find(from);
            if (from_it == index_of.end())
                throw ParseError(origin + ": dependency references undeclared class '" + from + "'");
            const auto to_it = index_of.find(to);
            if (to_it == index_of.end())
                throw ParseError(origin + ": dependency references undeclared class '" + to + "'");
            if (from == to)
                throw ParseError(origin + ": self-dependency on class '" + from + "'");
            if (!seen_edges.emplace(from_it->second, to_it->second).second) {
                ++duplicates;
                continue;
            }
            edges.push_back(Edge{from_it->second, to_it->second});
        }
    }
    if (duplicates > 0 && warnings)
        warnings->push_back(origin + ": collapsed " + std::to_string(duplicates) +
                            " duplicate dependency entr" + (duplicates == 1 ? "y" : "ies"));

    auto partition = std::make_shared<const ModulePartition>(
        std::move(module_of), static_cast<int>(module_names.size()), std::move(module_names));
    return ProjectState(std::move(partition), edges, std::move(vertex_names));
}

ProjectState load_project_file(const std::filesystem::path& path,
                               std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open project file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_project_file(buffer.str(), path.string(), warnings);
}

}  // namespace recoup
