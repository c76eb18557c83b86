#include "recoup/java_ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

namespace recoup {
namespace {

namespace fs = std::filesystem;

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

/// Blanks out comments, string literals, char literals, and text blocks,
/// preserving offsets so brace depths and spans stay aligned.
std::string strip_noncode(const std::string& src) {
    std::string out = src;
    std::size_t i = 0;
    const std::size_t n = src.size();
    auto blank = [&](std::size_t from, std::size_t to) {
        for (std::size_t k = from; k < to && k < n; ++k)
            if (out[k] != '\n') out[k] = ' ';
    };
    while (i < n) {
        const char c = src[i];
        if (c == '/' && i + 1 < n && src[i + 1] == '/') {
            std::size_t end = src.find('\n', i);
            if (end == std::string::npos) end = n;
            blank(i, end);
            i = end;
        } else if (c == '/' && i + 1 < n && src[i + 1] == '*') {
            std::size_t end = src.find("*/", i + 2);
            end = end == std::string::npos ? n : end + 2;
            blank(i, end);
            i = end;
        } else if (c == '"' && i + 2 < n && src[i + 1] == '"' && src[i + 2] == '"') {
            std::size_t end = src.find("\"\"\"", i + 3);
            end = end == std::string::npos ? n : end + 3;
            blank(i, end);
            i = end;
        } else if (c == '"' || c == '\'') {
            std::size_t j = i + 1;
            while (j < n && src[j] != c) j += src[j] == '\\' ? 2 : 1;
            const std::size_t end = j < n ? j + 1 : n;
            blank(i, end);
            i = end;
        } else {
            ++i;
        }
    }
    return out;
}

struct TypeDecl {
    std::string name;
    std::size_t body_begin = 0;  // offset of the opening brace, or npos
    std::size_t body_end = 0;
};

struct ParsedFile {
    std::string package;
    std::vector<std::string> imports;  // trailing ".*" kept for wildcards
    std::vector<TypeDecl> types;
    std::string code;  // stripped source
};

ParsedFile parse_java(const std::string& src) {
    ParsedFile file;
    file.code = strip_noncode(src);
    const std::string& code = file.code;
    const std::size_t n = code.size();

    std::vector<int> depth_at(n + 1, 0);
    int depth = 0;
    for (std::size_t i = 0; i < n; ++i) {
        depth_at[i] = depth;
        if (code[i] == '{')
            ++depth;
        else if (code[i] == '}')
            depth = std::max(0, depth - 1);
    }
    depth_at[n] = depth;

    // Collapses "import   static   a.b.C ;" into "static:a.b.C" form: an
    // optional leading "static" word is preserved as a marker, everything
    // else loses its whitespace.
    auto read_until_semi = [&](std::size_t from) {
        std::string raw;
        while (from < n && code[from] != ';') raw.push_back(code[from++]);
        std::istringstream words(raw);
        std::string word, text;
        bool first = true;
        while (words >> word) {
            if (first && word == "static")
                text += "static:";
            else
                text += word;
            first = false;
        }
        return text;
    };
    auto next_word = [&](std::size_t from) -> std::pair<std::string, std::size_t> {
        while (from < n && !is_word_char(code[from])) ++from;
        std::size_t end = from;
        while (end < n && is_word_char(code[end])) ++end;
        return {code.substr(from, end - from), end};
    };

    std::size_t i = 0;
    while (i < n) {
        if (!is_word_char(code[i])) {
            ++i;
            continue;
        }
        std::size_t end = i;
        while (end < n && is_word_char(code[end])) ++end;
        const std::string word = code.substr(i, end - i);
        const bool top_level = depth_at[i] == 0;
        std::size_t prev = i;
        while (prev > 0 && std::isspace(static_cast<unsigned char>(code[prev - 1]))) --prev;
        const bool qualified = prev > 0 && code[prev - 1] == '.';

        if (top_level && !qualified) {
            if (word == "package" && file.package.empty()) {
                file.package = read_until_semi(end);
            } else if (word == "import") {
                file.imports.push_back(read_until_semi(end));
            } else if (word == "class" || word == "interface" || word == "enum" ||
                       word == "record") {
                auto [name, name_end] = next_word(end);
                if (!name.empty()) {
                    TypeDecl decl{name, std::string::npos, std::string::npos};
                    std::size_t open = name_end;
                    while (open < n && code[open] != '{' && code[open] != ';') ++open;
                    if (open < n && code[open] == '{') {
                        decl.body_begin = open;
                        int d = 0;
                        std::size_t close = open;
                        for (; close < n; ++close) {
                            if (code[close] == '{') ++d;
                            if (code[close] == '}' && --d == 0) break;
                        }
                        decl.body_end = close < n ? close + 1 : n;
                    }
                    const std::size_t resume =
                        decl.body_begin == std::string::npos ? name_end : decl.body_begin + 1;
                    file.types.push_back(std::move(decl));
                    i = resume;  // a body is skipped whole; nested types collapse
                    continue;
                }
                end = name_end;
            }
        }
        i = end;
    }
    return file;
}

struct DeclaredType {
    std::string fq_name;
    std::string simple_name;
    std::string package;
    std::string module;
    std::size_t file_index = 0;
    std::size_t body_begin = 0;
    std::size_t body_end = 0;
};

const char* kManifests[] = {"pom.xml", "build.gradle", "build.gradle.kts", "settings.gradle",
                            "settings.gradle.kts"};

bool has_manifest(const fs::path& dir) {
    for (const char* m : kManifests)
        if (fs::exists(dir / m)) return true;
    return false;
}

std::string module_of_file(const fs::path& root, const fs::path& file) {
    for (fs::path dir = file.parent_path(); ; dir = dir.parent_path()) {
        if (has_manifest(dir)) {
            if (fs::equivalent(dir, root)) return root.filename().string();
            return fs::relative(dir, root).generic_string();
        }
        if (fs::equivalent(dir, root)) break;
        if (!dir.has_parent_path() || dir == dir.parent_path()) break;
    }
    const fs::path rel = fs::relative(file, root);
    if (rel.has_parent_path()) return rel.begin()->string();
    return root.filename().string();
}

}  // namespace

std::pair<ProjectState, ExtractionReport> scan_project(const fs::path& root_path) {
    if (!fs::exists(root_path) || !fs::is_directory(root_path))
        throw InputError("source root '" + root_path.string() + "' does not exist");
    const fs::path root = fs::canonical(root_path);

    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(root))
        if (entry.is_regular_file() && entry.path().extension() == ".java")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.generic_string() < b.generic_string(); });

    ExtractionReport report;
    std::vector<ParsedFile> parsed(files.size());
    std::vector<DeclaredType> types;
    std::map<std::string, std::size_t> by_fq_name;
    std::set<std::string> packages;

    for (std::size_t fi = 0; fi < files.size(); ++fi) {
        std::ifstream in(files[fi]);
        if (!in) {
            report.skipped_files.push_back(files[fi].string());
            continue;
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        parsed[fi] = parse_java(buffer.str());
        const ParsedFile& pf = parsed[fi];
        if (pf.types.empty()) {
            report.skipped_files.push_back(files[fi].string());
            continue;
        }
        packages.insert(pf.package);
        const std::string module = module_of_file(root, files[fi]);
        for (const TypeDecl& decl : pf.types) {
            const std::string fq =
                pf.package.empty() ? decl.name : pf.package + "." + decl.name;
            if (by_fq_name.count(fq)) {
                report.warnings.push_back("duplicate type '" + fq + "' in " +
                                          files[fi].string() + " ignored");
                continue;
            }
            by_fq_name[fq] = types.size();
            types.push_back({fq, decl.name, pf.package, module, fi, decl.body_begin,
                             decl.body_end});
        }
    }
    if (types.empty())
        throw InputError("no Java classes found under '" + root.string() + "'");

    // Vertex indices follow sorted fully-qualified names (by_fq_name is sorted).
    std::vector<std::size_t> vertex_to_type;
    vertex_to_type.reserve(types.size());
    std::map<std::string, int> vertex_of;
    for (const auto& [fq, ti] : by_fq_name) {
        vertex_of[fq] = static_cast<int>(vertex_to_type.size());
        vertex_to_type.push_back(ti);
    }

    std::map<std::string, std::vector<int>> package_members;  // package -> vertices
    for (std::size_t v = 0; v < vertex_to_type.size(); ++v) {
        const DeclaredType& t = types[vertex_to_type[v]];
        package_members[t.package].push_back(static_cast<int>(v));
    }

    std::map<std::string, int> module_index;
    for (const auto& t : types) module_index.emplace(t.module, 0);
    int next_module = 0;
    for (auto& [name, index] : module_index) index = next_module++;

    const int n = static_cast<int>(vertex_to_type.size());
    std::set<std::pair<int, int>> edges;
    int duplicate_refs = 0;
    auto add_edge = [&](int from, int to) {
        if (from == to) return;
        if (!edges.emplace(from, to).second) ++duplicate_refs;
    };

    for (int v = 0; v < n; ++v) {
        const DeclaredType& t = types[vertex_to_type[static_cast<std::size_t>(v)]];
        const ParsedFile& pf = parsed[t.file_index];
        const std::string file_name = files[t.file_index].string();

        for (std::string imp : pf.imports) {
            if (imp.rfind("static:", 0) == 0) imp = imp.substr(7);
            const bool wildcard = imp.size() > 2 && imp.compare(imp.size() - 2, 2, ".*") == 0;
            if (wildcard) imp = imp.substr(0, imp.size() - 2);

            if (auto it = vertex_of.find(imp); it != vertex_of.end()) {
                add_edge(v, it->second);
                continue;
            }
            if (wildcard) {
                if (auto pkg = package_members.find(imp); pkg != package_members.end())
                    for (int member : pkg->second) add_edge(v, member);
                continue;  // unknown package: external
            }
            // Longest declared prefix handles nested types and static members.
            std::string prefix = imp;
            bool resolved = false;
            while (true) {
                const std::size_t dot = prefix.rfind('.');
                if (dot == std::string::npos) break;
                prefix = prefix.substr(0, dot);
                if (auto it = vertex_of.find(prefix); it != vertex_of.end()) {
                    add_edge(v, it->second);
                    resolved = true;
                    break;
                }
            }
            if (resolved) continue;
            const std::size_t dot = imp.rfind('.');
            const std::string pkg = dot == std::string::npos ? "" : imp.substr(0, dot);
            if (packages.count(pkg))
                report.unresolved_references.emplace_back(file_name, imp);
            // otherwise: external import, ignored
        }

        if (t.body_begin == std::string::npos) continue;
        const auto& siblings = package_members[t.package];
        if (siblings.size() > 1) {
            const std::string& code = pf.code;
            std::size_t i = t.body_begin;
            const std::size_t end = std::min(t.body_end, code.size());
            while (i < end) {
                if (!is_word_char(code[i])) {
                    ++i;
                    continue;
                }
                std::size_t word_end = i;
                while (word_end < end && is_word_char(code[word_end])) ++word_end;
                if (i == 0 || code[i - 1] != '.') {
                    const std::string word = code.substr(i, word_end - i);
                    for (int sibling : siblings) {
                        const DeclaredType& s =
                            types[vertex_to_type[static_cast<std::size_t>(sibling)]];
                        if (sibling != v && s.simple_name == word) {
                            add_edge(v, sibling);
                            break;
                        }
                    }
                }
                i = word_end;
            }
        }
    }
    if (duplicate_refs > 0)
        report.warnings.push_back("collapsed " + std::to_string(duplicate_refs) +
                                  " duplicate references");

    // Fully-qualified names keep the sorted-name vertex order stable through
    // a project-file round trip.
    std::vector<int> module_of(static_cast<std::size_t>(n));
    std::vector<std::string> names(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        const DeclaredType& t = types[vertex_to_type[static_cast<std::size_t>(v)]];
        module_of[static_cast<std::size_t>(v)] = module_index[t.module];
        names[static_cast<std::size_t>(v)] = t.fq_name;
    }
    std::vector<std::string> module_names(module_index.size());
    for (const auto& [name, index] : module_index)
        module_names[static_cast<std::size_t>(index)] = name;

    std::vector<Edge> edge_list;
    edge_list.reserve(edges.size());
    for (const auto& [from, to] : edges) edge_list.push_back(Edge{from, to});

    auto partition = std::make_shared<const ModulePartition>(
        std::move(module_of), static_cast<int>(module_names.size()), std::move(module_names));
    ProjectState state(std::move(partition), edge_list, std::move(names));

    report.classes_found = n;
    report.modules_found = state.module_count();
    report.dependencies_found = state.edge_count();
    return {std::move(state), std::move(report)};
}

}  // namespace recoup
