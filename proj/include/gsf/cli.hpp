#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "gsf/neighborhoods.hpp"
#include "gsf/structures.hpp"

namespace gsf {

// Command-line front door. dispatch returns the process exit code:
// 0 success, 1 domain error (single-line diagnostic on stderr), 2 usage.
int dispatch(int argc, const char* const* argv);

// experiment context: artifact writing with the seed recorded
struct Workspace {
    std::string subcommand;
    uint64_t seed = 0;

    void write_artifact(const std::string& path, const std::string& body) const;
};

// loads a structure or a graph, dispatching on the file header
std::variant<Structure, Graph> load_input(const std::string& path);
Structure load_structure_input(const std::string& path);  // graphs are converted

// key-only catalog files ("type-catalog v1")
void write_catalog(std::ostream& os, const TypeCatalog& cat);
TypeCatalog parse_catalog(std::istream& is);
TypeCatalog parse_catalog_file(const std::string& path);

}  // namespace gsf
