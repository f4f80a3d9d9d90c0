#pragma once

#include "focustree/hierarchy.hpp"

#include <filesystem>
#include <string>

namespace focustree {

// Self-contained JSON document: format tag, config echo, dataset fingerprint and
// the node table. Output is deterministic for a given tree.
std::string serialize_tree(const Tree& tree);

// Throws Error{ParseError} on malformed input.
Tree deserialize_tree(const std::string& text);

void save_tree(const Tree& tree, const std::filesystem::path& path);

// Throws Error{FingerprintMismatch} when the tree was built from another dataset.
Tree load_tree(const std::filesystem::path& path, const Dataset& dataset);

std::string_view to_string(LeafKind kind);

}  // namespace focustree
