#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lexqa/dep_tree.hpp"

namespace lexqa {

// One DepTree per sentence block (variant = original, one node per token).
// Multiword-token ranges (1-2) and empty nodes (1.1) are skipped.
// `# text = ...`, `# sent_id = ...` and `# parser = ...` comments are kept.
std::vector<DepTree> parse_conllu(std::string_view content);
std::vector<DepTree> read_conllu(const std::filesystem::path& path);

// Inverse of parse_conllu for single-token-node trees. Throws
// ContractViolation on merged nodes.
std::string write_conllu(const std::vector<DepTree>& trees);

}  // namespace lexqa
