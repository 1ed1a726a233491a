#ifndef DINDEX_SYSTEM_FILE_HPP
#define DINDEX_SYSTEM_FILE_HPP

#include "dindex/index_core.hpp"
#include "dindex/oracle.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <string>

namespace dindex {

using Json = nlohmann::ordered_json;

struct SystemFile {
  SystemSpec system;
  std::optional<Specialization> specialization;
};

/// make_field -> parse -> orders -> validate_specialization. Structural
/// problems with the document raise InvalidSystemFile.
SystemFile parse_system_json(const Json& doc);
SystemFile load_system_file(const std::string& path);

/// The specialization, or InvalidSystemFile when the file has none.
const Specialization& require_specialization(const SystemFile& f);

/// The bundled worked example as a system file document.
Json example_system_json();
/// example_system_json() rendered with two-space indent and a final newline.
std::string example_system_text();

Json report_to_json(const IndexReport& rep);
std::string report_to_text(const IndexReport& rep);

/// Exact bounds longer than digit_limit decimal digits are reported by
/// length only.
Json membership_to_json(const MembershipBound& mb, std::size_t digit_limit = 1000);
std::string membership_to_text(const MembershipBound& mb, std::size_t digit_limit = 1000);

Json lemma_lab_to_json(const LemmaLabReport& rep);
std::string lemma_lab_to_text(const LemmaLabReport& rep);

/// Aligned plain-text grid of matrix entries.
std::string grid_text(const std::vector<std::vector<std::string>>& cells);
Json grid_json(const std::vector<std::vector<std::string>>& cells);

}  // namespace dindex

#endif  // DINDEX_SYSTEM_FILE_HPP
