#pragma once

// Text file formats.
//
//   trace file        header `t,page`, rows `t,page` for t = 1..T contiguous;
//                     an optional `# n=<int>` comment line carries the universe.
//                     The virtual suffix is never written.
//   NAT predictor     header `t,predicted_nat`
//   explicit pred.    header `t,predicted_page`
//   bundle directory  predictor_<j>.csv for j = 1..M plus manifest.txt:
//                       M = <int>
//                       mode = full-information | bandit
//                       predictor_<j>.csv = <crc32 hex>
//   key-value config  `key = value` per line, `#` starts a comment.

#include "paging/core.hpp"
#include "paging/predictors.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace paging {

struct LoadedTrace {
    std::vector<Page> raw;
    std::optional<Page> n; // from the `# n=` header, if present
};

LoadedTrace read_trace_file(const std::filesystem::path& path);
// n from `n_override` if given, else from the file header; ValidationError if neither.
RequestTrace load_trace(const std::filesystem::path& path, std::optional<Page> n_override);
std::string format_trace(const RequestTrace& trace);

std::string format_nat_stream(const NatPredictionStream& stream);
NatPredictionStream parse_nat_stream(const std::string& text, Round limit, const std::string& origin);
std::string format_explicit_stream(const ExplicitPredictionStream& stream);
std::vector<Page> parse_explicit_stream(const std::string& text, const std::string& origin);

struct PredictorBundle {
    AccessMode mode = AccessMode::kFullInformation;
    std::vector<NatPredictionStream> streams;
};

void write_bundle(const std::filesystem::path& dir, const PredictorBundle& bundle);
// Verifies the manifest count and every checksum.
PredictorBundle read_bundle(const std::filesystem::path& dir, Round limit);

using KeyValues = std::map<std::string, std::string>;
KeyValues parse_key_values(const std::string& text, const std::string& origin);

std::string read_file(const std::filesystem::path& path);
// Writes to a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

std::uint32_t crc32_of(const std::string& data);

// printf "%.6g"
std::string format_real(double value);

} // namespace paging
