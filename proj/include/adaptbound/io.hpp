#pragma once

#include "adaptbound/core.hpp"
#include "adaptbound/empirical.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adaptbound::io {

// All readers accept '#' comment lines and blank lines, require the named
// header columns (any order, extra columns ignored) and raise ParseError
// with the 1-based line number of the offending row.

struct StatesFile {
    std::vector<ModelState> states;
    // From a "# unit: <text>" comment line, echoed verbatim.
    std::optional<std::string> unit;
};

// model_id,resource,accuracy. Blank accuracies only when allowed.
StatesFile read_states(std::istream& in, bool allow_blank_accuracy);
// instance_id,model_id,correct with correct in {0,1,true,false}.
std::vector<CorrectnessRecord> read_correctness(std::istream& in);
// instance_id,model_id,label
std::vector<PredictionRecord> read_predictions(std::istream& in);
// instance_id,label; a repeated instance is an error.
std::map<std::string, std::string> read_truth(std::istream& in);
// resource,accuracy
std::vector<EnvelopePoint> read_envelope(std::istream& in);
// rank,alpha for ranks 2..num_states, each exactly once; blank = undefined.
AlphaProfile read_alpha_profile(std::istream& in, std::size_t num_states);

void write_correctness(std::ostream& out, const CorrectnessMatrix& matrix,
                       std::string_view comment = {});
void write_labels(std::ostream& out, const std::vector<AdaptationLabel>& labels);

// Quotes a CSV field when it contains a delimiter, quote or newline.
std::string csv_field(std::string_view text);
// Splits one CSV record; throws ParseError on an unterminated quote.
std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no);

// 12 significant digits, shortest form, locale independent.
std::string format_number(double value);

std::string read_file(const std::filesystem::path& path);
// Writes to a sibling temporary file, then renames over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string sha256_hex(std::string_view data);

} // namespace adaptbound::io
