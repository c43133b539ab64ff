#include "adaptbound/io.hpp"

#include "adaptbound/error.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <system_error>

namespace adaptbound::io {

namespace {

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

struct Row {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

// Header-addressed CSV table. Comments are collected for the states unit.
class Table {
public:
    Table(std::istream& in, std::vector<std::string_view> required) {
        std::string raw;
        std::size_t line_no = 0;
        bool have_header = false;
        while (std::getline(in, raw)) {
            ++line_no;
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            if (line_no == 1 && raw.starts_with("\xEF\xBB\xBF")) raw.erase(0, 3);
            const std::string_view line = trim(raw);
            if (line.empty()) continue;
            if (line.front() == '#') {
                comments_.emplace_back(trim(line.substr(1)));
                continue;
            }
            auto fields = split_csv_line(raw, line_no);
            if (!have_header) {
                have_header = true;
                for (std::size_t c = 0; c < fields.size(); ++c) {
                    columns_.emplace(lower(trim(fields[c])), c);
                }
                std::vector<std::string_view> missing;
                for (auto name : required) {
                    if (!columns_.contains(std::string(name))) missing.push_back(name);
                }
                if (!missing.empty()) {
                    throw ParseError(fmt::format("line {}: header is missing column(s) {}; "
                                                 "expected {}",
                                                 line_no, fmt::join(missing, ", "),
                                                 fmt::join(required, ",")),
                                     line_no);
                }
                width_ = fields.size();
                continue;
            }
            if (fields.size() != width_) {
                throw ParseError(fmt::format("line {}: expected {} fields, found {}", line_no,
                                             width_, fields.size()),
                                 line_no);
            }
            rows_.push_back({line_no, std::move(fields)});
        }
        if (!have_header) {
            throw ParseError(fmt::format("missing header; expected {}", fmt::join(required, ",")),
                             0);
        }
    }

    const std::vector<Row>& rows() const { return rows_; }
    const std::vector<std::string>& comments() const { return comments_; }

    std::string_view get(const Row& row, std::string_view column) const {
        return trim(row.fields[columns_.at(std::string(column))]);
    }

    std::string get_required(const Row& row, std::string_view column) const {
        const auto v = get(row, column);
        if (v.empty()) {
            throw ParseError(fmt::format("line {}: empty {}", row.line, column), row.line);
        }
        return std::string(v);
    }

    double get_number(const Row& row, std::string_view column) const {
        const auto v = get(row, column);
        double out = 0.0;
        const auto* first = v.data();
        if (!v.empty() && v.front() == '+') ++first;
        const auto [ptr, ec] = std::from_chars(first, v.data() + v.size(), out);
        if (v.empty() || ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
            throw ParseError(
                fmt::format("line {}: {} '{}' is not a finite number", row.line, column, v),
                row.line);
        }
        return out;
    }

private:
    std::map<std::string, std::size_t> columns_;
    std::size_t width_ = 0;
    std::vector<Row> rows_;
    std::vector<std::string> comments_;
};

void check_unit_interval(const Row& row, std::string_view column, double v) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ParseError(fmt::format("line {}: {} {} outside [0,1]", row.line, column, v),
                         row.line);
    }
}

} // namespace

std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    if (quoted) {
        throw ParseError(fmt::format("line {}: unterminated quoted field", line_no), line_no);
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

StatesFile read_states(std::istream& in, bool allow_blank_accuracy) {
    const Table table(in, {"model_id", "resource", "accuracy"});
    StatesFile out;
    for (const auto& c : table.comments()) {
        const std::string_view text = c;
        if (lower(text.substr(0, 5)) == "unit:") out.unit = std::string(trim(text.substr(5)));
    }
    for (const auto& row : table.rows()) {
        ModelState s;
        s.model_id = table.get_required(row, "model_id");
        s.resource = table.get_number(row, "resource");
        if (!(s.resource > 0.0)) {
            throw ParseError(fmt::format("line {}: resource must be positive", row.line),
                             row.line);
        }
        if (table.get(row, "accuracy").empty()) {
            if (!allow_blank_accuracy) {
                throw ParseError(
                    fmt::format("line {}: accuracy is required for this command", row.line),
                    row.line);
            }
        } else {
            s.accuracy = table.get_number(row, "accuracy");
            check_unit_interval(row, "accuracy", *s.accuracy);
        }
        out.states.push_back(std::move(s));
    }
    if (out.states.empty()) throw ParseError("states file has no rows", 0);
    return out;
}

std::vector<CorrectnessRecord> read_correctness(std::istream& in) {
    const Table table(in, {"instance_id", "model_id", "correct"});
    std::vector<CorrectnessRecord> out;
    out.reserve(table.rows().size());
    for (const auto& row : table.rows()) {
        CorrectnessRecord r;
        r.instance_id = table.get_required(row, "instance_id");
        r.model_id = table.get_required(row, "model_id");
        const std::string flag = lower(table.get(row, "correct"));
        if (flag == "1" || flag == "true") {
            r.correct = true;
        } else if (flag == "0" || flag == "false") {
            r.correct = false;
        } else {
            throw ParseError(fmt::format("line {}: correct must be one of 0,1,true,false; got "
                                         "'{}'",
                                         row.line, flag),
                             row.line);
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<PredictionRecord> read_predictions(std::istream& in) {
    const Table table(in, {"instance_id", "model_id", "label"});
    std::vector<PredictionRecord> out;
    out.reserve(table.rows().size());
    for (const auto& row : table.rows()) {
        // Labels are kept raw; normalisation happens at comparison time.
        out.push_back({table.get_required(row, "instance_id"),
                       table.get_required(row, "model_id"),
                       std::string(table.get(row, "label"))});
    }
    return out;
}

std::map<std::string, std::string> read_truth(std::istream& in) {
    const Table table(in, {"instance_id", "label"});
    std::map<std::string, std::string> out;
    for (const auto& row : table.rows()) {
        auto id = table.get_required(row, "instance_id");
        if (!out.emplace(id, std::string(table.get(row, "label"))).second) {
            throw ParseError(fmt::format("line {}: duplicate ground truth for instance '{}'",
                                         row.line, id),
                             row.line);
        }
    }
    return out;
}

std::vector<EnvelopePoint> read_envelope(std::istream& in) {
    const Table table(in, {"resource", "accuracy"});
    std::vector<EnvelopePoint> out;
    for (const auto& row : table.rows()) {
        EnvelopePoint p{table.get_number(row, "resource"), table.get_number(row, "accuracy")};
        if (!(p.resource > 0.0)) {
            throw ParseError(fmt::format("line {}: resource must be positive", row.line),
                             row.line);
        }
        check_unit_interval(row, "accuracy", p.accuracy);
        out.push_back(p);
    }
    return out;
}

AlphaProfile read_alpha_profile(std::istream& in, std::size_t num_states) {
    const Table table(in, {"rank", "alpha"});
    if (num_states < 1) throw ParseError("alpha profile needs a non-empty state space", 0);
    std::vector<std::optional<double>> entries(num_states - 1);
    std::vector<bool> seen(num_states + 1, false);
    for (const auto& row : table.rows()) {
        const auto text = table.get(row, "rank");
        std::size_t rank = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), rank);
        if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || rank < 2 ||
            rank > num_states) {
            throw ParseError(fmt::format("line {}: rank '{}' outside [2, {}]", row.line, text,
                                         num_states),
                             row.line);
        }
        if (seen[rank]) {
            throw ParseError(fmt::format("line {}: rank {} listed twice", row.line, rank),
                             row.line);
        }
        seen[rank] = true;
        if (!table.get(row, "alpha").empty()) {
            const double a = table.get_number(row, "alpha");
            check_unit_interval(row, "alpha", a);
            entries[rank - 2] = a;
        }
    }
    for (std::size_t rank = 2; rank <= num_states; ++rank) {
        if (!seen[rank]) {
            throw ParseError(fmt::format("alpha profile has no row for rank {}", rank), 0);
        }
    }
    return AlphaProfile(std::move(entries));
}

void write_correctness(std::ostream& out, const CorrectnessMatrix& matrix,
                       std::string_view comment) {
    if (!comment.empty()) out << "# " << comment << '\n';
    out << "instance_id,model_id,correct\n";
    for (std::size_t x = 0; x < matrix.num_instances(); ++x) {
        const std::string id = csv_field(matrix.instance_ids()[x]);
        for (std::size_t i = 0; i < matrix.num_models(); ++i) {
            out << id << ',' << csv_field(matrix.model_ids()[i]) << ','
                << (matrix.correct(x, i) ? '1' : '0') << '\n';
        }
    }
}

void write_labels(std::ostream& out, const std::vector<AdaptationLabel>& labels) {
    out << "instance_id,selected_model_id,selected_rank,correct\n";
    for (const auto& l : labels) {
        out << csv_field(l.instance_id) << ',' << csv_field(l.selected_model_id) << ','
            << l.selected_rank << ',' << (l.correct ? '1' : '0') << '\n';
    }
}

std::string format_number(double value) {
    if (!std::isfinite(value)) {
        throw Error(fmt::format("non-finite value {} cannot be reported", value));
    }
    if (value == 0.0) return "0";
    std::array<char, 64> buf{};
    const auto [ptr, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 12);
    if (ec != std::errc()) throw Error("number formatting failed");
    return std::string(buf.data(), ptr);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(fmt::format("cannot open '{}'", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(fmt::format("cannot write '{}'", tmp.string()));
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error(fmt::format("write to '{}' failed", tmp.string()));
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error(fmt::format("cannot move '{}' into place: {}", path.string(), ec.message()));
    }
}

std::string sha256_hex(std::string_view data) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                                 &EVP_MD_CTX_free);
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
        throw Error("sha256 failed");
    }
    std::string hex;
    hex.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
    return hex;
}

} // namespace adaptbound::io
