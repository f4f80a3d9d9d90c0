#include "focustree/embedding_io.hpp"

#include "focustree/error.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace focustree {

using nlohmann::json;

DataFormat format_from_path(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    if (ext == ".jsonl" || ext == ".ndjson") return DataFormat::Jsonl;
    return DataFormat::Csv;
}

std::optional<DataFormat> parse_format(std::string_view name) {
    if (name == "csv") return DataFormat::Csv;
    if (name == "jsonl") return DataFormat::Jsonl;
    return std::nullopt;
}

std::string format_double(double value) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    (void)ec;
    return std::string(buf.data(), end);
}

namespace {

std::string row_tag(std::size_t row) { return "row " + std::to_string(row) + ": "; }

// Reads one RFC 4180 record; returns false at end of input.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields) {
    fields.clear();
    if (in.peek() == std::char_traits<char>::eof()) return false;
    std::string field;
    bool quoted = false;
    bool any = false;
    for (int c = in.get(); c != std::char_traits<char>::eof(); c = in.get()) {
        any = true;
        const char ch = static_cast<char>(c);
        if (quoted) {
            if (ch == '"') {
                if (in.peek() == '"') {
                    field.push_back('"');
                    in.get();
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(ch);
            }
            continue;
        }
        if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (ch == '\n') {
            break;
        } else if (ch != '\r') {
            field.push_back(ch);
        }
    }
    if (any) fields.push_back(std::move(field));
    return true;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

PointId parse_id(const std::string& s, std::size_t row) {
    PointId v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw Error(ErrorCode::ParseError, row_tag(row) + "id '" + s + "' is not a non-negative integer");
    return v;
}

double parse_real(const std::string& s, std::size_t row, const char* column) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || first == last)
        throw Error(ErrorCode::ParseError,
                    row_tag(row) + std::string(column) + " '" + s + "' is not a number");
    return v;
}

Dataset read_csv(std::istream& in) {
    std::vector<std::string> fields;
    if (!read_csv_record(in, fields)) throw Error(ErrorCode::EmptyDataset, "empty file: no header");

    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < fields.size(); ++i) col[fields[i]] = i;
    for (const char* required : {"id", "x", "y", "label"})
        if (!col.count(required))
            throw Error(ErrorCode::MissingColumn, std::string("header: missing column '") + required + "'");

    std::vector<std::size_t> feature_cols;
    while (col.count("f" + std::to_string(feature_cols.size())))
        feature_cols.push_back(col["f" + std::to_string(feature_cols.size())]);
    const std::optional<std::size_t> thumb_col =
        col.count("thumbnail") ? std::optional<std::size_t>(col["thumbnail"]) : std::nullopt;

    std::vector<DataPoint> points;
    std::size_t row = 0;
    while (read_csv_record(in, fields)) {
        if (fields.empty() || (fields.size() == 1 && fields[0].empty())) continue;
        ++row;
        if (fields.size() != col.size())
            throw Error(ErrorCode::ParseError, row_tag(row) + "expected " + std::to_string(col.size()) +
                                                   " fields, got " + std::to_string(fields.size()));
        DataPoint p;
        p.id = parse_id(fields[col["id"]], row);
        p.x = parse_real(fields[col["x"]], row, "x");
        p.y = parse_real(fields[col["y"]], row, "y");
        p.label = fields[col["label"]];
        p.features.reserve(feature_cols.size());
        for (std::size_t c : feature_cols) p.features.push_back(parse_real(fields[c], row, "feature"));
        if (thumb_col) p.thumbnail = fields[*thumb_col];
        points.push_back(std::move(p));
    }
    return Dataset::from_points(std::move(points));
}

double json_real(const json& obj, const char* key, std::size_t row) {
    auto it = obj.find(key);
    if (it == obj.end()) throw Error(ErrorCode::MissingColumn, row_tag(row) + "missing key '" + key + "'");
    if (it->is_null()) throw Error(ErrorCode::NonFiniteCoordinate, row_tag(row) + key + " is null");
    if (!it->is_number()) throw Error(ErrorCode::ParseError, row_tag(row) + key + " is not a number");
    return it->get<double>();
}

Dataset read_jsonl(std::istream& in) {
    std::vector<DataPoint> points;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ++row;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw Error(ErrorCode::ParseError, row_tag(row) + e.what());
        }
        if (!obj.is_object()) throw Error(ErrorCode::ParseError, row_tag(row) + "not a JSON object");

        DataPoint p;
        auto id = obj.find("id");
        if (id == obj.end()) throw Error(ErrorCode::MissingColumn, row_tag(row) + "missing key 'id'");
        if (!id->is_number_unsigned())
            throw Error(ErrorCode::ParseError, row_tag(row) + "id is not a non-negative integer");
        p.id = id->get<PointId>();
        p.x = json_real(obj, "x", row);
        p.y = json_real(obj, "y", row);
        auto label = obj.find("label");
        if (label == obj.end()) throw Error(ErrorCode::MissingColumn, row_tag(row) + "missing key 'label'");
        p.label = label->is_string() ? label->get<std::string>() : label->dump();
        if (auto f = obj.find("features"); f != obj.end()) {
            if (!f->is_array()) throw Error(ErrorCode::ParseError, row_tag(row) + "features is not an array");
            for (const auto& v : *f) {
                if (!v.is_number()) throw Error(ErrorCode::ParseError, row_tag(row) + "non-numeric feature");
                p.features.push_back(v.get<double>());
            }
        }
        if (auto t = obj.find("thumbnail"); t != obj.end() && !t->is_null()) {
            if (!t->is_string()) throw Error(ErrorCode::ParseError, row_tag(row) + "thumbnail is not a string");
            p.thumbnail = t->get<std::string>();
        }
        points.push_back(std::move(p));
    }
    return Dataset::from_points(std::move(points));
}

}  // namespace

Dataset read_dataset(std::istream& in, DataFormat format) {
    return format == DataFormat::Csv ? read_csv(in) : read_jsonl(in);
}

Dataset load_dataset(const std::filesystem::path& path, DataFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
    return read_dataset(in, format);
}

void write_dataset(const Dataset& dataset, std::ostream& out, DataFormat format) {
    const bool thumbs = dataset.has_thumbnails();
    if (format == DataFormat::Csv) {
        out << "id,x,y,label";
        for (std::size_t f = 0; f < dataset.feature_dim(); ++f) out << ",f" << f;
        if (thumbs) out << ",thumbnail";
        out << '\n';
        for (const auto& p : dataset.points()) {
            out << p.id << ',' << format_double(p.x) << ',' << format_double(p.y) << ','
                << csv_escape(p.label);
            for (double f : p.features) out << ',' << format_double(f);
            if (thumbs) out << ',' << csv_escape(p.thumbnail);
            out << '\n';
        }
        return;
    }
    for (const auto& p : dataset.points()) {
        json obj = {{"id", p.id}, {"x", p.x}, {"y", p.y}, {"label", p.label}};
        if (!p.features.empty()) obj["features"] = p.features;
        if (!p.thumbnail.empty()) obj["thumbnail"] = p.thumbnail;
        out << obj.dump() << '\n';
    }
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& path, DataFormat format) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
    write_dataset(dataset, out, format);
    out.flush();
    if (!out) throw Error(ErrorCode::IoFailure, "write failed: " + path.string());
}

}  // namespace focustree
