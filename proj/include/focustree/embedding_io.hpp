#pragma once

#include "focustree/dataset.hpp"

#include <filesystem>
#include <iosfwd>
#include <string_view>

namespace focustree {

enum class DataFormat { Csv, Jsonl };

// Picks the format from the extension: ".jsonl"/".ndjson" -> Jsonl, everything else Csv.
DataFormat format_from_path(const std::filesystem::path& path);
std::optional<DataFormat> parse_format(std::string_view name);

// CSV header: id,x,y,label[,f0..fn][,thumbnail]. JSONL: one object per line with
// keys id, x, y, label and optional features (array) and thumbnail.
Dataset load_dataset(const std::filesystem::path& path, DataFormat format);
Dataset read_dataset(std::istream& in, DataFormat format);

void save_dataset(const Dataset& dataset, const std::filesystem::path& path, DataFormat format);
void write_dataset(const Dataset& dataset, std::ostream& out, DataFormat format);

// Shortest text form that parses back to the same double.
std::string format_double(double value);

}  // namespace focustree
