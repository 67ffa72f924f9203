#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dgl {

enum class Status { Ok, ValidationFailure, Unknown };

std::string to_string(Status s);

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// A checked claim; `witness` holds the data that certifies it (e.g. gauge logarithms).
struct CertificateEntry {
  std::string name;
  bool ok = true;
  nlohmann::ordered_json witness = nlohmann::ordered_json::object();
};

struct Record {
  std::string operation;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  nlohmann::ordered_json caps = nlohmann::ordered_json::object();
  std::vector<Table> tables;
  std::vector<CertificateEntry> certificates;
  std::vector<std::string> notes;
  Status status = Status::Ok;
  std::optional<double> seconds;

  std::string digest() const;  // FNV-1a of the serialized inputs
  Table& table(const std::string& name, std::vector<std::string> columns);
  void certify(const std::string& name, bool ok, nlohmann::ordered_json witness = nlohmann::ordered_json::object());
};

struct Report {
  std::string source;
  std::uint64_t seed = 0;
  std::vector<Record> records;
};

enum class Format { Text, Csv, Structured };

std::optional<Format> parse_format(const std::string& s);

/// Byte-stable rendering; an empty report renders as its header alone.
std::string emit(const Report& r, Format f);

/// 0 success, 2 validation failure, 3 Unknown-bearing result. Validation failures win.
int exit_code(const Report& r);

}  // namespace dgl
