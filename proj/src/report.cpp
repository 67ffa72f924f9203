#include "dgl/report.hpp"

#include <cstdio>
#include <sstream>

namespace dgl {

using json = nlohmann::ordered_json;

std::string to_string(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::ValidationFailure: return "validation-failure";
    case Status::Unknown: return "unknown";
  }
  return "?";
}

std::string Record::digest() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : inputs.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Table& Record::table(const std::string& name, std::vector<std::string> columns) {
  tables.push_back(Table{name, std::move(columns), {}});
  return tables.back();
}

void Record::certify(const std::string& name, bool ok, json witness) {
  certificates.push_back(CertificateEntry{name, ok, std::move(witness)});
  if (!ok && status == Status::Ok) status = Status::ValidationFailure;
}

std::optional<Format> parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "csv") return Format::Csv;
  if (s == "structured" || s == "json") return Format::Structured;
  return std::nullopt;
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& v, const std::string& sep, bool csv) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + (csv ? csv_cell(v[i]) : v[i]);
  return out;
}

std::string header(const Report& r) {
  return "dglc report: source=" + (r.source.empty() ? std::string("-") : r.source) + " seed=" + std::to_string(r.seed);
}

json structured(const Report& r) {
  json out;
  out["source"] = r.source;
  out["seed"] = r.seed;
  out["records"] = json::array();
  for (const auto& rec : r.records) {
    json j;
    j["operation"] = rec.operation;
    j["inputs"] = rec.inputs;
    j["digest"] = rec.digest();
    j["caps"] = rec.caps;
    j["status"] = to_string(rec.status);
    j["tables"] = json::array();
    for (const auto& t : rec.tables) j["tables"].push_back({{"name", t.name}, {"columns", t.columns}, {"rows", t.rows}});
    j["certificates"] = json::array();
    for (const auto& c : rec.certificates) j["certificates"].push_back({{"name", c.name}, {"ok", c.ok}, {"witness", c.witness}});
    j["notes"] = rec.notes;
    if (rec.seconds) j["seconds"] = *rec.seconds;
    out["records"].push_back(j);
  }
  return out;
}

}  // namespace

std::string emit(const Report& r, Format f) {
  std::ostringstream os;
  if (f == Format::Structured) {
    if (r.records.empty()) return json{{"source", r.source}, {"seed", r.seed}}.dump(2) + "\n";
    return structured(r).dump(2) + "\n";
  }
  if (f == Format::Csv) {
    os << "# " << header(r) << "\n";
    for (const auto& rec : r.records)
      for (const auto& t : rec.tables) {
        os << "\n# " << rec.operation << " / " << t.name << " / caps " << rec.caps.dump() << "\n";
        os << join(t.columns, ",", true) << "\n";
        for (const auto& row : t.rows) os << join(row, ",", true) << "\n";
      }
    return os.str();
  }
  os << header(r) << "\n";
  for (const auto& rec : r.records) {
    os << "\n== " << rec.operation << " [" << to_string(rec.status) << "] digest " << rec.digest() << "\n";
    os << "inputs: " << rec.inputs.dump() << "\n";
    if (!rec.caps.empty()) os << "caps: " << rec.caps.dump() << "\n";
    for (const auto& t : rec.tables) {
      os << "-- " << t.name << "\n";
      std::vector<std::size_t> w(t.columns.size());
      for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = t.columns[i].size();
        for (const auto& row : t.rows)
          if (i < row.size()) w[i] = std::max(w[i], row[i].size());
      }
      auto line = [&](const std::vector<std::string>& row) {
        std::string s;
        for (std::size_t i = 0; i < row.size(); ++i) {
          s += (i ? "  " : "  ") + row[i];
          if (i + 1 < row.size() && i < w.size()) s += std::string(w[i] - row[i].size(), ' ');
        }
        os << s << "\n";
      };
      line(t.columns);
      for (const auto& row : t.rows) line(row);
    }
    for (const auto& c : rec.certificates)
      os << (c.ok ? "certified: " : "FAILED: ") << c.name << (c.witness.empty() ? "" : " " + c.witness.dump()) << "\n";
    for (const auto& n : rec.notes) os << "note: " << n << "\n";
    if (rec.seconds) os << "seconds: " << *rec.seconds << "\n";
  }
  return os.str();
}

int exit_code(const Report& r) {
  bool unknown = false;
  for (const auto& rec : r.records) {
    if (rec.status == Status::ValidationFailure) return 2;
    if (rec.status == Status::Unknown) unknown = true;
  }
  return unknown ? 3 : 0;
}

}  // namespace dgl
