#include "hgcm/catalog.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hgcm {

using nlohmann::ordered_json;

CatalogRecord make_record(const PolygonDatum& d) {
  CatalogRecord rec;
  rec.canonical = canonical_form(d);
  rec.datum = unpack(rec.canonical);
  const RealizationReport report = verify_realization(rec.datum);
  if (!report.ok()) {
    std::string msg = "invalid realization:";
    for (const auto& f : report.failures) msg += " [" + f.check + "] " + f.detail + ";";
    throw InvalidRealizationError(msg);
  }
  rec.r = report.weyl->r;
  rec.table = polygon_table(rec.datum);
  rec.cartan = cartan_matrix(rec.datum);
  rec.symcartan = symmetrized_cartan(rec.datum);
  rec.symmetry = symmetry_group(rec.datum);
  rec.flags = classify_flags(rec.datum, *report.weyl);
  return rec;
}

bool record_less(const CatalogRecord& a, const CatalogRecord& b) {
  if (a.r != b.r) return a.r < b.r;
  if (a.canonical.n != b.canonical.n) return a.canonical.n < b.canonical.n;
  return a.canonical.body < b.canonical.body;
}

void sort_records(std::vector<CatalogRecord>& records) { std::sort(records.begin(), records.end(), record_less); }

std::string to_record_line(const CatalogRecord& rec) {
  const std::size_t n = rec.datum.size();
  ordered_json j;
  j["r"] = rec.r.to_string();
  j["n"] = n;
  j["lambda"] = rec.datum.lambdas();
  j["pairings"] = std::vector<std::int64_t>(rec.canonical.body.begin(), rec.canonical.body.begin() + n * (n - 1) / 2);
  j["polygon_table"] = rec.table.rows;
  j["cartan"] = rec.cartan.entries;
  j["symcartan"] = rec.symcartan.entries;
  j["sym_order"] = rec.symmetry.order;
  j["compact"] = rec.flags.compact;
  j["untwisted"] = rec.flags.untwisted;
  j["type"] = to_string(rec.flags.type);
  return j.dump();
}

CatalogRecord from_record_line(std::string_view line) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const ordered_json::exception& e) {
    throw std::invalid_argument(std::string("record: ") + e.what());
  }
  try {
    const auto n = j.at("n").get<std::size_t>();
    PackedDatum p{n, j.at("pairings").get<std::vector<std::int64_t>>()};
    const auto lambda = j.at("lambda").get<std::vector<std::int64_t>>();
    p.body.insert(p.body.end(), lambda.begin(), lambda.end());
    if (p.body.size() != n * (n - 1) / 2 + n) throw std::invalid_argument("record: pairings/lambda length mismatch");
    CatalogRecord rec = make_record(unpack(p));
    if (rec.r != Rational::parse(j.at("r").get<std::string>()))
      throw std::invalid_argument("record: stored r does not match the recomputed Weyl square");
    return rec;
  } catch (const ordered_json::exception& e) {
    throw std::invalid_argument(std::string("record: ") + e.what());
  }
}

std::string to_table_block(const Rational& r, const GeometricRealizationTable& table) {
  std::ostringstream os;
  os << "r = " << r << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << row[i];
    os << '\n';
  }
  return os.str();
}

}  // namespace hgcm
