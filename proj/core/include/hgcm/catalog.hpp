#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hgcm/canonical.hpp"
#include "hgcm/polygon.hpp"
#include "hgcm/rational.hpp"

namespace hgcm {

/// One classified realization, stored in its canonical labelling.
struct CatalogRecord {
  Rational r;
  PackedDatum canonical;
  PolygonDatum datum;
  GeometricRealizationTable table;
  CartanMatrix cartan;
  SymmetrizedCartan symcartan;
  SymmetryGroup symmetry;
  ClassificationFlags flags;
};

/// Canonicalizes `d`, verifies it and derives every field. Throws
/// InvalidRealizationError listing the failed checks if verification fails.
CatalogRecord make_record(const PolygonDatum& d);

/// Order by r, then number of sides, then canonical body.
bool record_less(const CatalogRecord& a, const CatalogRecord& b);
void sort_records(std::vector<CatalogRecord>& records);

/// Single-line JSON object with fields r, n, lambda, pairings, polygon_table,
/// cartan, symcartan, sym_order, compact, untwisted, type (in that order).
std::string to_record_line(const CatalogRecord& rec);
/// Parses a record line and re-derives every field from lambda and the
/// packed pairings. Throws std::invalid_argument on malformed input.
CatalogRecord from_record_line(std::string_view line);

/// "r = p/q" followed by the table rows.
std::string to_table_block(const Rational& r, const GeometricRealizationTable& table);

}  // namespace hgcm
