#ifndef QLK_REPORT_HPP
#define QLK_REPORT_HPP

#include <string>

#include <json.hpp>

#include "qlk/assoc_variety.hpp"
#include "qlk/level_class.hpp"
#include "qlk/modular_mlde.hpp"
#include "qlk/vacuum_engine.hpp"

namespace qlk {

// All documents are built as ordered JSON so byte output is deterministic;
// the text rendering is derived from the JSON, never computed separately.
using Json = nlohmann::ordered_json;

Json level_report_json(const LevelReport& rep);

// The eight Deligne rows at n = 0, with the paper-discrepancy note on the
// two types whose published lists disagree.
Json deligne_table_json();

Json character_json(const QCharacter& chi);

Json variety_json(const VarietyResult& v);

Json slodowy_json(const SlodowyResult& s);

Json mlde_json(const MLDE& m);

// Composite end-to-end document for the A1 member of the Deligne series:
// classification, variety, Slodowy restriction, character, fitted MLDE and
// a consistency verdict per section (CONSISTENT / INCONCLUSIVE /
// INCONSISTENT) plus the aggregate.
Json report_deligne_a1(int N, int max_order);

// Indented "key: value" rendering of any document produced above.
std::string render_text(const Json& doc);

// Document serialized in the requested format ("json" or "text"), newline
// terminated. Unknown formats raise ParseError.
std::string render(const Json& doc, const std::string& format);

}  // namespace qlk

#endif
