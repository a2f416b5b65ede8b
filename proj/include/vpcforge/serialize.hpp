/**
 * @file serialize.hpp
 * @brief JSON exchange of cuts, disjunctions, certificates and strengthening
 *        results. Cuts and bound changes are written in the raw variable space
 *        of the instance file; certificates stay in the standardized space
 *        where their rows live.
 */
#pragma once

#include "vpcforge/harness.hpp"

#include <json.hpp>

namespace vpcforge {

using Json = nlohmann::ordered_json;

Json cut_to_json(const Cut& cut, const Instance& standardized);
/// Accepts "alpha" as a dense array or as an object keyed by variable name.
Cut cut_from_json(const Json& j, const Instance& standardized);

Json disjunction_to_json(const Disjunction& disjunction, const Instance& standardized);
/// Bound changes of each term, mapped into the standardized space.
std::vector<std::vector<BoundChange>> disjunction_from_json(const Json& j, const Instance& standardized);

/// Row label of index `row` in a term row layout: instance row name,
/// "ub:<var>", "disj:<k>" or "lb:<var>".
std::string row_label(const TermRows& rows, const Instance& standardized, int row);

Json certificate_to_json(const FarkasCertificate& certificate, const std::vector<TermRows>& rows,
                         const Instance& standardized, const Cut& cut);

Json strengthen_to_json(const StrengthenResult& result, const Instance& standardized);

} // namespace vpcforge
