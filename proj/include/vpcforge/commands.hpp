/**
 * @file commands.hpp
 * @brief JSON documents produced by the front ends (command line and Python)
 *        for one instance: LP solve, cut generation, certification and
 *        strengthening of supplied cuts.
 */
#pragma once

#include "vpcforge/serialize.hpp"

#include <optional>

namespace vpcforge {

/// LP relaxation (and optionally the enumerated integer optimum) in raw space.
Json solve_document(const Instance& raw, bool with_ip = false);

/// VPCs from a partial tree with `leaves` leaves, plus the GMICs of the root.
Json cuts_document(const Instance& raw, int leaves, const PipelineOptions& options, std::uint64_t seed = 0);

/// Where certify/strengthen take their disjunction from: an explicit document,
/// else the "disjunction" entry of the cuts document, else a fresh tree.
struct DisjunctionSource {
  std::optional<Json> disjunction;
  int leaves = 2;
};

/// Per-term certificates and validity verdicts for every cut in `cuts_doc`
/// (a document with a "cuts" list, or a single cut object).
Json certify_document(const Instance& raw, const Json& cuts_doc, const DisjunctionSource& source,
                      const PipelineOptions& options, std::uint64_t seed = 0);

/// Strengthened cuts with per-coefficient deltas and certificate diagnostics.
Json strengthen_document(const Instance& raw, const Json& cuts_doc, const DisjunctionSource& source,
                         const PipelineOptions& options, std::uint64_t seed = 0);

} // namespace vpcforge
