#pragma once

#include <hyperaut/diffmethod.hpp>
#include <hyperaut/forms.hpp>
#include <hyperaut/numbertheory.hpp>
#include <hyperaut/symmetry.hpp>
#include <hyperaut/torelli.hpp>

#include <json.hpp>

namespace hyperaut {

/// Deterministic JSON renderings: big integers as decimal strings, keys in
/// fixed order, byte-identical across runs and parallelism settings.
using Json = nlohmann::ordered_json;

Json to_json(const Form& f);
Json to_json(const Sparsity& s);
Json to_json(const PosetReport& r);
Json to_json(const AutConstraint& c);
Json to_json(const PhaseMatrix& g);
Json to_json(const DiagonalGroup& g);
Json to_json(const GroupDescriptor& g);
Json to_json(const KleinGeneratorCheck& c);
Json to_json(const WagstaffResult& r);
Json wagstaff_scan_json(int n_max, int d_max,
                        const std::vector<WagstaffResult>& results);
Json to_json(const TorelliVerdict& v);

const char* to_string(ConstraintKind k);
const char* to_string(NotApplicableReason r);

}  // namespace hyperaut
