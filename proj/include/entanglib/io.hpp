#pragma once

#include <string>

#include <json.hpp>

#include "entanglib/entanglement.hpp"
#include "entanglib/hermitian.hpp"
#include "entanglib/optim.hpp"
#include "entanglib/separability.hpp"
#include "entanglib/states.hpp"

namespace entanglib {

using json = nlohmann::json;

json tensor_to_json(const DenseTensor& t);
DenseTensor tensor_from_json(const json& j);

json sym_to_json(const SymTensor& s);
SymTensor sym_from_json(const json& j);

json hermitian_to_json(const HermitianTensor& b);
HermitianTensor hermitian_from_json(const json& j);

json estimate_to_json(const NormEstimate& e, const Decomposition* dec = nullptr);
json report_to_json(const EntanglementReport& r);
json verdict_to_json(const SeparabilityVerdict& v);
json state_to_json(const NamedState& s);

/// Parses any of the documented tensor payloads; symmetric ones are also
/// returned in dense form.
struct ParsedTensor {
  std::optional<SymTensor> symmetric;
  std::optional<DenseTensor> dense;
  std::optional<HermitianTensor> hermitian;
};
ParsedTensor parse_tensor_json(const json& j);

}  // namespace entanglib
