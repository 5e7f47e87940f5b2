#ifndef EXCHG_JSON_IO_HPP_
#define EXCHG_JSON_IO_HPP_

#include <string>

#include "json.hpp"

#include "exchg/laws.hpp"
#include "exchg/nat.hpp"
#include "exchg/sample.hpp"

namespace exchg {

using Json = nlohmann::json;

// "p/q" or "p"; also accepts JSON numbers (best rational approximation).
Rational parse_rational(const std::string& text);
Rational rational_from_json(const Json& j);

Json to_json(const IdSet& a);
IdSet idset_from_json(const Json& j);

// {"dom":[...], "cod":[...], "map":[[s,t],...]}
Json to_json(const Injection& tau);
Injection injection_from_json(const Json& j);

// Atom -> integer; {"tuple":[...]}; {"set":[...]}; {"slot":s,"index":...}.
Json to_json(const Index& i);
Index index_from_json(const Json& j);

// Terms mirroring the element kinds: {"array":[{"index":..,"value":..}]},
// {"sets":[[..]]}, {"vertices":[..],"edges":[[..]]}, {"pair":[..,..]},
// {"tag":t,"value":..}.
Json to_json(const Elem& x);
Elem elem_from_json(const Json& j);

Json to_json(const CheckReport& report);

// {"structure": DS expr, "n_max": n, "tables": {"0":[{"element":..,"mass":..}]}}
Json law_to_json(const FiniteLaw& law);
FiniteLaw law_from_json(const Json& j);
FiniteLaw load_law(const std::string& path);

// {"source": DS expr, "indexing": IS expr, "alphabet":[..], "max_rep_size": k,
//  "kernels":[{"rep": index, "table":[{"input": element, "output": sym}]}]}
Json kernels_to_json(const KernelFamily& family);
KernelFamily kernels_from_json(const Json& j);
KernelFamily load_kernels(const std::string& path);

// Sampler rules: {"indexing": IS expr, "alphabet":[..], "depth": k,
//  "kernels":[{"rep": index, "rule": RULE}]} with
// RULE := {"type":"threshold","subset":[..],"p":0.5}
//       | {"type":"compare","less":[..],"greater":[..]}   (1 iff U_less < U_greater)
SamplerKernelFamily sampler_from_json(const Json& j);
SamplerKernelFamily load_sampler(const std::string& path);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace exchg

#endif  // EXCHG_JSON_IO_HPP_
