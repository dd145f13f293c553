#pragma once
#include <string>
#include <vector>

#include <json.hpp>

#include "weiljet/diffcalc.hpp"
#include "weiljet/jet.hpp"

namespace weiljet {

using Json = nlohmann::ordered_json;

// "p/q" (or "p") string for rationals, plain integer for modular residues.
Json scalar_json(const Scalar& c);
// Coefficient array in basis order.
Json element_json(const WeilElement& x);

// { "preset", "nvars", "cap", "extra_gens", "basis", "dim", "nilpotency" }.
// With table=true a "table" field is added: dim x dim strings, the product
// of basis monomials i and j ("1" for the unit, "0" when it truncates away).
Json algebra_json(const MonomialPtr& a, bool table = false);

// { "arity", "coarity", "terms": [ { "out", "exps", "coef" } ] } with terms
// ordered by output index, then graded-lex on the exponents.
Json polymap_json(const PolyMap& p);

// PolyMap schema plus "base_point" and "order".
Json taylor_json(const TaylorPoly& t);

// { "order", "components" }.
Json jet_json(const JetValue& j);

// Comma-separated scalars, rationals as "p/q": "1,-2/3,0".
std::vector<Scalar> parse_point(const Ring& ring, const std::string& text);

// Semicolon-separated coefficient arrays, one per map input, each a
// comma-separated list in basis order: "0,1;0,2".
std::vector<WeilElement> parse_elements(const AlgebraPtr& a, const std::string& text);

// Preset grammar: atom := "jet:"k | "tan:"k | "trunc:"n","r;
// term := atom | "tensor(" term "," term ")" | "whitney(" term "," term ")".
// InvalidPresetError on anything else.
MonomialPtr parse_preset(const Ring& ring, const std::string& text);

} // namespace weiljet
